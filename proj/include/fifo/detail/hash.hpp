#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace fifo::detail {

inline void hash_combine(std::size_t& seed, std::size_t value) noexcept {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

template <class T>
std::size_t hash_range(const std::vector<T>& values) noexcept {
  std::size_t seed = values.size();
  for (const auto& v : values) hash_combine(seed, std::hash<T>{}(v));
  return seed;
}

struct PairHash {
  template <class A, class B>
  std::size_t operator()(const std::pair<A, B>& p) const noexcept {
    std::size_t seed = std::hash<A>{}(p.first);
    hash_combine(seed, std::hash<B>{}(p.second));
    return seed;
  }
};

}  // namespace fifo::detail
