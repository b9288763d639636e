#pragma once

// Generic nondeterministic finite automata with epsilon moves. Letters only
// need a strict weak order (operator<) and equality.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fifo/detail/hash.hpp"

namespace fifo {

class AlphabetMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Letter>
class Nfa {
 public:
  using State = std::uint32_t;
  using letter_type = Letter;

  struct Edge {
    std::optional<Letter> letter;  // nullopt is epsilon
    State target = 0;
  };

  Nfa() = default;
  explicit Nfa(std::set<Letter> alphabet) : alphabet_(std::move(alphabet)) {}

  State add_state(bool initial = false, bool final = false) {
    auto s = static_cast<State>(edges_.size());
    edges_.emplace_back();
    initial_.push_back(initial);
    final_.push_back(final);
    return s;
  }

  void add_transition(State from, const Letter& letter, State to) {
    check(from);
    check(to);
    if (!alphabet_.contains(letter)) throw std::invalid_argument("letter outside the alphabet");
    edges_[from].push_back(Edge{letter, to});
    ++transitions_;
  }

  void add_epsilon(State from, State to) {
    check(from);
    check(to);
    edges_[from].push_back(Edge{std::nullopt, to});
    ++transitions_;
  }

  void add_letter(const Letter& l) { alphabet_.insert(l); }
  void set_initial(State s, bool v = true) { check(s), initial_[s] = v; }
  void set_final(State s, bool v = true) { check(s), final_[s] = v; }

  const std::set<Letter>& alphabet() const noexcept { return alphabet_; }
  std::size_t state_count() const noexcept { return edges_.size(); }
  std::size_t transition_count() const noexcept { return transitions_; }
  const std::vector<Edge>& edges(State s) const { return edges_.at(s); }
  bool is_initial(State s) const { return initial_.at(s); }
  bool is_final(State s) const { return final_.at(s); }

  std::vector<State> initials() const { return select(initial_); }
  std::vector<State> finals() const { return select(final_); }

  /// Adds every state reachable by epsilon moves.
  std::vector<State> epsilon_closure(std::vector<State> seeds) const {
    std::vector<bool> seen(state_count(), false);
    std::vector<State> out;
    for (auto s : seeds)
      if (!seen[s]) seen[s] = true, out.push_back(s);
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (const auto& e : edges_[out[i]])
        if (!e.letter && !seen[e.target]) seen[e.target] = true, out.push_back(e.target);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool accepts(std::span<const Letter> word) const {
    auto current = epsilon_closure(initials());
    for (const auto& l : word) {
      std::vector<State> next;
      for (auto s : current)
        for (const auto& e : edges_[s])
          if (e.letter && *e.letter == l) next.push_back(e.target);
      current = epsilon_closure(std::move(next));
      if (current.empty()) return false;
    }
    return std::any_of(current.begin(), current.end(), [&](State s) { return final_[s]; });
  }

  bool accepts(const std::vector<Letter>& word) const { return accepts(std::span<const Letter>(word)); }

 private:
  void check(State s) const {
    if (s >= edges_.size()) throw std::out_of_range("state out of range");
  }

  static std::vector<State> select(const std::vector<bool>& flags) {
    std::vector<State> out;
    for (std::size_t s = 0; s < flags.size(); ++s)
      if (flags[s]) out.push_back(static_cast<State>(s));
    return out;
  }

  std::set<Letter> alphabet_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<bool> initial_;
  std::vector<bool> final_;
  std::size_t transitions_ = 0;
};

/// One-state automaton accepting every word over `alphabet`.
template <class Letter>
Nfa<Letter> universal_nfa(std::set<Letter> alphabet) {
  Nfa<Letter> out(std::move(alphabet));
  auto s = out.add_state(true, true);
  for (const auto& l : std::set<Letter>(out.alphabet())) out.add_transition(s, l, s);
  return out;
}

template <class Letter>
struct ProductNfa {
  Nfa<Letter> automaton;
  /// origin[s] is the pair of operand states that product state s stands for.
  std::vector<std::pair<typename Nfa<Letter>::State, typename Nfa<Letter>::State>> origin;
};

namespace detail {

template <class Letter>
std::vector<typename Nfa<Letter>::Edge> sorted_edges(const Nfa<Letter>& a, typename Nfa<Letter>::State s) {
  auto out = a.edges(s);
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.letter < y.letter; });
  return out;
}

}  // namespace detail

/// Synchronous product restricted to the part reachable from initial pairs.
/// Epsilon moves of either operand interleave.
template <class Letter>
ProductNfa<Letter> intersect_with_origin(const Nfa<Letter>& a, const Nfa<Letter>& b) {
  if (a.alphabet() != b.alphabet()) throw AlphabetMismatch("cannot intersect automata over different alphabets");
  using State = typename Nfa<Letter>::State;
  using Pair = std::pair<State, State>;
  ProductNfa<Letter> out{Nfa<Letter>(a.alphabet()), {}};
  std::unordered_map<Pair, State, detail::PairHash> id;
  auto intern = [&](Pair p) {
    auto [it, fresh] = id.try_emplace(p, 0);
    if (fresh) {
      it->second = out.automaton.add_state(a.is_initial(p.first) && b.is_initial(p.second),
                                           a.is_final(p.first) && b.is_final(p.second));
      out.origin.push_back(p);
    }
    return it->second;
  };
  for (auto x : a.initials())
    for (auto y : b.initials()) intern({x, y});

  for (std::size_t next = 0; next < out.origin.size(); ++next) {
    const auto [x, y] = out.origin[next];
    const auto from = static_cast<State>(next);
    const auto ex = detail::sorted_edges(a, x);
    const auto ey = detail::sorted_edges(b, y);
    std::size_t i = 0, j = 0;
    for (; i < ex.size() && !ex[i].letter; ++i) out.automaton.add_epsilon(from, intern({ex[i].target, y}));
    for (; j < ey.size() && !ey[j].letter; ++j) out.automaton.add_epsilon(from, intern({x, ey[j].target}));
    while (i < ex.size() && j < ey.size()) {
      if (*ex[i].letter < *ey[j].letter) {
        ++i;
      } else if (*ey[j].letter < *ex[i].letter) {
        ++j;
      } else {
        std::size_t i_end = i, j_end = j;
        while (i_end < ex.size() && *ex[i_end].letter == *ex[i].letter) ++i_end;
        while (j_end < ey.size() && *ey[j_end].letter == *ey[j].letter) ++j_end;
        for (auto u = i; u < i_end; ++u)
          for (auto v = j; v < j_end; ++v) out.automaton.add_transition(from, *ex[u].letter, intern({ex[u].target, ey[v].target}));
        i = i_end;
        j = j_end;
      }
    }
  }
  return out;
}

template <class Letter>
Nfa<Letter> intersect(const Nfa<Letter>& a, const Nfa<Letter>& b) {
  return intersect_with_origin(a, b).automaton;
}

/// Minimum number of letters from each state to some final state (max() if none).
template <class Letter>
std::vector<std::size_t> distance_to_final(const Nfa<Letter>& a) {
  using State = typename Nfa<Letter>::State;
  constexpr auto inf = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::pair<State, bool>>> reverse(a.state_count());
  for (State s = 0; s < a.state_count(); ++s)
    for (const auto& e : a.edges(s)) reverse[e.target].emplace_back(s, e.letter.has_value());
  std::vector<std::size_t> dist(a.state_count(), inf);
  std::deque<State> queue;
  for (auto f : a.finals()) dist[f] = 0, queue.push_back(f);
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto [u, weighted] : reverse[v]) {
      auto d = dist[v] + (weighted ? 1 : 0);
      if (d < dist[u]) {
        dist[u] = d;
        weighted ? queue.push_back(u) : queue.push_front(u);
      }
    }
  }
  return dist;
}

/// A shortest accepting word; among those, the lexicographically least.
template <class Letter>
std::optional<std::vector<Letter>> find_accepting_word(const Nfa<Letter>& a) {
  using State = typename Nfa<Letter>::State;
  constexpr auto inf = std::numeric_limits<std::size_t>::max();
  const auto dist = distance_to_final(a);
  auto current = a.epsilon_closure(a.initials());
  std::size_t remaining = inf;
  for (auto s : current) remaining = std::min(remaining, dist[s]);
  if (remaining == inf) return std::nullopt;

  std::vector<Letter> word;
  while (remaining > 0) {
    const Letter* best = nullptr;
    for (auto s : current) {
      if (dist[s] != remaining) continue;
      for (const auto& e : a.edges(s))
        if (e.letter && dist[e.target] == remaining - 1 && (!best || *e.letter < *best)) best = &*e.letter;
    }
    std::vector<State> next;
    for (auto s : current) {
      if (dist[s] != remaining) continue;
      for (const auto& e : a.edges(s))
        if (e.letter && *e.letter == *best && dist[e.target] == remaining - 1) next.push_back(e.target);
    }
    word.push_back(*best);
    --remaining;
    current.clear();
    for (auto s : a.epsilon_closure(std::move(next)))
      if (dist[s] == remaining) current.push_back(s);
  }
  return word;
}

template <class Letter>
bool is_empty(const Nfa<Letter>& a) {
  return !find_accepting_word(a).has_value();
}

template <class Letter>
std::vector<bool> reachable_states(const Nfa<Letter>& a) {
  std::vector<bool> seen(a.state_count(), false);
  std::vector<typename Nfa<Letter>::State> stack = a.initials();
  for (auto s : stack) seen[s] = true;
  while (!stack.empty()) {
    auto s = stack.back();
    stack.pop_back();
    for (const auto& e : a.edges(s))
      if (!seen[e.target]) seen[e.target] = true, stack.push_back(e.target);
  }
  return seen;
}

template <class Letter>
std::vector<bool> coreachable_states(const Nfa<Letter>& a) {
  const auto dist = distance_to_final(a);
  std::vector<bool> out(a.state_count());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = dist[s] != std::numeric_limits<std::size_t>::max();
  return out;
}

template <class Letter>
struct PrunedNfa {
  Nfa<Letter> automaton;
  /// new_state[s] for every state of the input; nullopt if dropped.
  std::vector<std::optional<typename Nfa<Letter>::State>> new_state;
};

/// Keeps exactly the useful states (reachable and co-reachable), in their original order.
template <class Letter>
PrunedNfa<Letter> prune_with_map(const Nfa<Letter>& a) {
  using State = typename Nfa<Letter>::State;
  const auto reach = reachable_states(a);
  const auto coreach = coreachable_states(a);
  PrunedNfa<Letter> out{Nfa<Letter>(a.alphabet()), std::vector<std::optional<State>>(a.state_count())};
  for (State s = 0; s < a.state_count(); ++s)
    if (reach[s] && coreach[s]) out.new_state[s] = out.automaton.add_state(a.is_initial(s), a.is_final(s));
  for (State s = 0; s < a.state_count(); ++s) {
    if (!out.new_state[s]) continue;
    for (const auto& e : a.edges(s)) {
      auto t = out.new_state[e.target];
      if (!t) continue;
      if (e.letter)
        out.automaton.add_transition(*out.new_state[s], *e.letter, *t);
      else
        out.automaton.add_epsilon(*out.new_state[s], *t);
    }
  }
  return out;
}

template <class Letter>
Nfa<Letter> prune(const Nfa<Letter>& a) {
  return prune_with_map(a).automaton;
}

/// Replaces every letter failing `keep` by epsilon. States and edge order are preserved.
template <class Letter, class Keep>
Nfa<Letter> erase_letters(const Nfa<Letter>& a, Keep keep) {
  Nfa<Letter> out(a.alphabet());
  for (std::size_t s = 0; s < a.state_count(); ++s) {
    auto st = static_cast<typename Nfa<Letter>::State>(s);
    out.add_state(a.is_initial(st), a.is_final(st));
  }
  for (std::size_t s = 0; s < a.state_count(); ++s) {
    auto st = static_cast<typename Nfa<Letter>::State>(s);
    for (const auto& e : a.edges(st)) {
      if (e.letter && keep(*e.letter))
        out.add_transition(st, *e.letter, e.target);
      else
        out.add_epsilon(st, e.target);
    }
  }
  return out;
}

/// Reference to the `edge`-th outgoing edge of state `from`.
struct EdgeRef {
  std::uint32_t from = 0;
  std::size_t edge = 0;
  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

struct LongestResult {
  bool infinite = false;
  /// Per class, the largest number of counted edges on an accepting-useful path. Empty if infinite.
  std::vector<std::size_t> longest;
  /// When infinite: a path from an initial state to the cycle, then the cycle (containing a counted edge).
  std::vector<EdgeRef> stem;
  std::vector<EdgeRef> cycle;
};

/// Strongly connected components of the subgraph induced by `active`.
/// Components are numbered in reverse topological order (sinks first).
template <class Letter>
std::vector<std::size_t> strongly_connected_components(const Nfa<Letter>& a, const std::vector<bool>& active) {
  constexpr auto none = std::numeric_limits<std::size_t>::max();
  const std::size_t n = a.state_count();
  std::vector<std::size_t> index(n, none), low(n, 0), comp(n, none);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, components = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (!active[root] || index[root] != none) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      const auto& edges = a.edges(static_cast<typename Nfa<Letter>::State>(v));
      if (next < edges.size()) {
        auto w = edges[next++].target;
        if (!active[w]) continue;
        if (index[w] == none) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
      auto done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  return comp;
}

namespace detail {

template <class Letter, class Allowed>
std::vector<EdgeRef> bfs_path(const Nfa<Letter>& a, std::vector<typename Nfa<Letter>::State> sources,
                              typename Nfa<Letter>::State goal, Allowed allowed) {
  using State = typename Nfa<Letter>::State;
  constexpr auto none = std::numeric_limits<std::size_t>::max();
  std::vector<std::pair<std::size_t, std::size_t>> parent(a.state_count(), {none, none});
  std::vector<bool> seen(a.state_count(), false);
  std::deque<State> queue;
  for (auto s : sources)
    if (allowed(s) && !seen[s]) seen[s] = true, queue.push_back(s);
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    if (v == goal) break;
    const auto& edges = a.edges(v);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      auto w = edges[k].target;
      if (seen[w] || !allowed(w)) continue;
      seen[w] = true;
      parent[w] = {v, k};
      queue.push_back(w);
    }
  }
  std::vector<EdgeRef> path;
  for (std::size_t v = goal; parent[v].first != none; v = parent[v].first)
    path.push_back(EdgeRef{static_cast<std::uint32_t>(parent[v].first), parent[v].second});
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

template <class Letter>
std::vector<EdgeRef> path_within(const Nfa<Letter>& a, const std::vector<bool>& active, const std::vector<std::size_t>& comp,
                                 typename Nfa<Letter>::State from, typename Nfa<Letter>::State to) {
  if (from == to) return {};
  return detail::bfs_path(a, {from}, to, [&](auto s) { return active[s] && comp[s] == comp[from]; });
}

template <class Letter>
std::vector<EdgeRef> path_from_initials(const Nfa<Letter>& a, const std::vector<bool>& active, typename Nfa<Letter>::State to) {
  if (a.is_initial(to)) return {};
  return detail::bfs_path(a, a.initials(), to, [&](auto s) { return static_cast<bool>(active[s]); });
}

/// Decides whether useful paths can carry unboundedly many counted letters and,
/// if not, computes the maximum per class. `classify` maps a letter to an
/// optional class index below `classes`; unclassified letters and epsilon are not counted.
template <class Letter, class Classify>
LongestResult finiteness_and_longest(const Nfa<Letter>& a, Classify classify, std::size_t classes) {
  using State = typename Nfa<Letter>::State;
  const std::size_t n = a.state_count();
  const auto reach = reachable_states(a);
  const auto coreach = coreachable_states(a);
  std::vector<bool> active(n);
  for (std::size_t s = 0; s < n; ++s) active[s] = reach[s] && coreach[s];
  const auto comp = strongly_connected_components(a, active);

  auto counted_class = [&](const typename Nfa<Letter>::Edge& e) -> std::optional<std::size_t> {
    if (!e.letter) return std::nullopt;
    return classify(*e.letter);
  };

  LongestResult out;
  for (State s = 0; s < n; ++s) {
    if (!active[s]) continue;
    const auto& edges = a.edges(s);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto& e = edges[k];
      if (!active[e.target] || comp[e.target] != comp[s] || !counted_class(e)) continue;
      out.infinite = true;
      out.cycle = path_within(a, active, comp, e.target, s);
      out.cycle.push_back(EdgeRef{s, k});
      out.stem = path_from_initials(a, active, e.target);
      return out;
    }
  }

  // Components are numbered sinks first, so decreasing numbers give a topological order.
  std::size_t components = 0;
  for (std::size_t s = 0; s < n; ++s)
    if (active[s]) components = std::max(components, comp[s] + 1);
  std::vector<std::vector<State>> members(components);
  for (State s = 0; s < n; ++s)
    if (active[s]) members[comp[s]].push_back(s);
  constexpr long unset = -1;
  std::vector<std::vector<long>> best(components, std::vector<long>(classes, unset));
  for (State s = 0; s < n; ++s)
    if (active[s] && a.is_initial(s)) std::fill(best[comp[s]].begin(), best[comp[s]].end(), 0);
  out.longest.assign(classes, 0);
  for (std::size_t c = components; c-- > 0;) {
    if (best[c].empty() || best[c][0] == unset) continue;
    for (std::size_t k = 0; k < classes; ++k) out.longest[k] = std::max<std::size_t>(out.longest[k], best[c][k]);
    for (auto s : members[c]) {
      for (const auto& e : a.edges(s)) {
        if (!active[e.target] || comp[e.target] == c) continue;
        auto cls = counted_class(e);
        auto& target = best[comp[e.target]];
        for (std::size_t k = 0; k < classes; ++k) {
          long v = best[c][k] + ((cls && *cls == k) ? 1 : 0);
          target[k] = std::max(target[k], v);
        }
      }
    }
  }
  return out;
}

}  // namespace fifo
