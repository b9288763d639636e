#pragma once

// Brute-force ground truth: bounded enumeration of executions and
// configurations, plus a seeded random system generator. Deliberately shares
// no code with the symbolic procedures beyond the step semantics.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fifo/model.hpp"

namespace fifo {

struct ExplorationBudget {
  std::size_t depth = 8;
  std::size_t buffer_bound = 4;
  std::size_t max_nodes = 5'000'000;
};

/// Why an exploration may have missed behaviours.
struct OracleReport {
  std::size_t nodes = 0;
  bool budget_exhausted = false;
  /// A send was skipped because its buffer would exceed the bound.
  bool buffer_pruned = false;
  /// Some explored execution of maximal length could still be extended.
  bool depth_reached = false;

  bool qualified() const noexcept { return budget_exhausted || buffer_pruned || depth_reached; }
};

enum class Visit { descend, skip, stop };

/// Depth-first enumeration of executions within the budget, in the order of
/// `enabled`. The visitor sees every execution once and decides whether to
/// extend it, skip its extensions, or stop altogether.
inline OracleReport enumerate_executions(
    const System& s, const ExplorationBudget& budget,
    const std::function<Visit(const Execution&, const Configuration&)>& visit) {
  OracleReport report;
  Execution e;
  bool stopped = false;
  std::function<void(const Configuration&)> dfs = [&](const Configuration& cfg) {
    if (stopped) return;
    if (++report.nodes > budget.max_nodes) {
      report.budget_exhausted = stopped = true;
      return;
    }
    auto what = visit(e, cfg);
    if (what == Visit::stop) {
      stopped = true;
      return;
    }
    if (what == Visit::skip) return;
    auto next = enabled(s, cfg);
    if (e.size() >= budget.depth) {
      if (!next.empty()) report.depth_reached = true;
      return;
    }
    for (auto& succ : next) {
      if (succ.action.is_send() && succ.configuration.buffers[succ.action.buffer.index()].size() > budget.buffer_bound) {
        report.buffer_pruned = true;
        continue;
      }
      e.push_back(succ.action);
      dfs(succ.configuration);
      e.pop_back();
      if (stopped) return;
    }
  };
  dfs(s.initial_configuration());
  return report;
}

struct ExecutionListing {
  std::vector<Execution> executions;
  OracleReport report;
};

inline ExecutionListing oracle_executions(const System& s, const ExplorationBudget& budget) {
  ExecutionListing out;
  out.report = enumerate_executions(s, budget, [&](const Execution& e, const Configuration&) {
    out.executions.push_back(e);
    return Visit::descend;
  });
  return out;
}

/// One execution per line as space-separated `process:buffer!message` tokens; ε for the empty one.
inline std::string format_executions(const System& s, const std::vector<Execution>& executions) {
  std::string out;
  for (const auto& e : executions) {
    if (e.empty()) out += "ε";
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (k) out += " ";
      out += to_token(s, e[k]);
    }
    out += "\n";
  }
  return out;
}

namespace oracle_detail {

/// Whether some reordering of `e` that respects its happens-before order
/// (program order per process, send before its receive, same-buffer sends in
/// order, same-buffer receives in order) is greedy: each matched send is
/// immediately followed by its receive.
inline bool has_greedy_reordering(const System& s, const Execution& e) {
  const std::size_t n = e.size();
  if (n > 64) throw std::invalid_argument("execution too long for the oracle");
  std::vector<std::size_t> proc(n);
  for (std::size_t j = 0; j < n; ++j) proc[j] = *s.owner(e[j]);
  // k-th send on a buffer matches the k-th receive on it.
  std::vector<long> partner(n, -1);
  std::map<std::size_t, std::vector<std::size_t>> sends, receives;
  for (std::size_t j = 0; j < n; ++j) (e[j].is_send() ? sends : receives)[e[j].buffer.index()].push_back(j);
  for (auto& [b, rs] : receives) {
    for (std::size_t k = 0; k < rs.size(); ++k) {
      auto sj = sends[b].at(k);
      partner[sj] = static_cast<long>(rs[k]);
      partner[rs[k]] = static_cast<long>(sj);
    }
  }
  std::vector<std::uint64_t> before(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      bool ordered = proc[j] == proc[k] || partner[j] == static_cast<long>(k) ||
                     (e[j].buffer == e[k].buffer && e[j].direction == e[k].direction);
      if (ordered) before[k] |= 1ULL << j;
    }
  }
  const std::uint64_t full = n == 64 ? ~0ULL : ((1ULL << n) - 1);
  std::unordered_set<std::uint64_t> dead;
  std::function<bool(std::uint64_t)> go = [&](std::uint64_t done) {
    if (done == full) return true;
    if (dead.contains(done)) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if ((done >> j) & 1 || (before[j] & ~done)) continue;
      if (e[j].is_receive()) continue;  // receives are placed together with their send
      auto next = done | (1ULL << j);
      if (partner[j] >= 0) {
        auto r = static_cast<std::size_t>(partner[j]);
        if (before[r] & ~next) continue;
        next |= 1ULL << r;
      }
      if (go(next)) return true;
    }
    dead.insert(done);
    return false;
  };
  return go(0);
}

}  // namespace oracle_detail

struct OracleGreedyResult {
  bool greedy = true;
  std::optional<Execution> counterexample;
  OracleReport report;
};

/// Checks every enumerated execution for an equivalent greedy reordering.
/// Stops at the first failure; the property is closed under prefixes.
inline OracleGreedyResult oracle_is_greedy_system(const System& s, const ExplorationBudget& budget) {
  OracleGreedyResult out;
  out.report = enumerate_executions(s, budget, [&](const Execution& e, const Configuration&) {
    if (oracle_detail::has_greedy_reordering(s, e)) return Visit::descend;
    out.greedy = false;
    out.counterexample = e;
    return Visit::stop;
  });
  return out;
}

struct ReachableSet {
  std::set<Configuration> configurations;
  /// Shortest execution reaching each configuration.
  std::map<Configuration, Execution> witness;
  OracleReport report;
};

/// Breadth-first closure of configurations reachable by executions within the budget.
inline ReachableSet oracle_reachable(const System& s, const ExplorationBudget& budget) {
  ReachableSet out;
  std::vector<std::pair<Configuration, std::size_t>> frontier{{s.initial_configuration(), 0}};
  out.configurations.insert(frontier[0].first);
  out.witness.emplace(frontier[0].first, Execution{});
  for (std::size_t next = 0; next < frontier.size(); ++next) {
    const auto [cfg, depth] = frontier[next];
    ++out.report.nodes;
    auto succs = enabled(s, cfg);
    if (depth >= budget.depth) {
      if (!succs.empty()) out.report.depth_reached = true;
      continue;
    }
    for (auto& succ : succs) {
      if (succ.action.is_send() && succ.configuration.buffers[succ.action.buffer.index()].size() > budget.buffer_bound) {
        out.report.buffer_pruned = true;
        continue;
      }
      if (out.configurations.contains(succ.configuration)) continue;
      if (out.configurations.size() >= budget.max_nodes) {
        out.report.budget_exhausted = true;
        return out;
      }
      auto path = out.witness.at(cfg);
      path.push_back(succ.action);
      out.configurations.insert(succ.configuration);
      out.witness.emplace(succ.configuration, std::move(path));
      frontier.emplace_back(std::move(succ.configuration), depth + 1);
    }
  }
  return out;
}

struct OccupancyResult {
  std::vector<std::size_t> per_buffer;
  OracleReport report;
  std::size_t max() const { return per_buffer.empty() ? 0 : *std::max_element(per_buffer.begin(), per_buffer.end()); }
};

inline OccupancyResult oracle_max_occupancy(const System& s, const ExplorationBudget& budget) {
  auto reach = oracle_reachable(s, budget);
  OccupancyResult out{std::vector<std::size_t>(s.buffer_count(), 0), reach.report};
  for (const auto& cfg : reach.configurations)
    for (std::size_t b = 0; b < cfg.buffers.size(); ++b) out.per_buffer[b] = std::max(out.per_buffer[b], cfg.buffers[b].size());
  return out;
}

struct RandomSystemParams {
  std::size_t processes = 3;
  std::size_t states = 4;
  std::size_t messages = 3;
  /// Expected transitions per state.
  double density = 1.2;
};

/// A random mailbox system. Each send action (target, message) belongs to the
/// first process that draws it, which keeps action sets disjoint; no state gets
/// two transitions with the same action.
inline System random_mailbox_system(std::uint64_t seed, RandomSystemParams params = {}) {
  std::mt19937_64 rng(seed);
  const std::size_t np = std::max<std::size_t>(2, params.processes);
  const std::size_t ns = std::max<std::size_t>(1, params.states);
  const std::size_t nm = std::max<std::size_t>(1, params.messages);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

  struct Draft {
    std::size_t src, dst;
    bool send;
    std::size_t peer, message;
  };
  std::vector<std::vector<Draft>> drafts(np);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> send_owner;  // (target, message) -> process
  const auto total = static_cast<std::size_t>(params.density * static_cast<double>(ns * np) + 0.5);
  for (std::size_t t = 0; t < total; ++t) {
    auto p = pick(np);
    Draft d{pick(ns), pick(ns), std::bernoulli_distribution(0.5)(rng), p, pick(nm)};
    if (d.send) {
      d.peer = (p + 1 + pick(np - 1)) % np;
      auto [it, fresh] = send_owner.try_emplace({d.peer, d.message}, p);
      if (!fresh && it->second != p) continue;
    }
    bool clash = std::any_of(drafts[p].begin(), drafts[p].end(), [&](const Draft& o) {
      return o.src == d.src && o.send == d.send && o.peer == d.peer && o.message == d.message;
    });
    if (!clash) drafts[p].push_back(d);
  }

  auto pname = [](std::size_t p) { return "p" + std::to_string(p); };
  SystemBuilder b("random_" + std::to_string(seed));
  for (std::size_t p = 0; p < np; ++p) {
    b.process(pname(p));
    for (std::size_t q = 0; q < ns; ++q) b.state(std::to_string(q));
    b.initial("0");
    for (const auto& d : drafts[p]) {
      auto msg = "m" + std::to_string(d.message);
      if (d.send)
        b.send(std::to_string(d.src), pname(d.peer), msg, std::to_string(d.dst));
      else
        b.receive(std::to_string(d.src), pname(p), msg, std::to_string(d.dst));
    }
  }
  return b.build();
}

}  // namespace fifo
