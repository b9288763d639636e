#pragma once

// Half-duplex checks: binary systems by configuration exploration, mailbox
// systems by a bounded search over trace representatives, orphan messages,
// and the conflict-cycle case analysis linking half-duplexness to greediness.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fifo/causality.hpp"
#include "fifo/model.hpp"
#include "fifo/safety.hpp"

namespace fifo {

enum class HalfDuplexStatus { half_duplex, not_half_duplex, unknown_at_bound };

inline std::string_view to_string(HalfDuplexStatus s) {
  switch (s) {
    case HalfDuplexStatus::half_duplex: return "HalfDuplex";
    case HalfDuplexStatus::not_half_duplex: return "NotHalfDuplex";
    case HalfDuplexStatus::unknown_at_bound: return "UnknownAtBound";
  }
  return "?";
}

struct HalfDuplexBounds {
  std::size_t depth = 10;
  std::size_t buffer_bound = 4;
  std::size_t max_nodes = 2'000'000;
};

struct HalfDuplexVerdict {
  HalfDuplexStatus status = HalfDuplexStatus::unknown_at_bound;
  std::optional<Execution> witness;
  HalfDuplexBounds bounds;
  std::size_t explored = 0;
  /// True when exploration stopped because of max_nodes.
  bool budget_exhausted = false;
};

inline void require_mailbox(const System& s) {
  if (!is_mailbox(s)) throw TopologyError(TopologyRequirement::mailbox, "system is not a mailbox system");
}

inline void require_binary(const System& s) {
  if (!is_binary(s)) throw TopologyError(TopologyRequirement::binary, "system is not binary");
}

/// Each process's own mailbox is empty whenever it sends.
inline bool is_half_duplex_execution(const System& s, std::span<const Action> e) {
  require_mailbox(s);
  Configuration cfg = s.initial_configuration();
  for (const auto& a : e) {
    auto p = s.owner(a);
    if (!p) throw std::invalid_argument("action belongs to no process");
    if (a.is_send()) {
      auto box = mailbox_of(s, *p);
      if (box && !cfg.buffers[box->index()].empty()) return false;
    }
    cfg = step(s, cfg, a);
  }
  return true;
}

inline bool is_binary_half_duplex_config(const System& s, const Configuration& cfg) {
  require_binary(s);
  return std::count_if(cfg.buffers.begin(), cfg.buffers.end(), [](const auto& b) { return !b.empty(); }) <= 1;
}

/// Breadth-first exploration of reachable configurations. HalfDuplex is only
/// reported when the visited set closes within the bounds.
inline HalfDuplexVerdict check_binary_half_duplex(const System& s, HalfDuplexBounds bounds = {}) {
  require_binary(s);
  HalfDuplexVerdict v;
  v.bounds = bounds;
  // With at most one buffer ever written, no configuration has two nonempty buffers.
  std::set<BufferId> written;
  for (const auto& p : s.processes())
    for (const auto& a : p.automaton.actions)
      if (a.is_send()) written.insert(a.buffer);
  if (written.size() <= 1) {
    v.status = HalfDuplexStatus::half_duplex;
    return v;
  }
  struct Node {
    std::size_t parent;
    Action action;
    std::size_t depth;
  };
  std::unordered_map<Configuration, std::size_t, ConfigurationHash> seen;
  std::vector<Configuration> configs{s.initial_configuration()};
  std::vector<Node> nodes{{0, Action{}, 0}};
  seen.emplace(configs[0], 0);
  bool pruned = false;
  for (std::size_t next = 0; next < configs.size(); ++next) {
    if (configs.size() > bounds.max_nodes) {
      v.budget_exhausted = pruned = true;
      break;
    }
    const auto cfg = configs[next];
    if (!is_binary_half_duplex_config(s, cfg)) {
      Execution path;
      for (auto k = next; k != 0; k = nodes[k].parent) path.push_back(nodes[k].action);
      std::reverse(path.begin(), path.end());
      v.status = HalfDuplexStatus::not_half_duplex;
      v.witness = std::move(path);
      v.explored = configs.size();
      return v;
    }
    for (auto& succ : enabled(s, cfg)) {
      if (nodes[next].depth >= bounds.depth || succ.configuration.buffers[succ.action.buffer.index()].size() > bounds.buffer_bound) {
        pruned = true;
        continue;
      }
      if (seen.contains(succ.configuration)) continue;
      seen.emplace(succ.configuration, configs.size());
      nodes.push_back({next, succ.action, nodes[next].depth + 1});
      configs.push_back(std::move(succ.configuration));
    }
  }
  v.explored = configs.size();
  v.status = pruned ? HalfDuplexStatus::unknown_at_bound : HalfDuplexStatus::half_duplex;
  return v;
}

namespace detail {

/// Total order on actions used to pick trace representatives.
inline auto action_key(ProcessIndex p, const Action& a) {
  return std::tuple(p, a.buffer.index(), static_cast<int>(a.direction), a.message.index());
}

/// Whether some linearization of the (direct) predecessor relation keeps each
/// sender's mailbox empty at every send.
class HalfDuplexLinearizer {
 public:
  HalfDuplexLinearizer(const System& s, std::span<const Action> e, const std::vector<ProcessIndex>& owners,
                       const std::vector<std::uint64_t>& preds)
      : e_(e), preds_(preds), mailbox_(e.size()), occupancy_(s.buffer_count(), 0) {
    for (std::size_t j = 0; j < e.size(); ++j) {
      auto box = mailbox_of(s, owners[j]);
      mailbox_[j] = box ? static_cast<long>(box->index()) : -1;
    }
  }

  bool exists() {
    full_ = e_.size() == 64 ? ~0ULL : ((1ULL << e_.size()) - 1);
    return search(0);
  }

 private:
  bool search(std::uint64_t done) {
    if (done == full_) return true;
    if (failed_.contains(done)) return false;
    for (std::size_t j = 0; j < e_.size(); ++j) {
      const auto bit = 1ULL << j;
      if ((done & bit) || (preds_[j] & ~done)) continue;
      const auto& a = e_[j];
      if (a.is_send() && mailbox_[j] >= 0 && occupancy_[static_cast<std::size_t>(mailbox_[j])] != 0) continue;
      auto& occ = occupancy_[a.buffer.index()];
      a.is_send() ? ++occ : --occ;
      const bool ok = search(done | bit);
      a.is_send() ? --occ : ++occ;
      if (ok) return true;
    }
    failed_.insert(done);
    return false;
  }

  std::span<const Action> e_;
  const std::vector<std::uint64_t>& preds_;
  std::vector<long> mailbox_;
  std::vector<long> occupancy_;
  std::unordered_set<std::uint64_t> failed_;
  std::uint64_t full_ = 0;
};

}  // namespace detail

/// Explores one representative per causal-equivalence class of executions up to
/// `depth` and looks for one with no half-duplex linearization.
inline HalfDuplexVerdict check_mailbox_half_duplex_bounded(const System& s, HalfDuplexBounds bounds = {}) {
  require_mailbox(s);
  if (bounds.depth > 64) throw std::invalid_argument("depth above 64 is not supported");
  HalfDuplexVerdict v;
  v.bounds = bounds;
  bool truncated = false;

  struct Frame {
    Configuration cfg;
    std::vector<Successor> succ;
    std::size_t next = 0;
  };
  Execution e;
  std::vector<ProcessIndex> owners;
  std::vector<std::uint64_t> preds;
  std::vector<std::size_t> partner_send;  // for receives, the index of the matching send
  std::vector<std::vector<std::size_t>> pending(s.buffer_count());
  std::vector<std::size_t> pending_head(s.buffer_count(), 0);

  std::vector<Frame> stack;
  stack.push_back({s.initial_configuration(), enabled(s, s.initial_configuration()), 0});
  v.explored = 1;
  while (!stack.empty()) {
    auto& top = stack.back();
    if (top.next == top.succ.size() || e.size() >= bounds.depth) {
      if (e.size() >= bounds.depth && !top.succ.empty()) truncated = true;
      stack.pop_back();
      if (e.empty()) break;
      // Undo the last action.
      const auto& a = e.back();
      if (a.is_send())
        pending[a.buffer.index()].pop_back();
      else
        --pending_head[a.buffer.index()];
      e.pop_back();
      owners.pop_back();
      preds.pop_back();
      partner_send.pop_back();
      continue;
    }
    const auto& succ = top.succ[top.next++];
    const auto n = e.size();
    const auto& a = succ.action;
    std::optional<std::size_t> match;
    if (a.is_receive()) match = pending[a.buffer.index()][pending_head[a.buffer.index()]];
    std::uint64_t mask = 0;
    std::optional<std::size_t> last_pred;
    for (std::size_t j = 0; j < n; ++j) {
      if (!commutes(e[j], owners[j], a, succ.process) || match == j) {
        mask |= 1ULL << j;
        last_pred = j;
      }
    }
    // Keep e·a only if it is the lexicographically least linearization of its class.
    const auto key = detail::action_key(succ.process, a);
    bool least = true;
    for (auto j = last_pred ? *last_pred + 1 : 0; j < n && least; ++j)
      least = detail::action_key(owners[j], e[j]) < key;
    if (!least) continue;
    if (++v.explored > bounds.max_nodes) {
      v.budget_exhausted = truncated = true;
      break;
    }
    e.push_back(a);
    owners.push_back(succ.process);
    preds.push_back(mask);
    partner_send.push_back(match.value_or(n));
    if (a.is_send())
      pending[a.buffer.index()].push_back(n);
    else
      ++pending_head[a.buffer.index()];

    detail::HalfDuplexLinearizer lin(s, e, owners, preds);
    if (!lin.exists()) {
      v.status = HalfDuplexStatus::not_half_duplex;
      v.witness = e;
      return v;
    }
    auto cfg = succ.configuration;
    auto next_succ = enabled(s, cfg);
    stack.push_back({std::move(cfg), std::move(next_succ), 0});
  }
  v.status = truncated ? HalfDuplexStatus::unknown_at_bound : HalfDuplexStatus::half_duplex;
  return v;
}

struct OrphanVerdict {
  bool orphan_found = false;
  /// Execution reaching the configuration that holds the orphan candidate.
  Execution prefix;
  std::optional<Configuration> configuration;
  std::optional<BufferId> buffer;
  /// The bounds cut the search somewhere, so "no orphan" only holds within them.
  bool qualified = false;
};

namespace detail {

/// Whether some continuation from `cfg` receives all messages currently in `buffer`.
inline std::optional<bool> can_drain(const System& s, const Configuration& cfg, std::size_t buffer, std::size_t depth,
                                     std::size_t buffer_bound, std::size_t max_nodes) {
  const auto goal = cfg.buffers[buffer].size();
  if (goal == 0) return true;
  struct Item {
    Configuration cfg;
    std::size_t received;
    std::size_t depth;
  };
  std::deque<Item> queue{{cfg, 0, 0}};
  std::unordered_set<Configuration, ConfigurationHash> seen;  // keyed with the count folded into control
  auto key = [](Configuration c, std::size_t r) {
    c.control.push_back(static_cast<StateIndex>(r));
    return c;
  };
  seen.insert(key(cfg, 0));
  bool cut = false;
  while (!queue.empty()) {
    auto item = std::move(queue.front());
    queue.pop_front();
    for (auto& succ : enabled(s, item.cfg)) {
      auto r = item.received + (succ.action.is_receive() && succ.action.buffer.index() == buffer ? 1 : 0);
      if (r == goal) return true;
      if (item.depth + 1 >= depth || succ.configuration.buffers[succ.action.buffer.index()].size() > buffer_bound) {
        cut = true;
        continue;
      }
      if (!seen.insert(key(succ.configuration, r)).second) continue;
      if (seen.size() > max_nodes) return std::nullopt;
      queue.push_back({std::move(succ.configuration), r, item.depth + 1});
    }
  }
  if (cut) return std::nullopt;
  return false;
}

}  // namespace detail

/// Searches reachable configurations (within bounds) for a buffered message
/// that no continuation receives.
inline OrphanVerdict check_no_orphan_bounded(const System& s, HalfDuplexBounds bounds = {}) {
  OrphanVerdict v;
  std::unordered_map<Configuration, std::size_t, ConfigurationHash> seen;
  std::vector<Configuration> configs{s.initial_configuration()};
  std::vector<std::pair<std::size_t, Action>> parent{{0, Action{}}};
  std::vector<std::size_t> depth{0};
  seen.emplace(configs[0], 0);
  for (std::size_t next = 0; next < configs.size(); ++next) {
    const auto cfg = configs[next];
    for (std::size_t b = 0; b < s.buffer_count(); ++b) {
      auto drained = detail::can_drain(s, cfg, b, bounds.depth, bounds.buffer_bound, bounds.max_nodes);
      if (!drained) {
        v.qualified = true;
        continue;
      }
      if (*drained) continue;
      v.orphan_found = true;
      v.configuration = cfg;
      v.buffer = BufferId(b);
      for (auto k = next; k != 0; k = parent[k].first) v.prefix.push_back(parent[k].second);
      std::reverse(v.prefix.begin(), v.prefix.end());
      return v;
    }
    for (auto& succ : enabled(s, cfg)) {
      if (depth[next] >= bounds.depth || succ.configuration.buffers[succ.action.buffer.index()].size() > bounds.buffer_bound) {
        v.qualified = true;
        continue;
      }
      if (seen.contains(succ.configuration)) continue;
      if (configs.size() >= bounds.max_nodes) {
        v.qualified = true;
        break;
      }
      seen.emplace(succ.configuration, configs.size());
      parent.emplace_back(next, succ.action);
      depth.push_back(depth[next] + 1);
      configs.push_back(std::move(succ.configuration));
    }
  }
  return v;
}

struct CycleAnalysis {
  /// The cycle rotated so that its first communication has the smallest send index.
  std::vector<Communication> rotated;
  /// Edge kinds of the closing edge (last communication to first).
  std::uint8_t closing_kinds = 0;
  bool closing_is_send_receive_only = false;
  /// The receiver of the first communication sends (in the last communication)
  /// after the first message was queued and before receiving it.
  bool shows_half_duplex_violation = false;
};

/// Case analysis on a conflict cycle of a mailbox execution.
inline CycleAnalysis analyze_conflict_cycle(const System& s, std::span<const Action> e, const std::vector<Communication>& cycle) {
  CycleAnalysis out;
  if (cycle.empty()) return out;
  auto first = std::min_element(cycle.begin(), cycle.end(), [](const auto& x, const auto& y) { return x.send < y.send; });
  out.rotated.assign(first, cycle.end());
  out.rotated.insert(out.rotated.end(), cycle.begin(), first);

  const auto g = conflict_graph(s, e);
  auto vertex_of = [&](const Communication& c) {
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
      if (g.vertices[v].send == c.send) return v;
    throw std::invalid_argument("communication is not part of the execution");
  };
  const auto& c1 = out.rotated.front();
  const auto& ck = out.rotated.back();
  if (const auto* edge = g.edge(vertex_of(ck), vertex_of(c1))) out.closing_kinds = edge->kinds;
  out.closing_is_send_receive_only = out.closing_kinds == static_cast<std::uint8_t>(EdgeKind::send_receive);
  if (c1.receive) {
    auto receiver = s.owner(e[*c1.receive]);
    auto sender_k = s.owner(e[ck.send]);
    out.shows_half_duplex_violation = receiver && sender_k && *receiver == *sender_k && c1.send < ck.send &&
                                      ck.send < *c1.receive;
  }
  return out;
}

}  // namespace fifo
