#pragma once

// Happens-before structure of executions: matching pairs, action graphs,
// conflict graphs, greedy rescheduling and causal equivalence.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fifo/model.hpp"

namespace fifo {

/// A matching pair {send, receive} or an unmatched send {send}. Indices are zero-based.
struct Communication {
  std::size_t send = 0;
  std::optional<std::size_t> receive;
  BufferId buffer;
  MessageId message;

  bool matched() const noexcept { return receive.has_value(); }
  bool contains(std::size_t j) const noexcept { return j == send || (receive && *receive == j); }
  friend bool operator==(const Communication&, const Communication&) = default;
};

class MalformedExecution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pairs the k-th send on each buffer with the k-th receive on it.
/// Result is ordered by send index.
inline std::vector<Communication> matching_pairs(std::span<const Action> e) {
  std::vector<Communication> out;
  std::map<BufferId, std::deque<std::size_t>> pending;  // positions in `out`
  for (std::size_t j = 0; j < e.size(); ++j) {
    const auto& a = e[j];
    if (a.is_send()) {
      pending[a.buffer].push_back(out.size());
      out.push_back(Communication{j, std::nullopt, a.buffer, a.message});
      continue;
    }
    auto& q = pending[a.buffer];
    if (q.empty()) throw MalformedExecution("receive at " + std::to_string(j) + " has no earlier matching send");
    auto& c = out[q.front()];
    q.pop_front();
    if (c.message != a.message)
      throw MalformedExecution("receive at " + std::to_string(j) + " does not match the message sent at " +
                               std::to_string(c.send));
    c.receive = j;
  }
  return out;
}

/// Maps every action index to the position of its communication in `comms`.
inline std::vector<std::size_t> communication_of(const std::vector<Communication>& comms, std::size_t n) {
  std::vector<std::size_t> out(n, 0);
  for (std::size_t c = 0; c < comms.size(); ++c) {
    out[comms[c].send] = c;
    if (comms[c].receive) out[*comms[c].receive] = c;
  }
  return out;
}

inline bool commutes(const Action& a, ProcessIndex pa, const Action& b, ProcessIndex pb) noexcept {
  return pa != pb && !(a.direction == b.direction && a.buffer == b.buffer);
}

inline bool commutes(const System& s, const Action& a, const Action& b) {
  auto pa = s.owner(a);
  auto pb = s.owner(b);
  if (!pa || !pb) throw std::invalid_argument("action does not belong to the system");
  return commutes(a, *pa, b, *pb);
}

inline std::vector<ProcessIndex> owners_of(const System& s, std::span<const Action> e) {
  std::vector<ProcessIndex> out;
  out.reserve(e.size());
  for (const auto& a : e) {
    auto p = s.owner(a);
    if (!p) throw std::invalid_argument("action " + to_string(s, a) + " belongs to no process");
    out.push_back(*p);
  }
  return out;
}

struct ActionGraph {
  std::vector<Action> labels;
  std::vector<ProcessIndex> owners;
  /// successors[j] lists every j' with j < j' and j happening before j'.
  std::vector<std::vector<std::size_t>> successors;

  std::size_t size() const noexcept { return labels.size(); }

  bool has_edge(std::size_t from, std::size_t to) const {
    const auto& s = successors.at(from);
    return std::binary_search(s.begin(), s.end(), to);
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t j = 0; j < successors.size(); ++j)
      for (auto k : successors[j]) out.emplace_back(j, k);
    return out;
  }
};

inline ActionGraph action_graph(const System& s, std::span<const Action> e) {
  ActionGraph g;
  g.labels.assign(e.begin(), e.end());
  g.owners = owners_of(s, e);
  g.successors.assign(e.size(), {});
  const auto comms = matching_pairs(e);
  std::vector<std::optional<std::size_t>> partner(e.size());
  for (const auto& c : comms)
    if (c.receive) partner[c.send] = *c.receive;
  for (std::size_t j = 0; j < e.size(); ++j) {
    for (std::size_t k = j + 1; k < e.size(); ++k) {
      if (!commutes(e[j], g.owners[j], e[k], g.owners[k]) || partner[j] == k) g.successors[j].push_back(k);
    }
  }
  return g;
}

/// Removes every edge implied by transitivity. Vertices are topologically
/// ordered by index, which the action graph guarantees.
inline std::vector<std::vector<std::size_t>> transitive_reduction(const std::vector<std::vector<std::size_t>>& successors,
                                                                  const std::vector<std::size_t>& topo_order) {
  const std::size_t n = successors.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (auto it = topo_order.rbegin(); it != topo_order.rend(); ++it) {
    auto v = *it;
    for (auto w : successors[v]) {
      reach[v][w] = true;
      for (std::size_t x = 0; x < n; ++x)
        if (reach[w][x]) reach[v][x] = true;
    }
  }
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (auto w : successors[v]) {
      bool implied = false;
      for (auto m : successors[v]) {
        if (m != w && reach[m][w]) {
          implied = true;
          break;
        }
      }
      if (!implied) out[v].push_back(w);
    }
  }
  return out;
}

inline ActionGraph transitive_reduction(const ActionGraph& g) {
  std::vector<std::size_t> order(g.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  ActionGraph out = g;
  out.successors = transitive_reduction(g.successors, order);
  return out;
}

enum class EdgeKind : std::uint8_t { send_send = 1, send_receive = 2, receive_send = 4, receive_receive = 8 };

inline std::string_view to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::send_send: return "SS";
    case EdgeKind::send_receive: return "SR";
    case EdgeKind::receive_send: return "RS";
    case EdgeKind::receive_receive: return "RR";
  }
  return "?";
}

inline constexpr EdgeKind all_edge_kinds[] = {EdgeKind::send_send, EdgeKind::send_receive, EdgeKind::receive_send,
                                              EdgeKind::receive_receive};

struct ConflictEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  std::uint8_t kinds = 0;

  bool has(EdgeKind k) const noexcept { return (kinds & static_cast<std::uint8_t>(k)) != 0; }
  friend bool operator==(const ConflictEdge&, const ConflictEdge&) = default;
};

struct ConflictGraph {
  /// Communications ordered by send index.
  std::vector<Communication> vertices;
  /// Sorted by (from, to); no self-loops.
  std::vector<ConflictEdge> edges;

  const ConflictEdge* edge(std::size_t from, std::size_t to) const {
    auto it = std::lower_bound(edges.begin(), edges.end(), std::pair{from, to}, [](const ConflictEdge& e, const auto& key) {
      return std::pair{e.from, e.to} < key;
    });
    if (it == edges.end() || it->from != from || it->to != to) return nullptr;
    return &*it;
  }

  std::vector<std::vector<std::size_t>> successors() const {
    std::vector<std::vector<std::size_t>> out(vertices.size());
    for (const auto& e : edges) out[e.from].push_back(e.to);
    return out;
  }

  /// Some cycle v0 -> v1 -> ... -> v0 (v0 not repeated), or nothing if acyclic.
  std::optional<std::vector<std::size_t>> find_cycle() const {
    const auto succ = successors();
    const std::size_t n = vertices.size();
    std::vector<int> colour(n, 0);
    std::vector<std::size_t> parent(n, 0);
    for (std::size_t root = 0; root < n; ++root) {
      if (colour[root]) continue;
      std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
      colour[root] = 1;
      while (!stack.empty()) {
        auto& [v, next] = stack.back();
        if (next < succ[v].size()) {
          auto w = succ[v][next++];
          if (colour[w] == 1) {
            std::vector<std::size_t> cycle{w};
            for (auto x = v; x != w; x = parent[x]) cycle.push_back(x);
            std::reverse(cycle.begin() + 1, cycle.end());
            return cycle;
          }
          if (colour[w] == 0) {
            colour[w] = 1;
            parent[w] = v;
            stack.emplace_back(w, 0);
          }
        } else {
          colour[v] = 2;
          stack.pop_back();
        }
      }
    }
    return std::nullopt;
  }

  bool is_acyclic() const { return !find_cycle(); }
};

inline ConflictGraph conflict_graph(const System& s, std::span<const Action> e) {
  ConflictGraph g;
  g.vertices = matching_pairs(e);
  const auto owners = owners_of(s, e);
  const auto comm = communication_of(g.vertices, e.size());
  std::map<std::pair<std::size_t, std::size_t>, std::uint8_t> kinds;
  for (std::size_t j = 0; j < e.size(); ++j) {
    for (std::size_t k = j + 1; k < e.size(); ++k) {
      if (comm[j] == comm[k]) continue;
      if (commutes(e[j], owners[j], e[k], owners[k])) continue;
      EdgeKind kind = e[j].is_send() ? (e[k].is_send() ? EdgeKind::send_send : EdgeKind::send_receive)
                                     : (e[k].is_send() ? EdgeKind::receive_send : EdgeKind::receive_receive);
      kinds[{comm[j], comm[k]}] |= static_cast<std::uint8_t>(kind);
    }
  }
  for (const auto& [key, mask] : kinds) g.edges.push_back({key.first, key.second, mask});
  return g;
}

/// Every matching pair is of the form {j, j+1}.
inline bool is_greedy_execution(std::span<const Action> e) {
  for (const auto& c : matching_pairs(e))
    if (c.receive && *c.receive != c.send + 1) return false;
  return true;
}

class CyclicConflictGraph : public std::runtime_error {
 public:
  explicit CyclicConflictGraph(std::vector<Communication> cycle)
      : std::runtime_error("conflict graph has a cycle of " + std::to_string(cycle.size()) + " communications"),
        cycle_(std::move(cycle)) {}
  const std::vector<Communication>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<Communication> cycle_;
};

/// Kahn's algorithm, ties broken by smallest vertex index (that is, smallest
/// send index). Nothing if the graph has a cycle.
inline std::optional<std::vector<std::size_t>> topological_order(const ConflictGraph& g) {
  const auto succ = g.successors();
  std::vector<std::size_t> indegree(g.vertices.size(), 0);
  for (const auto& edge : g.edges) ++indegree[edge.to];
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t v = 0; v < indegree.size(); ++v)
    if (indegree[v] == 0) ready.push(v);
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    auto v = ready.top();
    ready.pop();
    order.push_back(v);
    for (auto w : succ[v])
      if (--indegree[w] == 0) ready.push(w);
  }
  if (order.size() != g.vertices.size()) return std::nullopt;
  return order;
}

/// Concatenates communications in a topological order of the conflict graph.
inline Execution reschedule_greedy(const System& s, std::span<const Action> e) {
  const auto g = conflict_graph(s, e);
  auto order = topological_order(g);
  if (!order) {
    std::vector<Communication> comms;
    const auto cycle = g.find_cycle();
    for (auto v : *cycle) comms.push_back(g.vertices[v]);
    throw CyclicConflictGraph(std::move(comms));
  }
  Execution out;
  out.reserve(e.size());
  for (auto v : *order) {
    const auto& c = g.vertices[v];
    out.push_back(e[c.send]);
    if (c.receive) out.push_back(e[*c.receive]);
  }
  return out;
}

/// Decides causal equivalence through the per-process index bijection.
inline bool causally_equivalent(const System& s, std::span<const Action> e1, std::span<const Action> e2) {
  if (e1.size() != e2.size()) return false;
  std::vector<ProcessIndex> o1, o2;
  try {
    o1 = owners_of(s, e1);
    o2 = owners_of(s, e2);
  } catch (const std::invalid_argument&) {
    return false;
  }
  std::map<ProcessIndex, std::vector<std::size_t>> lines1, lines2;
  for (std::size_t j = 0; j < e1.size(); ++j) lines1[o1[j]].push_back(j);
  for (std::size_t j = 0; j < e2.size(); ++j) lines2[o2[j]].push_back(j);
  if (lines1.size() != lines2.size()) return false;
  std::vector<std::size_t> sigma(e1.size());
  for (const auto& [p, idx1] : lines1) {
    auto it = lines2.find(p);
    if (it == lines2.end() || it->second.size() != idx1.size()) return false;
    for (std::size_t k = 0; k < idx1.size(); ++k) {
      if (e1[idx1[k]] != e2[it->second[k]]) return false;
      sigma[idx1[k]] = it->second[k];
    }
  }
  std::vector<std::size_t> inverse(e1.size());
  for (std::size_t j = 0; j < sigma.size(); ++j) inverse[sigma[j]] = j;

  ActionGraph g1, g2;
  try {
    g1 = action_graph(s, e1);
    g2 = action_graph(s, e2);
  } catch (const MalformedExecution&) {
    return false;
  }
  for (auto [j, k] : g1.edges())
    if (sigma[j] > sigma[k]) return false;
  for (auto [j, k] : g2.edges())
    if (inverse[j] > inverse[k]) return false;
  return true;
}

}  // namespace fifo
