#pragma once

// Graphviz output for action and conflict graphs.

#include <map>
#include <string>
#include <vector>

#include "fifo/causality.hpp"
#include "fifo/model.hpp"

namespace fifo {

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string dot_cluster_name(const std::string& process) {
  std::string out = "cluster_";
  for (char c : process) out += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
  return out;
}

}  // namespace detail

/// Vertices a1..an labelled with their action, grouped in one cluster per process.
inline std::string emit_dot(const System& s, const ActionGraph& g, bool reduce = false) {
  const auto& graph = reduce ? transitive_reduction(g) : g;
  std::string out = "digraph action_graph {\n";
  if (graph.size() > 0) out += "  node [shape=ellipse];\n";
  std::map<ProcessIndex, std::vector<std::size_t>> columns;
  for (std::size_t j = 0; j < graph.size(); ++j) columns[graph.owners[j]].push_back(j);
  for (const auto& [p, members] : columns) {
    const auto& name = s.process(p).name;
    out += "  subgraph " + detail::dot_cluster_name(name) + " {\n    label=" + detail::dot_quote(name) + ";\n";
    for (auto j : members)
      out += "    a" + std::to_string(j + 1) + " [label=" + detail::dot_quote(to_string(s, graph.labels[j])) + "];\n";
    out += "  }\n";
  }
  for (auto [j, k] : graph.edges()) out += "  a" + std::to_string(j + 1) + " -> a" + std::to_string(k + 1) + ";\n";
  out += "}\n";
  return out;
}

/// Display names of communications: the message, with "(k)" for its k-th occurrence when k > 1.
inline std::vector<std::string> communication_labels(const System& s, const std::vector<Communication>& comms) {
  std::map<MessageId, std::size_t> seen;
  std::vector<std::string> out;
  for (const auto& c : comms) {
    auto k = ++seen[c.message];
    out.push_back(s.message_name(c.message) + (k > 1 ? "(" + std::to_string(k) + ")" : ""));
  }
  return out;
}

inline std::string edge_kind_label(std::uint8_t kinds) {
  std::string out;
  for (auto k : all_edge_kinds) {
    if (!(kinds & static_cast<std::uint8_t>(k))) continue;
    if (!out.empty()) out += ",";
    out += to_string(k);
  }
  return out;
}

/// Vertices c1..cm in send order. With `reduce`, transitive edges are dropped
/// (only when the graph is acyclic, where the reduction is unique).
inline std::string emit_dot(const System& s, const ConflictGraph& g, bool reduce = false) {
  const auto labels = communication_labels(s, g.vertices);
  std::vector<std::vector<std::size_t>> keep = g.successors();
  if (reduce) {
    if (auto order = topological_order(g)) keep = transitive_reduction(g.successors(), *order);
  }
  std::string out = "digraph conflict_graph {\n";
  if (!g.vertices.empty()) out += "  node [shape=ellipse];\n";
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    out += "  c" + std::to_string(v + 1) + " [label=" + detail::dot_quote(labels[v]) + "];\n";
  for (const auto& e : g.edges) {
    if (std::find(keep[e.from].begin(), keep[e.from].end(), e.to) == keep[e.from].end()) continue;
    out += "  c" + std::to_string(e.from + 1) + " -> c" + std::to_string(e.to + 1) +
           " [label=" + detail::dot_quote(edge_kind_label(e.kinds)) + "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace fifo
