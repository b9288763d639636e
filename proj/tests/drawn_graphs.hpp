#pragma once

// Expected causal structure of the 13-action client/server/database trace
// (samples/csd_run.trace), as drawn by hand. The drawings omit arcs
// that follow by transitivity, so comparisons go through transitive closures.

#include <set>
#include <string>
#include <utility>
#include <vector>

namespace fifo::testing {

using EdgeSet = std::set<std::pair<std::size_t, std::size_t>>;
using LabelledEdges = std::set<std::pair<std::string, std::string>>;

/// Action graph arcs, one-based action indices.
inline const EdgeSet drawn_action_edges = {{1, 4},  {4, 5},  {2, 3},  {3, 6},  {6, 8},   {1, 2},   {3, 4},  {5, 6},  {5, 7},
                                    {7, 11}, {7, 9},  {9, 10}, {10, 11}, {10, 13}, {7, 8},  {11, 12}, {8, 13}};

/// Conflict graph arcs between communications, named by message; req(2) is the second req.
inline const LabelledEdges drawn_conflict_edges = {{"ack_s", "log_c"}, {"log_c", "ack_d"}, {"log_c", "log_s"}, {"req", "res"},
                                          {"ack_s", "log_s"}, {"ack_d", "req(2)"}, {"res", "ack_s"}};

template <class Edges>
Edges transitive_closure(Edges edges) {
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& [a, b] : Edges(edges))
      for (const auto& [c, d] : Edges(edges))
        if (b == c && edges.insert({a, d}).second) grew = true;
  }
  return edges;
}

}  // namespace fifo::testing
