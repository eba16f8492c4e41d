/**
 * \file dynacon.hpp
 * Offline fully dynamic c-edge-connectivity: divide and conquer over the
 * event log, compressing the graph with a sparsifier at every node.
 *
 * Answers are thresholded values min(c, mincut(u, v)), not booleans.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "cmimic/graph.hpp"
#include "cmimic/query_log.hpp"
#include "cmimic/sparsifier.hpp"

namespace cmimic {

// One inserted copy of an edge. It is present in the graphs after events
// birth..last (inclusive, 0-based positions). Deletes match copies LIFO.
struct EdgeCopy {
  VertexId u, v;
  int birth, last;
};

struct IntervalNode {
  int l, r, m;
  std::vector<int> left_edges, right_edges;  // copy indices added entering each child
  VertexSet left_terminals, right_terminals;
  int left = -1, right = -1;  // child node indices, -1 at leaves
};

struct LifetimeIndex {
  std::vector<EdgeCopy> copies;
  std::vector<int> root_edges;  // copies present through the whole log
  std::vector<IntervalNode> nodes;  // nodes[0] is the root when the log is nonempty
  int vertex_count = 0;

  std::int64_t total_side_edges() const;
};

LifetimeIndex edge_lifetime_index(const QueryLog& log);

struct OfflineOptions {
  bool check_nodes = false;  // oracle check of each sparsification with <= 12 terminals
};

struct OfflineReport {
  std::vector<int> answers;
  std::int64_t total_node_edges = 0;  // live edges handed to the children, summed
  int sparsify_calls = 0;
  int checked_nodes = 0;
  int failed_checks = 0;
};

OfflineReport offline_connectivity_report(const QueryLog& log, int c, const SparsifyFn& sparsify,
                                          const OfflineOptions& opts = {});

// defaults to mimicking_via_containment
std::vector<int> offline_connectivity(const QueryLog& log, int c);
std::vector<int> offline_connectivity(const QueryLog& log, int c, const SparsifyFn& sparsify);

// min(c, mincut(A_i, B_i)) for each pair, answered through one offline run
std::vector<int> multi_pair_connectivity(const MultiGraph& g, const std::vector<std::pair<VertexSet, VertexSet>>& pairs,
                                         int c, const SparsifyFn& sparsify);
std::vector<int> multi_pair_connectivity(const MultiGraph& g, const std::vector<std::pair<VertexSet, VertexSet>>& pairs,
                                         int c);

}  // namespace cmimic
