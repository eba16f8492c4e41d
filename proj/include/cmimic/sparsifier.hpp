#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "cmimic/graph.hpp"

namespace cmimic {

// Output of every construction. The graph keeps the input id space, so a
// terminal label of the input is also valid in the output (through find).
struct SparsifierResult {
  MultiGraph graph;
  EdgeSet kept_edges;               // live input edges that survived
  std::vector<VertexId> merge_map;  // input vertex -> representative in graph
  std::vector<std::pair<std::string, std::int64_t>> metrics;
  std::vector<std::int64_t> trace;  // per-pass sizes, method specific

  std::int64_t metric(const std::string& name, std::int64_t fallback = -1) const;
};

SparsifierResult make_result(const MultiGraph& reduced, int input_vertices, int input_edges);

using SparsifyFn = std::function<SparsifierResult(const MultiGraph&, int)>;

SparsifierResult identity_sparsifier(const MultiGraph& g, int c);

}  // namespace cmimic
