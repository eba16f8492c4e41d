#include "cmimic/sparsifier.hpp"

namespace cmimic {

std::int64_t SparsifierResult::metric(const std::string& name, std::int64_t fallback) const {
  for (const auto& [k, v] : metrics)
    if (k == name) return v;
  return fallback;
}

SparsifierResult make_result(const MultiGraph& reduced, int input_vertices, int input_edges) {
  SparsifierResult r;
  r.graph = reduced;
  for (EdgeId e = 0; e < input_edges; ++e)
    if (reduced.is_live(e)) r.kept_edges.push_back(e);
  r.merge_map.resize(input_vertices);
  for (VertexId v = 0; v < input_vertices; ++v) r.merge_map[v] = reduced.find(v);
  return r;
}

SparsifierResult identity_sparsifier(const MultiGraph& g, int) {
  return make_result(g, g.id_count(), g.edge_id_count());
}

}  // namespace cmimic
