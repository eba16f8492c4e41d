#include "cmimic/welllinked.hpp"

#include <algorithm>

#include "cmimic/important_cuts.hpp"

namespace cmimic {

int partition_potential(const PiecePartition& p, int c) {
  int total = 0;
  for (const auto& b : p.boundaries) total += std::max(static_cast<int>(b.size()) - 2 * c + 1, 0);
  return total;
}

BoundaryGadget boundary_preprocess(const MultiGraph& g, const VertexSet& piece) {
  VertexSet xs = resolve(g, piece);
  BoundaryGadget bg{MultiGraph(static_cast<int>(xs.size())), {}, xs, {}};
  std::vector<int> local(g.id_count(), -1);
  for (size_t i = 0; i < xs.size(); ++i) local[xs[i]] = static_cast<int>(i);
  for (EdgeId e = 0; e < g.edge_id_count(); ++e) {
    if (!g.is_live(e)) continue;
    auto [u, v] = g.endpoints(e);
    int lu = local[u], lv = local[v];
    if (lu < 0 && lv < 0) continue;
    if (lu >= 0 && lv >= 0) {
      bg.graph.add_edge(lu, lv);
    } else {
      // boundary edge: the outside endpoint becomes a fresh pendant terminal
      VertexId w = bg.graph.add_vertex();
      bg.to_parent_vertex.push_back(-1);
      bg.graph.set_terminal(w);
      bg.terminals.push_back(w);
      bg.graph.add_edge(w, lu >= 0 ? lu : lv);
    }
    bg.to_parent_edge.push_back(e);
  }
  return bg;
}

SparsifierResult base_case_sparsifier(const MultiGraph& g, const VertexSet& terminals, int c) {
  VertexSet ts = resolve(g, terminals);
  const int k = static_cast<int>(ts.size());
  if (k > kBaseCaseTerminalCap)
    throw CapExceeded("base_case_sparsifier: " + std::to_string(k) + " terminals exceeds cap " +
                      std::to_string(kBaseCaseTerminalCap));
  Mask keep(g.edge_id_count());
  Mask is_t = to_mask(g, ts);
  for (EdgeId e = 0; e < g.edge_id_count(); ++e) {
    if (!g.is_live(e)) continue;
    auto [u, v] = g.endpoints(e);
    if (is_t.test(u) || is_t.test(v)) keep.set(e);
  }
  for (std::uint32_t mask = 0; k >= 2 && mask < (1u << (k - 1)); ++mask) {
    VertexSet left{ts[0]}, right;
    for (int i = 1; i < k; ++i) ((mask >> (i - 1)) & 1 ? left : right).push_back(ts[i]);
    if (right.empty()) continue;
    auto r = max_flow_bounded(g, left, right, c);
    if (r.exceeds) continue;
    for (EdgeId e : r.witness->edges) keep.set(e);
  }
  MultiGraph h = g;
  for (EdgeId e = 0; e < h.edge_id_count(); ++e)
    if (h.is_live(e) && !keep.test(e)) h.contract(e);
  auto res = make_result(h, g.id_count(), g.edge_id_count());
  res.metrics.push_back({"kept_edges", static_cast<std::int64_t>(keep.count())});
  return res;
}

std::optional<ViolatingCut> find_violating_cut(const MultiGraph& g, const VertexSet& x, int c, CutFinder finder) {
  return finder == CutFinder::kFpt ? find_violating_cut_fpt(g, x, c) : find_violating_cut_bruteforce(g, x, c);
}

SparsifierResult poly_sized_c_network(const MultiGraph& g, int c, CutFinder finder, PolySizedTrace* trace) {
  const int n0 = g.id_count(), m0 = g.edge_id_count();
  TerminalGadget tg = attach_terminal_gadget(g, c);
  MultiGraph& h = tg.graph;
  VertexSet start;
  for (VertexId v : h.vertices())
    if (!h.is_terminal(v)) start.push_back(v);

  PiecePartition done;
  std::vector<VertexSet> open;
  if (!start.empty()) open.push_back(start);
  PolySizedTrace local;
  local.initial_boundary = static_cast<int>(boundary(h, start).size());
  while (!open.empty()) {
    // smallest boundary first, ties by vertex list
    auto it = std::min_element(open.begin(), open.end(), [&](const VertexSet& a, const VertexSet& b) {
      auto ba = boundary(h, a).size(), bb = boundary(h, b).size();
      return ba != bb ? ba < bb : a < b;
    });
    VertexSet x = *it;
    open.erase(it);
    EdgeSet bd = boundary(h, x);
    if (static_cast<int>(bd.size()) <= 2 * c - 1) {
      done.pieces.push_back(x);
      done.boundaries.push_back(bd);
      done.status.push_back(PieceStatus::kSparseBoundary);
      continue;
    }
    auto vc = find_violating_cut(h, x, c, finder);
    if (!vc) {
      done.pieces.push_back(x);
      done.boundaries.push_back(bd);
      done.status.push_back(PieceStatus::kWellLinked);
      continue;
    }
    int before = std::max(static_cast<int>(bd.size()) - 2 * c + 1, 0);
    int ba = static_cast<int>(boundary(h, vc->side_a).size()), bb = static_cast<int>(boundary(h, vc->side_b).size());
    int after = std::max(ba - 2 * c + 1, 0) + std::max(bb - 2 * c + 1, 0);
    local.split_potentials.push_back({before, after});
    local.split_boundaries.push_back({static_cast<int>(bd.size()), {ba, bb}});
    open.push_back(vc->side_a);
    open.push_back(vc->side_b);
  }

  int well_linked = 0, sparse = 0;
  for (size_t i = 0; i < done.pieces.size(); ++i) {
    const VertexSet& x = done.pieces[i];
    if (done.status[i] == PieceStatus::kWellLinked) {
      ++well_linked;
      Mask in = to_mask(h, x);
      EdgeSet inner;
      for (EdgeId e = 0; e < h.edge_id_count(); ++e) {
        if (!h.is_live(e)) continue;
        auto [u, v] = h.endpoints(e);
        if (in.test(u) && in.test(v)) inner.push_back(e);
      }
      for (EdgeId e : inner)
        if (h.is_live(e)) h.contract(e);
      continue;
    }
    ++sparse;
    BoundaryGadget bg = boundary_preprocess(h, x);
    SparsifierResult r = base_case_sparsifier(bg.graph, bg.terminals, c);
    Mask kept(bg.graph.edge_id_count());
    for (EdgeId e : r.kept_edges) kept.set(e);
    for (EdgeId e = 0; e < bg.graph.edge_id_count(); ++e) {
      auto [u, v] = bg.graph.original_endpoints(e);
      bool internal = bg.to_parent_vertex[u] >= 0 && bg.to_parent_vertex[v] >= 0;
      if (internal && !kept.test(e) && h.is_live(bg.to_parent_edge[e])) h.contract(bg.to_parent_edge[e]);
    }
  }
  // undo the gadget: each t-t' bundle has c parallel edges, so merging them is safe
  for (EdgeId e : tg.gadget_edges)
    if (h.is_live(e)) h.contract(e);
  for (auto [t, t2] : tg.renamed) h.set_terminal(t, true);

  SparsifierResult res = make_result(h, n0, m0);
  res.metrics = {{"pieces", static_cast<std::int64_t>(done.pieces.size())},
                 {"well_linked_pieces", well_linked},
                 {"sparse_pieces", sparse},
                 {"splits", static_cast<std::int64_t>(local.split_potentials.size())},
                 {"initial_boundary", local.initial_boundary}};
  if (trace) {
    local.partition = std::move(done);
    *trace = std::move(local);
  }
  return res;
}

}  // namespace cmimic
