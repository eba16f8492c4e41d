#include <gtest/gtest.h>

#include "cmimic/graph.hpp"
#include "cmimic/oracle.hpp"
#include "fixtures.hpp"

using namespace cmimic;
using namespace fixtures;

TEST(BuildGraph, ClampsWeights) {
  auto g = build_graph(2, {{1, 2, 5}}, {1, 2}, 3);
  EXPECT_EQ(g.live_edge_count(), 3);
  EXPECT_EQ(g.terminals(), (VertexSet{0, 1}));
}

TEST(BuildGraph, UnitWeights) {
  EXPECT_EQ(build_graph(3, {{1, 2}, {2, 3}}, {1, 3}, 2).live_edge_count(), 2);
  std::vector<WeightedEdge> k4e;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) k4e.push_back({i, j});
  EXPECT_EQ(build_graph(4, k4e, {1, 2}, 2).live_edge_count(), 6);
}

TEST(BuildGraph, Errors) {
  EXPECT_THROW(build_graph(2, {{1, 3}}, {}, 1), Error);
  EXPECT_THROW(build_graph(2, {{1, 2}}, {4}, 1), Error);
}

TEST(Gadget, StarCenter) {
  auto tg = attach_terminal_gadget(star5({0}), 2);
  ASSERT_EQ(tg.renamed.size(), 1u);
  VertexId r2 = tg.renamed[0].second;
  EXPECT_TRUE(tg.graph.is_terminal(r2));
  EXPECT_FALSE(tg.graph.is_terminal(0));
  EXPECT_EQ(tg.graph.degree(r2), 2);
}

TEST(Gadget, LowDegreeUnchanged) {
  auto tg = attach_terminal_gadget(p3({0, 2}), 2);
  EXPECT_TRUE(tg.renamed.empty());
  EXPECT_EQ(tg.graph.num_vertices(), 3);
}

TEST(Gadget, K4EquivalentUnderRenaming) {
  auto g = k4({0, 1});
  auto tg = attach_terminal_gadget(g, 2);
  ASSERT_EQ(tg.renamed.size(), 2u);
  // compare thresholded cut between the renamed terminals
  EXPECT_EQ(oracle_mincut(g, {0}, {1}, 2), oracle_mincut(tg.graph, {tg.renamed[0].second}, {tg.renamed[1].second}, 2));
  // contracting the gadget edges back gives labels shared with g
  auto back = contract_edges(tg.graph, tg.gadget_edges);
  EXPECT_TRUE(tc_equivalent(g, back, {0, 1}, 2));
}

TEST(Contract, P3) {
  auto g = p3({0});
  auto h = contract_edges(g, {0});
  EXPECT_EQ(h.num_vertices(), 2);
  EXPECT_EQ(h.live_edge_count(), 1);
  EXPECT_TRUE(h.is_terminal(1));
  EXPECT_EQ(g.num_vertices(), 3);  // value semantics
  EXPECT_EQ(h.status(0), EdgeStatus::kCollapsed);
}

TEST(Contract, K4All) {
  auto h = contract_edges(k4(), {0, 1, 2, 3, 4, 5});
  EXPECT_EQ(h.num_vertices(), 1);
  EXPECT_EQ(h.live_edge_count(), 0);
  EXPECT_THROW(contract_edges(k4(), {17}), Error);
}

TEST(Contract, C4Monotone) {
  auto g = c4({0, 2});
  auto h = contract_edges(g, {0});
  EXPECT_GE(brute_mincut(h, {0}, {2}), brute_mincut(g, {0}, {2}));
}

TEST(MaxFlow, Examples) {
  auto r = max_flow_bounded(p3(), {0}, {2}, 2);
  EXPECT_FALSE(r.exceeds);
  EXPECT_EQ(r.value, 1);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->value, 1);
  EXPECT_TRUE(max_flow_bounded(k4(), {0}, {1}, 2).exceeds);
  EXPECT_EQ(brute_mincut(k4(), {0}, {1}), 3);
  EXPECT_EQ(max_flow_bounded(c4(), {0}, {2}, 3).value, 2);
  EXPECT_TRUE(max_flow_bounded(p3(), {0, 1}, {1}, 3).exceeds);
}

TEST(MaxFlow, ResidualSinkSide) {
  // P5 from v1 to v5: every vertex can push back toward v5 except the saturated prefix
  auto r = max_flow_bounded(p5(), {0}, {4}, 1);
  EXPECT_EQ(from_mask(r.sink_side), (VertexSet{4}));
  EXPECT_EQ(from_mask(r.source_side), (VertexSet{0}));
}

TEST(Thresholded, Examples) {
  EXPECT_EQ(thresholded_mincut(p3(), {0}, {2}, 3), 1);
  EXPECT_EQ(thresholded_mincut(k5(), {0}, {1}, 2), 2);
  EXPECT_EQ(thresholded_mincut(dumbbell(), {0}, {5}, 3), 1);
}

TEST(SparseCertificate, Examples) {
  auto k = k5();
  auto h = sparse_certificate(k, 2);
  EXPECT_LE(h.live_edge_count(), 8);
  VertexSet all{0, 1, 2, 3, 4};
  EXPECT_TRUE(tc_equivalent(k, h, all, 2));
  EXPECT_EQ(sparse_certificate(p5(), 3).live_edge_count(), 4);
  auto c = sparse_certificate(c4(), 1);
  EXPECT_LE(c.live_edge_count(), 3);
  EXPECT_TRUE(tc_equivalent(c4(), c, {0, 1, 2, 3}, 1));
}

TEST(Conductance, Examples) {
  EXPECT_EQ(conductance(c4(), {0, 1}), Rational(2, 4));
  EXPECT_EQ(graph_conductance_exact(c4()), Rational(1, 2));
  EXPECT_EQ(conductance(dumbbell(), {0, 1, 2}), Rational(1, 7));
  EXPECT_THROW(graph_conductance_exact(complete(19)), CapExceeded);
}

TEST(Components, Examples) {
  EXPECT_EQ(boundary(p3(), {1}), (EdgeSet{0, 1}));
  auto d = dumbbell();
  d.remove_edge(3);
  auto cc = connected_components(d);
  ASSERT_EQ(cc.size(), 2u);
  EXPECT_EQ(cc[0], (VertexSet{0, 1, 2}));
  EXPECT_EQ(cc[1], (VertexSet{3, 4, 5}));
  EXPECT_EQ(boundary(c4(), {0, 2}).size(), 4u);
}

TEST(Induced, MapsBack) {
  auto s = induced_subgraph(dumbbell({0}), {0, 1, 2});
  EXPECT_EQ(s.graph.num_vertices(), 3);
  EXPECT_EQ(s.to_parent_edge, (EdgeSet{0, 1, 2}));
  EXPECT_TRUE(s.graph.is_terminal(0));
}

TEST(Subdivide, C4Equivalent) {
  auto g = c4({0, 2});
  auto s = subdivide_edges(g, {0, 2});
  EXPECT_EQ(s.graph.num_vertices(), 6);
  for (int c = 1; c <= 3; ++c) EXPECT_TRUE(tc_equivalent(g, s.graph, {0, 2}, c));
}

// random weighted graphs: clamped multigraph agrees with brute force on the weights
TEST(Property, WeightClamp) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    int n = std::uniform_int_distribution<int>(2, 8)(rng);
    int c = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<WeightedEdge> es;
    std::vector<std::vector<int>> w(n, std::vector<int>(n, 0));
    for (int i = 0; i < n + 3; ++i) {
      int u = std::uniform_int_distribution<int>(1, n)(rng), v = std::uniform_int_distribution<int>(1, n)(rng);
      if (u == v) continue;
      int wt = std::uniform_int_distribution<int>(1, 6)(rng);
      es.push_back({u, v, wt});
      w[u - 1][v - 1] += wt;
      w[v - 1][u - 1] += wt;
    }
    auto g = build_graph(n, es, {}, c);
    // weighted brute force over subsets separating 0 and n-1
    int best = 1 << 20;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (!(mask & 1) || (mask >> (n - 1)) & 1) continue;
      int cut = 0;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (((mask >> a) & 1) != ((mask >> b) & 1)) cut += w[a][b];
      best = std::min(best, cut);
    }
    ASSERT_EQ(thresholded_mincut(g, {0}, {n - 1}, c), std::min(c, best));
  }
}

TEST(Property, FlowMatchesBruteForce) {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 300; ++iter) {
    auto inst = random_instance(rng, {});
    auto& g = inst.g;
    VertexSet a{inst.terminals[0]}, b{inst.terminals[1]};
    auto r = max_flow_bounded(g, a, b, inst.c);
    int truth = brute_mincut(g, a, b);
    if (truth > inst.c) {
      ASSERT_TRUE(r.exceeds);
    } else {
      ASSERT_FALSE(r.exceeds);
      ASSERT_EQ(r.value, truth);
      ASSERT_EQ(r.witness->value, truth);
      // the maximal source side is V minus the residual sink side and is also a min cut
      Mask src = r.sink_side;
      src.flip();
      for (VertexId v = 0; v < g.id_count(); ++v)
        if (!g.is_rep(v)) src.reset(v);
      ASSERT_EQ(make_witness(g, src).value, truth);
    }
  }
}

TEST(Property, ContractionMonotoneAndPersistence) {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 200; ++iter) {
    auto inst = random_instance(rng, {});
    auto& g = inst.g;
    EdgeSet pick;
    for (EdgeId e : g.live_edges())
      if (rng() % 4 == 0) pick.push_back(e);
    auto h = contract_edges(g, pick);
    VertexSet a{inst.terminals[0]}, b{inst.terminals[1]};
    ASSERT_GE(brute_mincut(h, a, b), brute_mincut(g, a, b));
    auto r = max_flow_bounded(h, a, b, inst.c);
    if (r.exceeds) continue;
    // the same edge ids still separate a from b in g
    MultiGraph cut = g;
    for (EdgeId e : r.witness->edges) cut.remove_edge(e);
    ASSERT_EQ(brute_mincut(cut, a, b), 0);
  }
}

TEST(Property, SparseCertificate) {
  std::mt19937_64 rng(13);
  for (int iter = 0; iter < 200; ++iter) {
    auto inst = random_instance(rng, {.n_min = 3, .n_max = 9, .m_max = 25});
    auto h = sparse_certificate(inst.g, inst.c);
    ASSERT_LE(h.live_edge_count(), inst.c * (inst.g.num_vertices() - 1));
    ASSERT_TRUE(tc_equivalent(inst.g, h, inst.g.vertices(), inst.c));
  }
}

TEST(Property, GadgetEquivalent) {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 200; ++iter) {
    auto inst = random_instance(rng, {});
    auto tg = attach_terminal_gadget(inst.g, inst.c);
    for (VertexId t : tg.graph.terminals()) ASSERT_LE(tg.graph.degree(t), inst.c);
    // rename each terminal to its gadget copy and compare every bipartition
    VertexSet renamed = inst.terminals;
    for (auto& t : renamed)
      for (auto [a, b] : tg.renamed)
        if (a == t) t = b;
    const int k = static_cast<int>(renamed.size());
    for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
      VertexSet l1, r1, l2, r2;
      for (int i = 0; i < k; ++i) {
        ((mask >> i) & 1 ? l1 : r1).push_back(inst.terminals[i]);
        ((mask >> i) & 1 ? l2 : r2).push_back(renamed[i]);
      }
      ASSERT_EQ(oracle_mincut(inst.g, l1, r1, inst.c), oracle_mincut(tg.graph, l2, r2, inst.c));
    }
  }
}
