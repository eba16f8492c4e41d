#include <gtest/gtest.h>

#include "brute.hpp"
#include "cmimic/intersect.hpp"
#include "cmimic/oracle.hpp"

using namespace cmimic;
using namespace fixtures;

namespace {
// 6 leaf terminals, centers 0 and 1 joined by two parallel edges
MultiGraph double_star() {
  return from_edges(8, {{0, 1}, {0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}, {1, 6}, {1, 7}}, {2, 3, 4, 5, 6, 7});
}

// union of all minimum s-isolating sides, or empty when the value exceeds c
VertexSet brute_maximal_isolating(const MultiGraph& g, VertexId s, const VertexSet& ts, int c, int* value) {
  VertexSet vs = g.vertices();
  const int n = static_cast<int>(vs.size());
  std::vector<char> side(g.id_count(), 0), best_union(g.id_count(), 0);
  int best = c + 1;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    for (int i = 0; i < n; ++i) side[vs[i]] = (mask >> i) & 1;
    if (!side[s]) continue;
    bool ok = true;
    for (VertexId t : ts)
      if (t != s && side[t]) ok = false;
    if (!ok) continue;
    int v = cut_size(g, side);
    if (v < best) best = v, best_union.assign(g.id_count(), 0);
    if (v == best)
      for (VertexId x : vs) best_union[x] |= side[x];
  }
  *value = best;
  VertexSet out;
  if (best > c) return out;
  for (VertexId x : vs)
    if (best_union[x]) out.push_back(x);
  return out;
}

bool side_connected(const MultiGraph& g, const VertexSet& s) {
  Subgraph sub = induced_subgraph(g, s);
  return connected_components(sub.graph).size() == 1;
}

bool all_connected(const MultiGraph& g) { return connected_components(g).size() <= 1; }
}  // namespace

TEST(MinTerminalCut, Examples) {
  auto r = min_terminal_cut(p5(), {0, 4}, 2);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->value, 1);
  EXPECT_FALSE(min_terminal_cut(k4(), {0, 1, 2, 3}, 2));
  auto s = min_terminal_cut(star5(), {1, 2, 3, 4}, 2);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->value, 1);
  EXPECT_THROW(min_terminal_cut(p5(), {0}, 2), Error);
}

TEST(MinTerminalCut, RandomMatchesBruteAndSidesConnected) {
  std::mt19937_64 rng(211);
  for (int iter = 0; iter < 200; ++iter) {
    auto inst = random_instance(rng, {.n_min = 3, .n_max = 11, .m_max = 26, .k_max = 6});
    if (!all_connected(inst.g)) continue;
    auto brute = brute::min_terminal_cuts(inst.g, inst.c);
    auto r = min_terminal_cut(inst.g, inst.terminals, inst.c);
    if (brute.empty()) {
      EXPECT_FALSE(r) << "iter " << iter;
      continue;
    }
    int want = inst.c + 1;
    for (const auto& [t1, p] : brute) want = std::min(want, p.value);
    ASSERT_TRUE(r) << "iter " << iter;
    EXPECT_EQ(r->value, want);
    EXPECT_TRUE(side_connected(inst.g, r->side1)) << "iter " << iter;
    EXPECT_TRUE(side_connected(inst.g, r->side2)) << "iter " << iter;
  }
}

TEST(MaximalIsolatingCut, Examples) {
  auto r = maximal_isolating_cut(p5(), 0, {0, 4}, 1);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->side1, (VertexSet{0, 1, 2, 3}));
  EXPECT_EQ(r->edges, (EdgeSet{3}));
  auto s = maximal_isolating_cut(star5(), 1, {1, 2, 3, 4}, 2);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->side1, (VertexSet{1}));
  EXPECT_FALSE(maximal_isolating_cut(k4(), 0, {0, 1, 2, 3}, 2));
  EXPECT_THROW(maximal_isolating_cut(p5(), 1, {0, 4}, 1), Error);
}

TEST(MaximalIsolatingCut, IsUnionOfAllMinimumSides) {
  std::mt19937_64 rng(223);
  for (int iter = 0; iter < 200; ++iter) {
    auto inst = random_instance(rng, {.n_min = 3, .n_max = 12, .m_max = 28, .k_max = 5});
    for (VertexId s : inst.terminals) {
      int value = 0;
      VertexSet want = brute_maximal_isolating(inst.g, s, inst.terminals, inst.c, &value);
      auto r = maximal_isolating_cut(inst.g, s, inst.terminals, inst.c);
      if (want.empty()) {
        EXPECT_FALSE(r) << "iter " << iter;
        continue;
      }
      ASSERT_TRUE(r) << "iter " << iter;
      EXPECT_EQ(r->value, value);
      EXPECT_EQ(r->side1, want) << "iter " << iter << " s " << s;
    }
  }
}

TEST(LocalCut, Examples) {
  auto p = local_cut(p5(), 0, 2, 4);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->value, 1);
  EXPECT_FALSE(local_cut(k4(), 0, 2, 6));
  for (VertexId v = 0; v < 4; ++v) {
    auto r = local_cut(c4(), v, 2, 4);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->value, 2);
    EXPECT_TRUE(std::binary_search(r->witness.side1.begin(), r->witness.side1.end(), v));
  }
  EXPECT_THROW(local_cut(k4(), 0, 2, 2), Error);
}

TEST(LocalCut, MatchesBruteForce) {
  std::mt19937_64 rng(227);
  for (int iter = 0; iter < 150; ++iter) {
    auto inst = random_instance(rng, {.n_min = 3, .n_max = 10, .m_max = 22});
    const MultiGraph& g = inst.g;
    VertexSet vs = g.vertices();
    const int n = static_cast<int>(vs.size());
    int total = 0;
    for (VertexId x : vs) total += g.degree(x);
    for (VertexId v : vs) {
      int nu = std::max(g.degree(v), 1 + static_cast<int>(rng() % 8));
      int best = inst.c + 1;
      std::vector<char> side(g.id_count(), 0);
      for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        for (int i = 0; i < n; ++i) side[vs[i]] = (mask >> i) & 1;
        if (!side[v]) continue;
        int vol = 0;
        for (VertexId x : vs)
          if (side[x]) vol += g.degree(x);
        if (vol > nu || 2 * vol > total) continue;
        best = std::min(best, cut_size(g, side));
      }
      auto r = local_cut(g, v, inst.c, nu);
      if (best > inst.c) {
        EXPECT_FALSE(r) << "iter " << iter << " v " << v;
      } else {
        ASSERT_TRUE(r) << "iter " << iter << " v " << v;
        EXPECT_EQ(r->value, best) << "iter " << iter << " v " << v;
      }
    }
  }
}

TEST(RecursiveNontrivialCuts, Examples) {
  auto star = recursive_nontrivial_cuts(star5(), {1, 2, 3, 4}, 2);
  EXPECT_EQ(star.edges, (EdgeSet{0, 1, 2, 3}));
  EXPECT_EQ(star.branches, 0);

  auto d = dumbbell();
  auto r = recursive_nontrivial_cuts(d, {0, 1, 4, 5}, 2);
  EXPECT_TRUE(verify_intersecting(d, {0, 1, 4, 5}, 2, r.edges));
  // |T| = 4 stays in the base case; six terminals force the split on the bridge
  MultiGraph six = from_edges(8, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {0, 6}, {3, 4}, {4, 5}, {3, 5}, {5, 7}});
  VertexSet ts{0, 1, 4, 6, 5, 7};
  std::sort(ts.begin(), ts.end());
  auto s = recursive_nontrivial_cuts(six, ts, 2);
  EXPECT_GE(s.branches, 1);
  EXPECT_EQ(s.provenance.at(3), "nontrivial");
  EXPECT_TRUE(verify_intersecting(six, ts, 2, s.edges));

  auto two = recursive_nontrivial_cuts(p5(), {0, 4}, 1);
  EXPECT_EQ(two.edges.size(), 1u);
  EXPECT_TRUE(recursive_nontrivial_cuts(p5(), {2}, 1).edges.empty());
}

TEST(RecursiveNontrivialCuts, RandomIntersectsAndSize) {
  std::mt19937_64 rng(229);
  for (int iter = 0; iter < 150; ++iter) {
    auto inst = random_instance(rng, {.n_min = 4, .n_max = 12, .m_max = 26, .k_min = 2, .k_max = 8});
    auto r = recursive_nontrivial_cuts(inst.g, inst.terminals, inst.c);
    ASSERT_TRUE(verify_intersecting(inst.g, inst.terminals, inst.c, r.edges)) << "iter " << iter;
    const int k = static_cast<int>(inst.terminals.size());
    EXPECT_LE(static_cast<int>(r.edges.size()), 8 * k * inst.c);
    EXPECT_LE(r.branches, k);
  }
}

TEST(RecursiveTerminalCuts, Examples) {
  auto p = recursive_terminal_cuts(p5(), {0, 4}, 1);
  EXPECT_EQ(p.edges.size(), 1u);
  EXPECT_TRUE(verify_intersecting(p5(), {0, 4}, 1, p.edges));

  auto star = recursive_terminal_cuts(star5(), {1, 2, 3, 4}, 2);
  EXPECT_EQ(star.edges, (EdgeSet{0, 1, 2, 3}));

  auto ds = double_star();
  auto r = recursive_terminal_cuts(ds, ds.terminals(), 2);
  EXPECT_TRUE(verify_intersecting(sparse_certificate(ds, 2), ds.terminals(), 2, r.edges));
  EXPECT_TRUE(verify_intersecting(ds, ds.terminals(), 2, r.edges));
}

TEST(RecursiveTerminalCuts, DoubleStarBranches) {
  // leaf cuts have value 1, so the centre cut only becomes minimal once the
  // leaves are absorbed; give each leaf two parallel edges to expose it first
  MultiGraph g(8);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  for (int leaf : {2, 3, 4}) g.add_edge(0, leaf), g.add_edge(0, leaf), g.add_edge(0, leaf);
  for (int leaf : {5, 6, 7}) g.add_edge(1, leaf), g.add_edge(1, leaf), g.add_edge(1, leaf);
  for (int t = 2; t < 8; ++t) g.set_terminal(t);
  auto r = recursive_terminal_cuts(g, g.terminals(), 2);
  EXPECT_GE(r.branches, 1);
  EXPECT_EQ(r.provenance.at(0), "nontrivial");
  EXPECT_TRUE(verify_intersecting(g, g.terminals(), 2, r.edges));
}

TEST(RecursiveTerminalCuts, RandomIntersectsCertificate) {
  std::mt19937_64 rng(233);
  int largest = 0;
  for (int iter = 0; iter < 150; ++iter) {
    auto inst = random_instance(rng, {.n_min = 4, .n_max = 12, .m_max = 26, .k_min = 2, .k_max = 8});
    auto r = recursive_terminal_cuts(inst.g, inst.terminals, inst.c);
    MultiGraph cert = sparse_certificate(inst.g, inst.c);
    ASSERT_TRUE(verify_intersecting(cert, inst.terminals, inst.c, r.edges)) << "iter " << iter;
    auto raw = recursive_terminal_cuts(inst.g, inst.terminals, inst.c, false);
    ASSERT_TRUE(verify_intersecting(inst.g, inst.terminals, inst.c, raw.edges)) << "iter " << iter;
    const int k = static_cast<int>(inst.terminals.size());
    EXPECT_LE(static_cast<int>(r.edges.size()), 8 * k * inst.c * inst.c);
    largest = std::max<int>(largest, static_cast<int>(r.edges.size()) / (k * inst.c));
  }
  RecordProperty("largest_ratio", largest);
}

TEST(RecursiveTerminalCutsFast, SmallBranchEqualsSlow) {
  std::mt19937_64 rng(239);
  for (int iter = 0; iter < 100; ++iter) {
    auto inst = random_instance(rng, {.n_min = 4, .n_max = 12, .m_max = 26, .k_min = 2, .k_max = 8});
    auto slow = recursive_terminal_cuts(inst.g, inst.terminals, inst.c, false);
    auto fast = recursive_terminal_cuts_fast(inst.g, inst.terminals, inst.c);
    EXPECT_EQ(fast.edges, slow.edges) << "iter " << iter;
    EXPECT_EQ(fast.local_cut_calls, 0);
  }
}

TEST(RecursiveTerminalCutsFast, LocalCutDriver) {
  std::mt19937_64 rng(241);
  int calls = 0;
  for (int iter = 0; iter < 120; ++iter) {
    auto inst = random_instance(rng, {.n_min = 5, .n_max = 12, .m_max = 28, .k_min = 5, .k_max = 9});
    for (bool certified : {false, true}) {
      IntersectOptions opts{Rational(1, 4), certified, 0};
      auto r = recursive_terminal_cuts_fast(inst.g, inst.terminals, inst.c, opts);
      EXPECT_EQ(r.monotone_violations, 0) << "iter " << iter;
      calls += r.local_cut_calls;
      if (!certified) ASSERT_TRUE(verify_intersecting(inst.g, inst.terminals, inst.c, r.edges)) << "iter " << iter;
    }
  }
  EXPECT_GT(calls, 0);
  EXPECT_THROW(recursive_terminal_cuts_fast(p5(), {0, 4}, 1, {Rational(0), false, 0}), Error);
}

TEST(GetContainingEdges, Examples) {
  for (auto strategy : {IntersectStrategy::kNontrivial, IntersectStrategy::kTerminal, IntersectStrategy::kTerminalFast}) {
    auto p = get_containing_edges(p5(), {0, 4}, 1, strategy);
    EXPECT_EQ(p.edges.size(), 1u);
    EXPECT_TRUE(verify_containing(p5(), {0, 4}, 1, p.edges));
    auto star = get_containing_edges(star5(), {1, 2, 3, 4}, 2, strategy);
    EXPECT_EQ(star.edges, (EdgeSet{0, 1, 2, 3}));
    EXPECT_TRUE(get_containing_edges(p5(), {}, 2, strategy).edges.empty());
    EXPECT_TRUE(get_containing_edges(p5(), {3}, 2, strategy).edges.empty());
  }
}

TEST(GetContainingEdges, RandomContainsEveryStrategy) {
  std::mt19937_64 rng(251);
  for (int iter = 0; iter < 100; ++iter) {
    auto inst = random_instance(rng, {.n_min = 4, .n_max = 11, .m_max = 24, .k_min = 2, .k_max = 6});
    for (auto strategy :
         {IntersectStrategy::kNontrivial, IntersectStrategy::kTerminal, IntersectStrategy::kTerminalFast}) {
      auto r = get_containing_edges(inst.g, inst.terminals, inst.c, strategy);
      ASSERT_TRUE(verify_containing(inst.g, inst.terminals, inst.c, r.edges)) << "iter " << iter;
      ASSERT_EQ(static_cast<int>(r.round_sizes.size()), inst.c);
      for (size_t i = 1; i < r.round_sizes.size(); ++i) EXPECT_GE(r.round_sizes[i], r.round_sizes[i - 1]);
      auto h = contract_to_sparsifier(inst.g, r.edges);
      ASSERT_TRUE(tc_equivalent(inst.g, h.graph, inst.terminals, inst.c)) << "iter " << iter;
    }
  }
}

TEST(ContractToSparsifier, Examples) {
  auto one = contract_to_sparsifier(p5(), {});
  EXPECT_EQ(one.graph.num_vertices(), 1);
  auto two = contract_to_sparsifier(p5(), {2});
  EXPECT_EQ(two.graph.num_vertices(), 2);
  EXPECT_EQ(two.graph.live_edge_count(), 1);
  auto split = contract_to_sparsifier(from_edges(4, {{0, 1}, {2, 3}}), {});
  EXPECT_EQ(split.graph.num_vertices(), 2);
}

TEST(MimickingViaContainment, Examples) {
  auto p = p5({0, 4});
  auto r = mimicking_via_containment(p, 1);
  EXPECT_EQ(r.graph.live_edge_count(), 1);
  EXPECT_EQ(r.graph.num_vertices(), 2);
  EXPECT_TRUE(tc_equivalent(p, r.graph, {0, 4}, 1));
  EXPECT_EQ(ContainmentOptions{}.resolve(20, 2), Rational(1, 400000));
}

TEST(MimickingViaContainment, RandomEquivalenceAndFixedPoint) {
  std::mt19937_64 rng(257);
  for (int iter = 0; iter < 60; ++iter) {
    auto inst = random_instance(rng, {.n_min = 5, .n_max = 16, .m_max = 36, .k_max = 5});
    for (bool fixed : {false, true}) {
      ContainmentOptions opts;
      if (fixed) opts.mode = ContainmentOptions::Mode::kFixed, opts.fast_constant = 1;
      auto r = mimicking_via_containment(inst.g, inst.c, opts);
      ASSERT_TRUE(tc_equivalent(inst.g, r.graph, inst.terminals, inst.c)) << "iter " << iter;
      for (size_t i = 1; i + 1 < r.trace.size(); ++i) EXPECT_LT(r.trace[i], r.trace[i - 1]);
      auto again = mimicking_via_containment(r.graph, inst.c, opts);
      EXPECT_EQ(again.graph.num_vertices(), r.graph.num_vertices()) << "iter " << iter;
    }
  }
}
