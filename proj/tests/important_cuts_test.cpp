#include <gtest/gtest.h>

#include "brute.hpp"
#include "cmimic/important_cuts.hpp"
#include "cmimic/welllinked.hpp"

using namespace cmimic;
using namespace fixtures;

namespace {
std::vector<VertexSet> sides(const std::vector<CutWitness>& ws) {
  std::vector<VertexSet> out;
  for (const auto& w : ws) out.push_back(w.side1);
  return out;
}

// cut edge sets, sorted; independent of where unreachable vertices land
std::vector<EdgeSet> edge_sets(const MultiGraph& g, const std::vector<VertexSet>& ss) {
  std::vector<EdgeSet> out;
  for (const auto& s : ss) out.push_back(boundary(g, s));
  std::sort(out.begin(), out.end());
  return out;
}

// pendant terminal on each listed vertex
MultiGraph with_pendants(MultiGraph g, const VertexSet& at) {
  for (VertexId v : at) {
    VertexId t = g.add_vertex();
    g.add_edge(v, t);
    g.set_terminal(t);
  }
  return g;
}
}  // namespace

TEST(ImportantCuts, P5) {
  auto ws = enumerate_important_cuts(p5(), {0}, {4}, 1);
  ASSERT_EQ(ws.size(), 1u);
  EXPECT_EQ(ws[0].side1, (VertexSet{0, 1, 2, 3}));
  EXPECT_EQ(ws[0].edges, (EdgeSet{3}));
}

TEST(ImportantCuts, C4) {
  auto ws = enumerate_important_cuts(c4(), {0}, {2}, 2);
  EXPECT_LE(ws.size(), 16u);
  EXPECT_EQ(edge_sets(c4(), sides(ws)), edge_sets(c4(), brute::important_cuts(c4(), {0}, {2}, 2)));
  for (const auto& w : ws) EXPECT_EQ(w.value, 2);
}

TEST(ImportantCuts, TooExpensive) {
  auto g = from_edges(2, {{0, 1}, {0, 1}, {0, 1}});
  EXPECT_TRUE(enumerate_important_cuts(g, {0}, {1}, 2).empty());
}

TEST(ImportantCuts, RandomAgainstBruteForce) {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 150; ++iter) {
    auto inst = random_instance(rng, {.n_min = 3, .n_max = 10, .m_max = 20, .c_max = 4});
    VertexSet x{inst.terminals[0]}, y{inst.terminals[1]};
    auto ws = enumerate_important_cuts(inst.g, x, y, inst.c);
    ASSERT_EQ(edge_sets(inst.g, sides(ws)), edge_sets(inst.g, brute::important_cuts(inst.g, x, y, inst.c)))
        << "iter " << iter;
    ASSERT_LE(ws.size(), static_cast<size_t>(1) << (2 * inst.c));
  }
}

TEST(ConstrainedCut, PlainMinCut) {
  auto g = p5();
  auto w = constrained_cut(g, {{0}, {4}, 0, 0, 1});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->value, 1);
  EXPECT_FALSE(constrained_cut(from_edges(2, {{0, 1}, {0, 1}}), {{0}, {1}, 0, 0, 1}));
}

TEST(ConstrainedCut, StarInfeasible) {
  auto s = star5({1, 2, 3, 4});
  EXPECT_FALSE(constrained_cut(s, {{0}, {}, 2, 2, 1}));
  EXPECT_FALSE(brute::constrained_exists(s, {{0}, {}, 2, 2, 1}));
}

TEST(ConstrainedCut, DumbbellBridge) {
  auto d = with_pendants(dumbbell(), {0, 1, 4, 5});
  ConstrainedCutSpec spec{{}, {}, 2, 2, 1};
  auto w = constrained_cut(d, spec);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->edges, (EdgeSet{3}));
  EXPECT_TRUE(satisfies_spec(d, spec, *w));
}

TEST(ConstrainedCut, Errors) {
  auto s = star5({1, 2});
  EXPECT_THROW(constrained_cut(s, {{1}, {}, 1, 1, 1}), Error);
  EXPECT_THROW(constrained_cut(s, {{}, {}, 5, 1, 1}), CapExceeded);
}

TEST(ConstrainedCutBase, Examples) {
  auto g = p5({0, 4});
  auto w = constrained_cut_base(g, {1}, {3}, 0, 1);
  ASSERT_TRUE(w);
  // star of paths: centre 0, three arms of length 2 with terminal tips
  auto sp = from_edges(7, {{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}}, {2, 4, 6});
  auto hit = constrained_cut_base(sp, {}, {0}, 1, 1);
  ASSERT_TRUE(hit);
  EXPECT_TRUE(brute::constrained_exists(sp, {{}, {0}, 1, 0, 1}));
  EXPECT_FALSE(constrained_cut_base(sp, {}, {0}, 2, 1));
  EXPECT_FALSE(brute::constrained_exists(sp, {{}, {0}, 2, 0, 1}));
  // budget zero on a connected graph
  EXPECT_FALSE(constrained_cut_base(p5({0, 4}), {1}, {3}, 1, 0));
}

TEST(ConstrainedCut, RandomAgainstBruteForce) {
  std::mt19937_64 rng(37);
  for (int iter = 0; iter < 300; ++iter) {
    auto inst = random_instance(rng, {.n_min = 3, .n_max = 11, .m_max = 18, .k_min = 2, .k_max = 6});
    auto& g = inst.g;
    ConstrainedCutSpec spec;
    VertexSet nonterm;
    for (VertexId v : g.vertices())
      if (!g.is_terminal(v)) nonterm.push_back(v);
    for (VertexId v : nonterm) {
      int r = static_cast<int>(rng() % 6);
      if (r == 0) spec.q0.push_back(v);
      if (r == 1) spec.q1.push_back(v);
    }
    spec.c0 = static_cast<int>(rng() % 4);
    spec.c1 = static_cast<int>(rng() % 4);
    spec.ell = static_cast<int>(rng() % 4);
    auto w = constrained_cut(g, spec);
    bool truth = brute::constrained_exists(g, spec);
    ASSERT_EQ(w.has_value(), truth) << "iter " << iter;
    if (w) ASSERT_TRUE(satisfies_spec(g, spec, *w));
  }
}

TEST(ViolatingFpt, Examples) {
  auto d = with_pendants(dumbbell(), {0, 1, 4, 5});
  VertexSet x{0, 1, 2, 3, 4, 5};
  auto w = find_violating_cut_fpt(d, x, 2);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->edges, (EdgeSet{3}));
  // a triangle with one pendant per corner is well-linked for c = 2
  auto tri = with_pendants(from_edges(3, {{0, 1}, {1, 2}, {0, 2}}), {0, 1, 2});
  EXPECT_FALSE(find_violating_cut_fpt(tri, {0, 1, 2}, 2));
  EXPECT_FALSE(find_violating_cut_bruteforce(tri, {0, 1, 2}, 2));
}

TEST(ViolatingFpt, LastLevel) {
  // two K4 blocks joined by two edges, three pendants each: only ell = 2 < c = 3 works
  auto g = complete(4);
  for (int i = 0; i < 4; ++i) g.add_vertex();
  for (int i = 4; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) g.add_edge(i, j);
  g.add_edge(0, 4);
  g.add_edge(1, 5);
  g = with_pendants(g, {1, 2, 3, 5, 6, 7});
  VertexSet x{0, 1, 2, 3, 4, 5, 6, 7};
  auto w = find_violating_cut_fpt(g, x, 3);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->edges.size(), 2u);
  EXPECT_TRUE(find_violating_cut_bruteforce(g, x, 3));
  EXPECT_FALSE(find_violating_cut_fpt(g, x, 2));
  EXPECT_FALSE(find_violating_cut_bruteforce(g, x, 2));
}

TEST(ViolatingFpt, RandomAgreement) {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 200; ++iter) {
    auto inst = random_instance(rng, {.n_min = 4, .n_max = 12, .m_max = 24, .k_min = 2, .k_max = 6});
    VertexSet x;
    for (VertexId v : inst.g.vertices())
      if (!inst.g.is_terminal(v)) x.push_back(v);
    if (x.size() < 2) continue;
    auto a = find_violating_cut_fpt(inst.g, x, inst.c);
    auto b = find_violating_cut_bruteforce(inst.g, x, inst.c);
    ASSERT_EQ(a.has_value(), b.has_value()) << "iter " << iter;
    if (a) ASSERT_TRUE(is_violating(inst.g, x, *a, inst.c));
  }
}
