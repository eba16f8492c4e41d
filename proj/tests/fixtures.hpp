// Shared fixture graphs and brute-force helpers for the test binaries.
#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "cmimic/graph.hpp"

namespace fixtures {

using cmimic::EdgeId;
using cmimic::MultiGraph;
using cmimic::VertexId;
using cmimic::VertexSet;

inline MultiGraph from_edges(int n, const std::vector<std::pair<int, int>>& es, const VertexSet& terms = {}) {
  MultiGraph g(n);
  for (auto [u, v] : es) g.add_edge(u, v);
  for (VertexId t : terms) g.set_terminal(t);
  return g;
}

// a-b-c as 0-1-2
inline MultiGraph p3(const VertexSet& t = {}) { return from_edges(3, {{0, 1}, {1, 2}}, t); }
// v1..v5 as 0..4
inline MultiGraph p5(const VertexSet& t = {}) { return from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, t); }
inline MultiGraph c4(const VertexSet& t = {}) { return from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, t); }
inline MultiGraph complete(int n, const VertexSet& t = {}) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.push_back({i, j});
  return from_edges(n, es, t);
}
inline MultiGraph k4(const VertexSet& t = {}) { return complete(4, t); }
inline MultiGraph k5(const VertexSet& t = {}) { return complete(5, t); }
// center r = 0, leaves l1..l4 = 1..4
inline MultiGraph star5(const VertexSet& t = {}) { return from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}, t); }
// triangles {0,1,2} and {3,4,5}, bridge 2-3 (edge id 3)
inline MultiGraph dumbbell(const VertexSet& t = {}) {
  return from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {4, 5}, {3, 5}}, t);
}

struct RandomSpec {
  int n_min = 3, n_max = 10;
  int m_max = 20;
  int k_min = 2, k_max = 4;
  int c_min = 1, c_max = 3;
};

struct Instance {
  MultiGraph g;
  VertexSet terminals;
  int c;
};

// random multigraph; parallel edges allowed, no loops
inline Instance random_instance(std::mt19937_64& rng, const RandomSpec& s) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int n = pick(s.n_min, s.n_max);
  int m = pick(std::min(n - 1, s.m_max), std::min(s.m_max, n * 3));
  MultiGraph g(n);
  // a random spanning-ish backbone keeps most instances connected
  for (int v = 1; v < n && g.live_edge_count() < m; ++v)
    if (pick(0, 9) < 8) g.add_edge(v, pick(0, v - 1));
  while (g.live_edge_count() < m) {
    int u = pick(0, n - 1), v = pick(0, n - 1);
    if (u != v) g.add_edge(u, v);
  }
  int k = std::min(n, pick(s.k_min, s.k_max));
  VertexSet all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  VertexSet t(all.begin(), all.begin() + k);
  std::sort(t.begin(), t.end());
  for (VertexId x : t) g.set_terminal(x);
  return {g, t, pick(s.c_min, s.c_max)};
}

// |E(S, V \ S)| for the representative-level mask bits
inline int cut_size(const MultiGraph& g, const std::vector<char>& side) {
  int cut = 0;
  for (EdgeId e = 0; e < g.edge_id_count(); ++e) {
    if (!g.is_live(e)) continue;
    auto [u, v] = g.endpoints(e);
    cut += side[u] != side[v];
  }
  return cut;
}

// exact mincut by subset enumeration over representatives (small graphs only)
inline int brute_mincut(const MultiGraph& g, const VertexSet& a, const VertexSet& b) {
  VertexSet vs = g.vertices();
  std::vector<char> in_a(g.id_count(), 0), in_b(g.id_count(), 0);
  for (VertexId x : a) in_a[g.find(x)] = 1;
  for (VertexId x : b) in_b[g.find(x)] = 1;
  for (VertexId v : vs)
    if (in_a[v] && in_b[v]) return 1 << 20;
  VertexSet free;
  for (VertexId v : vs)
    if (!in_a[v] && !in_b[v]) free.push_back(v);
  int best = 1 << 20;
  std::vector<char> side(g.id_count(), 0);
  for (std::uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
    for (VertexId v : vs) side[v] = in_a[v];
    for (size_t i = 0; i < free.size(); ++i) side[free[i]] = (mask >> i) & 1;
    best = std::min(best, cut_size(g, side));
  }
  return best;
}

inline int brute_tmincut(const MultiGraph& g, const VertexSet& a, const VertexSet& b, int c) {
  return std::min(c, brute_mincut(g, a, b));
}

}  // namespace fixtures
