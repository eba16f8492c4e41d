/**
 * \file oracle.hpp
 * Exhaustive checkers. They share nothing with the flow code in graph.cpp
 * so that a bug there cannot hide itself.
 */
#pragma once

#include <optional>

#include "cmimic/graph.hpp"
#include "cmimic/query_log.hpp"

namespace cmimic {

struct Bipartition {
  VertexSet left;
  VertexSet right;
};

struct EquivalenceReport {
  bool equivalent = true;
  std::optional<Bipartition> counterexample;
  int g_value = 0;
  int h_value = 0;
  explicit operator bool() const { return equivalent; }
};

inline constexpr int kOracleTerminalCap = 16;
inline constexpr int kDisjointTerminalCap = 10;
inline constexpr int kWellLinkedCap = 20;
inline constexpr int kVerifyEdgeCap = 30;
inline constexpr int kVerifyThresholdCap = 4;

// min(c, mincut) by a dense Edmonds-Karp; labels are resolved through g.find
int oracle_mincut(const MultiGraph& g, const VertexSet& a, const VertexSet& b, int c);

// terminals are shared labels valid in both graphs
EquivalenceReport tc_equivalent(const MultiGraph& g, const MultiGraph& h, const VertexSet& terminals, int c);
bool disjoint_subset_equivalent(const MultiGraph& g, const MultiGraph& h, const VertexSet& terminals, int c);

// A bipartition (A,B) of the piece X with E(A,B) < min(|dA cap dX|, |dB cap dX|, c).
struct ViolatingCut {
  VertexSet side_a;
  VertexSet side_b;
  EdgeSet edges;
  int boundary_a = 0;
  int boundary_b = 0;
};

bool is_violating(const MultiGraph& g, const VertexSet& x, const ViolatingCut& cut, int c);
std::optional<ViolatingCut> find_violating_cut_bruteforce(const MultiGraph& g, const VertexSet& x, int c);
bool is_well_linked(const MultiGraph& g, const VertexSet& x, int c);

bool verify_intersecting(const MultiGraph& g, const VertexSet& terminals, int c, const EdgeSet& e_int);
bool verify_containing(const MultiGraph& g, const VertexSet& terminals, int c, const EdgeSet& e_con);

std::vector<int> naive_offline(const QueryLog& log, int c);

}  // namespace cmimic
