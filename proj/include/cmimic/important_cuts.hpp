/**
 * \file important_cuts.hpp
 * Important cuts, constrained cuts and the FPT violating-cut finder.
 */
#pragma once

#include <optional>

#include "cmimic/graph.hpp"
#include "cmimic/oracle.hpp"

namespace cmimic {

struct ConstrainedCutSpec {
  VertexSet q0;
  VertexSet q1;
  int c0 = 0;
  int c1 = 0;
  int ell = 0;
};

inline constexpr int kConstrainedCap = 4;

// side1 of each witness is the X-side S_X. Sorted by side1.
std::vector<CutWitness> enumerate_important_cuts(const MultiGraph& g, const VertexSet& x, const VertexSet& y, int c);

// side1 of the witness is A0. Terminals come from the markings of g.
std::optional<CutWitness> constrained_cut(const MultiGraph& g, const ConstrainedCutSpec& spec);

// one-sided variant: A0 needs c_req terminals, A1 none
std::optional<CutWitness> constrained_cut_base(const MultiGraph& g, const VertexSet& q0, const VertexSet& q1,
                                               int c_req, int ell);

bool satisfies_spec(const MultiGraph& g, const ConstrainedCutSpec& spec, const CutWitness& w);

std::optional<ViolatingCut> find_violating_cut_fpt(const MultiGraph& g, const VertexSet& x, int c);

}  // namespace cmimic
