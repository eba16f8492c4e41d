/**
 * \file intersect.hpp
 * Edge sets that intersect or contain all small terminal cuts, the two
 * recursive constructions for them, and the containment-based sparsifier.
 *
 * Terminal sets are passed explicitly here: the recursions promote and merge
 * terminals as they go. Graphs may be disconnected; components are handled
 * independently.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmimic/expander.hpp"
#include "cmimic/graph.hpp"
#include "cmimic/sparsifier.hpp"

namespace cmimic {

struct IntersectingSet {
  EdgeSet edges;
  std::map<EdgeId, std::string> provenance;  // first rule that added the edge
  int branches = 0;            // splits on a cut with two terminals per side
  int isolating_rounds = 0;    // contractions across an isolating cut
  int local_cut_calls = 0;
  int monotone_violations = 0;  // cached local cut value went down (never expected)
};

struct ContainingSet {
  EdgeSet edges;
  std::map<EdgeId, std::string> provenance;
  std::vector<int> round_sizes;  // accumulated size after each threshold round
};

enum class IntersectStrategy { kNontrivial, kTerminal, kTerminalFast };

struct IntersectOptions {
  Rational phi{1, 4};
  bool certified = false;  // graph known to have conductance >= phi
  // the fast variant falls back to single-flow isolating cuts below
  // fast_constant * c^2 / phi terminals
  std::int64_t fast_constant = 500;
};

// nullopt means every terminal cut is larger than c
std::optional<CutWitness> min_terminal_cut(const MultiGraph& g, const VertexSet& terminals, int c);

// the minimum s-isolating cut with the largest s side (side1)
std::optional<CutWitness> maximal_isolating_cut(const MultiGraph& g, VertexId s, const VertexSet& terminals, int c);

struct LocalCut {
  int value = 0;
  CutWitness witness;  // side1 holds v
};
// Smallest cut whose v side has volume at most nu and at most the other side.
std::optional<LocalCut> local_cut(const MultiGraph& g, VertexId v, int c, int nu);

IntersectingSet recursive_nontrivial_cuts(const MultiGraph& g, const VertexSet& terminals, int c);

// With sparse_top the graph is first replaced by sparse_certificate(g, c) and
// the result intersects the cuts of that certificate.
IntersectingSet recursive_terminal_cuts(const MultiGraph& g, const VertexSet& terminals, int c, bool sparse_top = true);

IntersectingSet recursive_terminal_cuts_fast(const MultiGraph& g, const VertexSet& terminals, int c,
                                             const IntersectOptions& opts = {});

ContainingSet get_containing_edges(const MultiGraph& g, const VertexSet& terminals, int c, IntersectStrategy strategy,
                                   const IntersectOptions& opts = {});

// g / (E \ e_con)
SparsifierResult contract_to_sparsifier(const MultiGraph& g, const EdgeSet& e_con);

struct ContainmentOptions {
  enum class Mode { kTheory, kFixed };
  Mode mode = Mode::kTheory;
  Rational fixed{1, 4};
  std::int64_t c_int = 1;
  std::int64_t fast_constant = 500;
  int exact_limit = 18;

  // theory mode: 1 / (5 c (4 c_int)^c (c!)^2 ceil(log2 n)^4)
  Rational resolve(int n, int c) const;
};

// Terminals are read from g. trace holds the vertex count before the first
// pass and after each pass.
SparsifierResult mimicking_via_containment(const MultiGraph& g, int c, const ContainmentOptions& opts = {});

}  // namespace cmimic
