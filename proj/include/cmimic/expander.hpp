/**
 * \file expander.hpp
 * Expander route: decomposition, small-cut enumeration, the contractibility
 * index and the outer loop that sparsifies piece by piece.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cmimic/graph.hpp"
#include "cmimic/sparsifier.hpp"

namespace cmimic {

struct Decomposition {
  std::vector<VertexSet> pieces;  // sorted by smallest member
  EdgeSet inter_cluster_edges;
  Rational target_phi;
  std::vector<char> verified;  // piece checked exhaustively
};

// Recursive low-conductance splitting. Pieces up to exact_limit vertices are
// certified exhaustively; larger ones only survive a sweep heuristic and are
// left unverified. Self-loops are ignored.
Decomposition expander_decompose(const MultiGraph& g, Rational phi, int exact_limit = 18);

// ceil(c / phi), the vertex bound on the small side of a cut of size <= c
int volume_bound(int c, Rational phi);

// Every cut of size <= c with a connected side of at most nu vertices, one
// witness per edge set. side1 is the connected side that was found; with a
// seed, only sides containing the seed are reported.
std::vector<CutWitness> enumerate_small_cuts(const MultiGraph& g, int c, int nu,
                                             std::optional<VertexId> seed = std::nullopt);

// Partition / minimum cut / edge incidence structure over g's terminals.
struct CutIndex {
  std::vector<std::pair<VertexSet, VertexSet>> partitions;  // smallest terminal in first
  std::vector<int> partition_value;
  std::vector<EdgeSet> cuts;
  std::vector<int> cut_partition;
  EdgeSet edges;
  std::vector<std::vector<int>> cuts_of_edge;  // indexed by edge id
  std::vector<char> cut_alive;
  std::vector<int> live_cuts;  // per partition

  int alive_cut_count() const;
};

// Groups terminal-separating cuts by terminal bipartition and keeps the
// minimum ones. Unions of pairwise non-adjacent connected sides are added
// first, since a minimum cut can have a disconnected side.
CutIndex build_cut_index(const MultiGraph& g, int c, const std::vector<CutWitness>& cuts);

bool is_contractible(const CutIndex& index, EdgeId e);
// Contracts e and drops the cuts through it when that leaves every partition
// with a cut. Returns whether it did.
bool contract_edge_and_update(MultiGraph& g, CutIndex& index, EdgeId e);

struct PhiPolicy {
  enum class Mode { kTheory, kFixed };
  Mode mode = Mode::kTheory;
  Rational fixed{1, 4};
  std::int64_t c_prime = 1;

  // theory mode: 1 / (4 C' c^4 ceil(log2 n)^3)
  Rational resolve(int n, int c) const;
};

struct SparsifyOptions {
  bool certified = true;   // the graph is known to have conductance >= phi
  bool paranoid = false;   // recheck each contraction with the oracle (k <= 12)
};

SparsifierResult phi_sparsify(const MultiGraph& g, int c, Rational phi, const SparsifyOptions& opts = {});

struct EfficientOptions {
  PhiPolicy phi;
  bool paranoid = false;
  int exact_limit = 18;
};

// trace holds the live edge count before the first pass and after each pass
SparsifierResult efficient_poly_sized(const MultiGraph& g, int c, const EfficientOptions& opts = {});

}  // namespace cmimic
