/**
 * \file welllinked.hpp
 * Existence route: split V minus T along violating cuts, contract the
 * well-linked pieces and sparsify the pieces with few boundary edges.
 */
#pragma once

#include <optional>
#include <string>

#include "cmimic/oracle.hpp"
#include "cmimic/sparsifier.hpp"

namespace cmimic {

enum class PieceStatus { kUnresolved, kWellLinked, kSparseBoundary };

struct PiecePartition {
  std::vector<VertexSet> pieces;
  std::vector<EdgeSet> boundaries;
  std::vector<PieceStatus> status;
};

int partition_potential(const PiecePartition& p, int c);

enum class CutFinder { kBruteForce, kFpt };

// Piece plus one pendant vertex per boundary edge; the pendants are the only terminals.
struct BoundaryGadget {
  MultiGraph graph;
  VertexSet terminals;
  std::vector<VertexId> to_parent_vertex;  // -1 for pendant vertices
  std::vector<EdgeId> to_parent_edge;      // pendant edge maps to its boundary edge
};

BoundaryGadget boundary_preprocess(const MultiGraph& g, const VertexSet& piece);

inline constexpr int kBaseCaseTerminalCap = 14;

SparsifierResult base_case_sparsifier(const MultiGraph& g, const VertexSet& terminals, int c);

struct PolySizedTrace {
  PiecePartition partition;
  std::vector<std::pair<int, int>> split_potentials;  // (before, after) per split
  std::vector<std::pair<int, std::pair<int, int>>> split_boundaries;  // parent, (child a, child b)
  int initial_boundary = 0;
};

// Terminals are read from the markings of g; the gadget is applied internally.
SparsifierResult poly_sized_c_network(const MultiGraph& g, int c, CutFinder finder = CutFinder::kBruteForce,
                                      PolySizedTrace* trace = nullptr);

std::optional<ViolatingCut> find_violating_cut(const MultiGraph& g, const VertexSet& x, int c, CutFinder finder);

}  // namespace cmimic
