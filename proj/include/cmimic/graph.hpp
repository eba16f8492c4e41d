/**
 * \file graph.hpp
 * Contractible multigraph with stable edge ids, terminal markings and
 * the bounded flow / cut primitives everything else is built on.
 */
#pragma once

#include <boost/dynamic_bitset.hpp>
#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cmimic {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using VertexSet = std::vector<VertexId>;  // sorted, unique
using EdgeSet = std::vector<EdgeId>;      // sorted, unique
using Mask = boost::dynamic_bitset<>;
using Rational = boost::rational<std::int64_t>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an exhaustive routine is asked to go past its size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

enum class EdgeStatus { kLive, kCollapsed, kDeleted };

class MultiGraph {
 public:
  MultiGraph() = default;
  explicit MultiGraph(int vertex_count);

  VertexId add_vertex();
  EdgeId add_edge(VertexId u, VertexId v);
  void remove_edge(EdgeId e);

  // union-find over vertex ids; the representative is the smallest member
  VertexId find(VertexId v) const { return rep_[v]; }
  void merge(VertexId a, VertexId b);
  void contract(EdgeId e);

  void set_terminal(VertexId v, bool on = true);
  void clear_terminals();
  bool is_terminal(VertexId v) const { return terminal_[rep_[v]] != 0; }

  int id_count() const { return static_cast<int>(rep_.size()); }
  int edge_id_count() const { return static_cast<int>(edges_.size()); }
  bool is_rep(VertexId v) const { return rep_[v] == v; }
  int num_vertices() const { return num_reps_; }
  VertexSet vertices() const;
  VertexSet terminals() const;
  const VertexSet& members(VertexId rep) const { return members_[rep]; }

  EdgeStatus status(EdgeId e) const;
  bool is_live(EdgeId e) const { return status(e) == EdgeStatus::kLive; }
  std::pair<VertexId, VertexId> endpoints(EdgeId e) const {
    return {rep_[edges_[e].u], rep_[edges_[e].v]};
  }
  std::pair<VertexId, VertexId> original_endpoints(EdgeId e) const {
    return {edges_[e].u, edges_[e].v};
  }
  EdgeSet live_edges() const;
  int live_edge_count() const;

  // live non-loop edges at v; volume also counts loops twice
  int degree(VertexId v) const;
  int volume(VertexId v) const;

  void check_vertex(VertexId v) const;
  void check_edge(EdgeId e) const;

 private:
  struct EdgeRecord {
    VertexId u;
    VertexId v;
    bool deleted;
  };
  std::vector<VertexId> rep_;
  std::vector<VertexSet> members_;
  std::vector<char> terminal_;
  std::vector<EdgeRecord> edges_;
  int num_reps_ = 0;
};

// adjacency lists over representatives, live non-loop edges only
struct Adjacency {
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> out;
  explicit Adjacency(const MultiGraph& g);
};

struct CutWitness {
  EdgeSet edges;
  VertexSet side1;
  VertexSet side2;
  int value = 0;
  VertexSet terminals1;
  VertexSet terminals2;
};

// Builds the witness for the cut whose side1 is the set of representatives in mask.
CutWitness make_witness(const MultiGraph& g, const Mask& side1);

struct FlowResult {
  bool exceeds = false;  // the top marker: mincut > cap or A and B overlap
  int value = 0;
  std::optional<CutWitness> witness;
  Mask sink_side;  // vertices that can still reach B in the residual graph
  Mask source_side;  // reachable from A in the residual graph
};

FlowResult max_flow_bounded(const MultiGraph& g, const VertexSet& a, const VertexSet& b, int cap);
int thresholded_mincut(const MultiGraph& g, const VertexSet& a, const VertexSet& b, int c);

struct WeightedEdge {
  VertexId u;
  VertexId v;
  int w = 1;
};

// 1-based input ids; internal ids are shifted down by one.
MultiGraph build_graph(int n, const std::vector<WeightedEdge>& edges, const VertexSet& terminals, int c);

struct TerminalGadget {
  MultiGraph graph;
  std::vector<std::pair<VertexId, VertexId>> renamed;  // (t, t')
  EdgeSet gadget_edges;
};

TerminalGadget attach_terminal_gadget(const MultiGraph& g, int c);
MultiGraph contract_edges(const MultiGraph& g, const EdgeSet& edges);
MultiGraph sparse_certificate(const MultiGraph& g, int c);

// subdivides each listed edge u-v into u-w-v; w ids are appended
struct Subdivision {
  MultiGraph graph;
  VertexSet new_vertices;             // parallel to edges
  std::vector<EdgeId> far_edge;       // w-v edge for each subdivided edge
  std::vector<EdgeId> near_edge;      // u-w edge for each subdivided edge
};
Subdivision subdivide_edges(const MultiGraph& g, const EdgeSet& edges);

Rational conductance(const MultiGraph& g, const VertexSet& s);
Rational graph_conductance_exact(const MultiGraph& g, int limit = 18);

std::vector<VertexSet> connected_components(const MultiGraph& g);
EdgeSet boundary(const MultiGraph& g, const VertexSet& x);

// Compact copy of g[x]: local ids 0..|x|-1, parent maps for vertices and edges.
struct Subgraph {
  MultiGraph graph;
  std::vector<VertexId> to_parent_vertex;
  std::vector<EdgeId> to_parent_edge;
};
Subgraph induced_subgraph(const MultiGraph& g, const VertexSet& x);

// helpers
Mask to_mask(const MultiGraph& g, const VertexSet& s);
VertexSet from_mask(const Mask& m);
VertexSet resolve(const MultiGraph& g, const VertexSet& s);  // map to sorted representatives

}  // namespace cmimic
