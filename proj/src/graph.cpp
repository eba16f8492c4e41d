#include "cmimic/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace cmimic {

MultiGraph::MultiGraph(int vertex_count) {
  for (int i = 0; i < vertex_count; ++i) add_vertex();
}

VertexId MultiGraph::add_vertex() {
  auto v = static_cast<VertexId>(rep_.size());
  rep_.push_back(v);
  members_.push_back({v});
  terminal_.push_back(0);
  ++num_reps_;
  return v;
}

void MultiGraph::check_vertex(VertexId v) const {
  if (v < 0 || v >= id_count()) throw Error("unknown vertex id " + std::to_string(v));
}

void MultiGraph::check_edge(EdgeId e) const {
  if (e < 0 || e >= edge_id_count()) throw Error("unknown edge id " + std::to_string(e));
}

EdgeId MultiGraph::add_edge(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  edges_.push_back({u, v, false});
  return static_cast<EdgeId>(edges_.size() - 1);
}

void MultiGraph::remove_edge(EdgeId e) {
  check_edge(e);
  edges_[e].deleted = true;
}

void MultiGraph::merge(VertexId a, VertexId b) {
  check_vertex(a);
  check_vertex(b);
  VertexId ra = rep_[a], rb = rep_[b];
  if (ra == rb) return;
  if (ra > rb) std::swap(ra, rb);
  // the representative stays the minimum id, so rep_ is always flat
  VertexId keep = ra, drop = rb;
  for (VertexId x : members_[drop]) rep_[x] = keep;
  VertexSet merged;
  merged.reserve(members_[keep].size() + members_[drop].size());
  std::merge(members_[keep].begin(), members_[keep].end(), members_[drop].begin(),
             members_[drop].end(), std::back_inserter(merged));
  members_[keep] = std::move(merged);
  members_[drop].clear();
  terminal_[keep] = static_cast<char>(terminal_[keep] || terminal_[drop]);
  terminal_[drop] = 0;
  --num_reps_;
}

void MultiGraph::contract(EdgeId e) {
  check_edge(e);
  if (edges_[e].deleted) throw Error("contracting deleted edge " + std::to_string(e));
  merge(edges_[e].u, edges_[e].v);
}

void MultiGraph::set_terminal(VertexId v, bool on) {
  check_vertex(v);
  terminal_[rep_[v]] = on ? 1 : 0;
}

void MultiGraph::clear_terminals() { std::fill(terminal_.begin(), terminal_.end(), 0); }

VertexSet MultiGraph::vertices() const {
  VertexSet out;
  for (VertexId v = 0; v < id_count(); ++v)
    if (rep_[v] == v) out.push_back(v);
  return out;
}

VertexSet MultiGraph::terminals() const {
  VertexSet out;
  for (VertexId v = 0; v < id_count(); ++v)
    if (rep_[v] == v && terminal_[v]) out.push_back(v);
  return out;
}

EdgeStatus MultiGraph::status(EdgeId e) const {
  const auto& r = edges_[e];
  if (r.deleted) return EdgeStatus::kDeleted;
  if (rep_[r.u] == rep_[r.v]) return EdgeStatus::kCollapsed;
  return EdgeStatus::kLive;
}

EdgeSet MultiGraph::live_edges() const {
  EdgeSet out;
  for (EdgeId e = 0; e < edge_id_count(); ++e)
    if (is_live(e)) out.push_back(e);
  return out;
}

int MultiGraph::live_edge_count() const {
  int n = 0;
  for (EdgeId e = 0; e < edge_id_count(); ++e) n += is_live(e) ? 1 : 0;
  return n;
}

int MultiGraph::degree(VertexId v) const {
  VertexId r = rep_[v];
  int d = 0;
  for (const auto& e : edges_) {
    if (e.deleted) continue;
    VertexId a = rep_[e.u], b = rep_[e.v];
    if (a != b && (a == r || b == r)) ++d;
  }
  return d;
}

int MultiGraph::volume(VertexId v) const {
  VertexId r = rep_[v];
  int d = 0;
  for (const auto& e : edges_) {
    if (e.deleted) continue;
    d += (rep_[e.u] == r) + (rep_[e.v] == r);
  }
  return d;
}

Adjacency::Adjacency(const MultiGraph& g) : out(g.id_count()) {
  for (EdgeId e = 0; e < g.edge_id_count(); ++e) {
    if (!g.is_live(e)) continue;
    auto [u, v] = g.endpoints(e);
    out[u].push_back({v, e});
    out[v].push_back({u, e});
  }
}

Mask to_mask(const MultiGraph& g, const VertexSet& s) {
  Mask m(g.id_count());
  for (VertexId v : s) {
    g.check_vertex(v);
    m.set(g.find(v));
  }
  return m;
}

VertexSet from_mask(const Mask& m) {
  VertexSet out;
  for (auto i = m.find_first(); i != Mask::npos; i = m.find_next(i)) out.push_back(static_cast<VertexId>(i));
  return out;
}

VertexSet resolve(const MultiGraph& g, const VertexSet& s) { return from_mask(to_mask(g, s)); }

CutWitness make_witness(const MultiGraph& g, const Mask& side1) {
  CutWitness w;
  for (VertexId v : g.vertices()) {
    bool in1 = side1.test(v);
    (in1 ? w.side1 : w.side2).push_back(v);
    if (g.is_terminal(v)) (in1 ? w.terminals1 : w.terminals2).push_back(v);
  }
  for (EdgeId e = 0; e < g.edge_id_count(); ++e) {
    if (!g.is_live(e)) continue;
    auto [u, v] = g.endpoints(e);
    if (side1.test(u) != side1.test(v)) w.edges.push_back(e);
  }
  w.value = static_cast<int>(w.edges.size());
  return w;
}

FlowResult max_flow_bounded(const MultiGraph& g, const VertexSet& a, const VertexSet& b, int cap) {
  if (a.empty() || b.empty()) throw Error("max_flow_bounded: empty terminal side");
  FlowResult res;
  const int n = g.id_count();
  Mask in_a = to_mask(g, a), in_b = to_mask(g, b);
  if (in_a.intersects(in_b)) {
    res.exceeds = true;
    return res;
  }
  // two opposite unit arcs per live edge: arc 2i is u->v, 2i+1 is v->u
  EdgeSet live = g.live_edges();
  std::vector<VertexId> head(2 * live.size());
  std::vector<int> residual(2 * live.size(), 1);
  std::vector<std::vector<int>> arcs(n);
  for (size_t i = 0; i < live.size(); ++i) {
    auto [u, v] = g.endpoints(live[i]);
    head[2 * i] = v;
    head[2 * i + 1] = u;
    arcs[u].push_back(static_cast<int>(2 * i));
    arcs[v].push_back(static_cast<int>(2 * i + 1));
  }
  auto forward_reach = [&](std::vector<int>* parent_arc) {
    Mask seen(n);
    std::deque<VertexId> queue;
    for (VertexId s : from_mask(in_a)) {
      seen.set(s);
      queue.push_back(s);
    }
    while (!queue.empty()) {
      VertexId x = queue.front();
      queue.pop_front();
      for (int arc : arcs[x]) {
        VertexId y = head[arc];
        if (residual[arc] <= 0 || seen.test(y)) continue;
        seen.set(y);
        if (parent_arc) (*parent_arc)[y] = arc;
        if (parent_arc && in_b.test(y)) return std::make_pair(seen, y);
        queue.push_back(y);
      }
    }
    return std::make_pair(seen, VertexId{-1});
  };
  int flow = 0;
  std::vector<int> parent(n, -1);
  while (true) {
    auto [seen, hit] = forward_reach(&parent);
    if (hit < 0) {
      res.source_side = seen;
      break;
    }
    for (VertexId y = hit; !in_a.test(y);) {
      int arc = parent[y];
      residual[arc] -= 1;
      residual[arc ^ 1] += 1;
      y = head[arc ^ 1];
    }
    if (++flow > cap) {
      res.exceeds = true;
      return res;
    }
  }
  res.value = flow;
  // reverse search: x can reach B if some arc x->y has residual and y can reach B
  Mask sink(n);
  std::deque<VertexId> queue;
  for (VertexId t : from_mask(in_b)) {
    sink.set(t);
    queue.push_back(t);
  }
  while (!queue.empty()) {
    VertexId y = queue.front();
    queue.pop_front();
    for (int arc : arcs[y]) {
      // arc^1 goes from head[arc] to y
      VertexId x = head[arc];
      if (residual[arc ^ 1] <= 0 || sink.test(x)) continue;
      sink.set(x);
      queue.push_back(x);
    }
  }
  res.sink_side = sink;
  res.witness = make_witness(g, res.source_side);
  return res;
}

int thresholded_mincut(const MultiGraph& g, const VertexSet& a, const VertexSet& b, int c) {
  auto r = max_flow_bounded(g, a, b, c);
  return r.exceeds ? c : std::min(c, r.value);
}

MultiGraph build_graph(int n, const std::vector<WeightedEdge>& edges, const VertexSet& terminals, int c) {
  if (c < 1) throw Error("threshold c must be positive");
  MultiGraph g(n);
  for (const auto& e : edges) {
    if (e.u < 1 || e.u > n || e.v < 1 || e.v > n)
      throw Error("edge endpoint out of range: " + std::to_string(e.u) + " " + std::to_string(e.v));
    if (e.w < 1) throw Error("edge weight must be positive");
    for (int i = 0; i < std::min(e.w, c); ++i) g.add_edge(e.u - 1, e.v - 1);
  }
  for (VertexId t : terminals) {
    if (t < 1 || t > n) throw Error("terminal is not a vertex: " + std::to_string(t));
    g.set_terminal(t - 1);
  }
  return g;
}

TerminalGadget attach_terminal_gadget(const MultiGraph& g, int c) {
  TerminalGadget out{g, {}, {}};
  for (VertexId t : g.terminals()) {
    if (g.degree(t) <= c) continue;
    VertexId t2 = out.graph.add_vertex();
    for (int i = 0; i < c; ++i) out.gadget_edges.push_back(out.graph.add_edge(t, t2));
    out.graph.set_terminal(t, false);
    out.graph.set_terminal(t2, true);
    out.renamed.push_back({t, t2});
  }
  return out;
}

MultiGraph contract_edges(const MultiGraph& g, const EdgeSet& edges) {
  MultiGraph h = g;
  for (EdgeId e : edges) {
    h.check_edge(e);
    if (h.status(e) == EdgeStatus::kDeleted) throw Error("contracting deleted edge " + std::to_string(e));
    h.contract(e);
  }
  return h;
}

namespace {
struct Dsu {
  std::vector<int> p;
  explicit Dsu(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[b] = a;
    return true;
  }
};
}  // namespace

MultiGraph sparse_certificate(const MultiGraph& g, int c) {
  MultiGraph h = g;
  EdgeSet remaining = g.live_edges();
  Mask keep(g.edge_id_count());
  for (int round = 0; round < c && !remaining.empty(); ++round) {
    Dsu dsu(g.id_count());
    EdgeSet rest;
    for (EdgeId e : remaining) {
      auto [u, v] = g.endpoints(e);
      if (dsu.unite(u, v))
        keep.set(e);
      else
        rest.push_back(e);
    }
    remaining = std::move(rest);
  }
  for (EdgeId e : remaining) h.remove_edge(e);
  return h;
}

Subdivision subdivide_edges(const MultiGraph& g, const EdgeSet& edges) {
  Subdivision s{g, {}, {}, {}};
  for (EdgeId e : edges) {
    if (!g.is_live(e)) throw Error("subdividing non-live edge " + std::to_string(e));
    auto [u, v] = g.original_endpoints(e);
    VertexId w = s.graph.add_vertex();
    s.graph.remove_edge(e);
    s.near_edge.push_back(s.graph.add_edge(u, w));
    s.far_edge.push_back(s.graph.add_edge(w, v));
    s.new_vertices.push_back(w);
  }
  return s;
}

namespace {
Rational ratio(int cut, int vol_s, int vol_rest) {
  int denom = std::min(vol_s, vol_rest);
  if (denom == 0) return Rational(0);
  return Rational(cut, denom);
}
}  // namespace

Rational conductance(const MultiGraph& g, const VertexSet& s) {
  Mask in = to_mask(g, s);
  if (in.none() || static_cast<int>(in.count()) == g.num_vertices()) throw Error("conductance: S must be a proper nonempty subset");
  int cut = 0, vol_s = 0, vol_rest = 0;
  for (EdgeId e = 0; e < g.edge_id_count(); ++e) {
    if (g.status(e) == EdgeStatus::kDeleted) continue;
    auto [u, v] = g.endpoints(e);
    int a = in.test(u), b = in.test(v);
    vol_s += a + b;
    vol_rest += 2 - a - b;
    cut += (a != b);
  }
  return ratio(cut, vol_s, vol_rest);
}

Rational graph_conductance_exact(const MultiGraph& g, int limit) {
  VertexSet vs = g.vertices();
  const int n = static_cast<int>(vs.size());
  if (n > limit) throw CapExceeded("graph_conductance_exact: " + std::to_string(n) + " vertices exceeds cap " + std::to_string(limit));
  if (n <= 1) return Rational(1);
  std::vector<int> local(g.id_count(), -1);
  for (int i = 0; i < n; ++i) local[vs[i]] = i;
  std::vector<std::pair<int, int>> es;
  for (EdgeId e = 0; e < g.edge_id_count(); ++e) {
    if (g.status(e) == EdgeStatus::kDeleted) continue;
    auto [u, v] = g.endpoints(e);
    es.push_back({local[u], local[v]});
  }
  std::optional<Rational> best;
  // the last vertex always stays outside S, so each bipartition is visited once
  for (std::uint32_t s = 1; s < (1u << (n - 1)); ++s) {
    int cut = 0, vol_s = 0, vol_rest = 0;
    for (auto [a, b] : es) {
      int x = (s >> a) & 1, y = (s >> b) & 1;
      vol_s += x + y;
      vol_rest += 2 - x - y;
      cut += (x != y);
    }
    Rational r = ratio(cut, vol_s, vol_rest);
    if (!best || r < *best) best = r;
  }
  return *best;
}

std::vector<VertexSet> connected_components(const MultiGraph& g) {
  Adjacency adj(g);
  Mask seen(g.id_count());
  std::vector<VertexSet> out;
  for (VertexId s : g.vertices()) {
    if (seen.test(s)) continue;
    VertexSet comp{s};
    seen.set(s);
    for (size_t i = 0; i < comp.size(); ++i)
      for (auto [y, e] : adj.out[comp[i]])
        if (!seen.test(y)) {
          seen.set(y);
          comp.push_back(y);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

EdgeSet boundary(const MultiGraph& g, const VertexSet& x) {
  Mask in = to_mask(g, x);
  EdgeSet out;
  for (EdgeId e = 0; e < g.edge_id_count(); ++e) {
    if (!g.is_live(e)) continue;
    auto [u, v] = g.endpoints(e);
    if (in.test(u) != in.test(v)) out.push_back(e);
  }
  return out;
}

Subgraph induced_subgraph(const MultiGraph& g, const VertexSet& x) {
  VertexSet reps = resolve(g, x);
  Subgraph s{MultiGraph(static_cast<int>(reps.size())), reps, {}};
  std::vector<int> local(g.id_count(), -1);
  for (size_t i = 0; i < reps.size(); ++i) {
    local[reps[i]] = static_cast<int>(i);
    if (g.is_terminal(reps[i])) s.graph.set_terminal(static_cast<VertexId>(i));
  }
  for (EdgeId e = 0; e < g.edge_id_count(); ++e) {
    if (!g.is_live(e)) continue;
    auto [u, v] = g.endpoints(e);
    if (local[u] < 0 || local[v] < 0) continue;
    s.graph.add_edge(local[u], local[v]);
    s.to_parent_edge.push_back(e);
  }
  return s;
}

}  // namespace cmimic
