#include "cmimic/expander.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#include "cmimic/oracle.hpp"

namespace cmimic {

namespace {

// compact local view of a piece: live non-loop edges only
struct Local {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adj;  // neighbour per incident edge, with repeats
  std::vector<int> deg;
};

Local local_view(const MultiGraph& g, const VertexSet& piece, std::vector<int>& slot) {
  Local l;
  l.n = static_cast<int>(piece.size());
  for (int i = 0; i < l.n; ++i) slot[piece[i]] = i;
  l.adj.assign(l.n, {});
  l.deg.assign(l.n, 0);
  for (EdgeId e = 0; e < g.edge_id_count(); ++e) {
    if (!g.is_live(e)) continue;
    auto [u, v] = g.endpoints(e);
    int a = slot[u], b = slot[v];
    if (a < 0 || b < 0) continue;
    l.edges.push_back({a, b});
    l.adj[a].push_back(b);
    l.adj[b].push_back(a);
    ++l.deg[a];
    ++l.deg[b];
  }
  for (VertexId v : piece) slot[v] = -1;
  return l;
}

struct LowCut {
  std::int64_t cut = 0;
  std::int64_t den = 0;
  std::vector<char> in;
  bool less(std::int64_t c2, std::int64_t d2) const { return c2 * den < cut * d2; }
};

// smallest conductance over all bipartitions; the last vertex stays outside
LowCut exact_low_cut(const Local& l) {
  const std::int64_t total = 2 * static_cast<std::int64_t>(l.edges.size());
  std::vector<char> in(l.n, 0);
  LowCut best{1, 0, {}};
  std::int64_t cut = 0, vol = 0;
  for (std::uint32_t i = 1; i < (1u << (l.n - 1)); ++i) {
    int v = std::countr_zero(i);
    int same = 0, other = 0;
    for (int w : l.adj[v]) (in[w] == in[v] ? same : other) += 1;
    in[v] ^= 1;
    cut += same - other;
    vol += in[v] ? l.deg[v] : -l.deg[v];
    std::int64_t den = std::min(vol, total - vol);
    if (den == 0) continue;
    if (best.den == 0 || best.less(cut, den)) best = {cut, den, in};
  }
  return best;
}

// prefix sweeps over BFS orders from every start vertex
LowCut sweep_low_cut(const Local& l) {
  const std::int64_t total = 2 * static_cast<std::int64_t>(l.edges.size());
  LowCut best{1, 0, {}};
  for (int s = 0; s < l.n; ++s) {
    std::vector<int> order{s};
    std::vector<char> seen(l.n, 0), in(l.n, 0);
    seen[s] = 1;
    for (size_t h = 0; h < order.size(); ++h)
      for (int w : l.adj[order[h]])
        if (!seen[w]) seen[w] = 1, order.push_back(w);
    std::int64_t cut = 0, vol = 0;
    for (size_t p = 0; p + 1 < order.size(); ++p) {
      int v = order[p];
      for (int w : l.adj[v]) cut += in[w] ? -1 : 1;
      in[v] = 1;
      vol += l.deg[v];
      std::int64_t den = std::min(vol, total - vol);
      if (den == 0) continue;
      if (best.den == 0 || best.less(cut, den)) best = {cut, den, in};
    }
  }
  return best;
}

}  // namespace

int volume_bound(int c, Rational phi) {
  if (phi <= 0) throw Error("volume_bound: phi must be positive");
  Rational r = Rational(c) / phi;
  return static_cast<int>((r.numerator() + r.denominator() - 1) / r.denominator());
}

Decomposition expander_decompose(const MultiGraph& g, Rational phi, int exact_limit) {
  if (phi <= 0 || phi > 1) throw Error("expander_decompose: phi must lie in (0, 1]");
  Decomposition d;
  d.target_phi = phi;
  std::vector<int> slot(g.id_count(), -1);
  std::deque<VertexSet> work;
  for (auto& comp : connected_components(g)) work.push_back(comp);
  std::vector<std::pair<VertexSet, char>> done;
  while (!work.empty()) {
    VertexSet x = std::move(work.front());
    work.pop_front();
    if (x.size() <= 1) {
      done.push_back({x, 1});
      continue;
    }
    Local l = local_view(g, x, slot);
    // disconnected pieces have conductance zero; split by component first
    std::vector<int> comp(l.n, -1);
    int ncomp = 0;
    for (int s = 0; s < l.n; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<int> stack{s};
      comp[s] = ncomp;
      while (!stack.empty()) {
        int a = stack.back();
        stack.pop_back();
        for (int b : l.adj[a])
          if (comp[b] < 0) comp[b] = ncomp, stack.push_back(b);
      }
      ++ncomp;
    }
    if (ncomp > 1) {
      std::vector<VertexSet> parts(ncomp);
      for (int i = 0; i < l.n; ++i) parts[comp[i]].push_back(x[i]);
      for (auto& p : parts) work.push_back(std::move(p));
      continue;
    }
    bool exact = l.n <= exact_limit;
    LowCut best = exact ? exact_low_cut(l) : sweep_low_cut(l);
    if (best.den > 0 && Rational(best.cut, best.den) < phi) {
      VertexSet a, b;
      for (int i = 0; i < l.n; ++i) (best.in[i] ? a : b).push_back(x[i]);
      work.push_back(std::move(a));
      work.push_back(std::move(b));
      continue;
    }
    done.push_back({x, exact ? 1 : 0});
  }
  std::sort(done.begin(), done.end());
  std::vector<int> owner(g.id_count(), -1);
  for (size_t i = 0; i < done.size(); ++i) {
    for (VertexId v : done[i].first) owner[v] = static_cast<int>(i);
    d.pieces.push_back(done[i].first);
    d.verified.push_back(done[i].second);
  }
  for (EdgeId e = 0; e < g.edge_id_count(); ++e) {
    if (!g.is_live(e)) continue;
    auto [u, v] = g.endpoints(e);
    if (owner[u] != owner[v]) d.inter_cluster_edges.push_back(e);
  }
  return d;
}

std::vector<CutWitness> enumerate_small_cuts(const MultiGraph& g, int c, int nu, std::optional<VertexId> seed) {
  Adjacency adj(g);
  std::map<EdgeSet, CutWitness> found;
  std::vector<char> removed(g.edge_id_count(), 0);
  std::vector<int> mark(g.id_count(), 0);
  int stamp = 0;

  auto consider = [&](const VertexSet& side) {
    Mask m(g.id_count());
    for (VertexId v : side) m.set(v);
    CutWitness w = make_witness(g, m);
    if (w.edges.empty() || w.value > c) return;
    auto it = found.find(w.edges);
    if (it == found.end()) {
      found.emplace(w.edges, std::move(w));
      return;
    }
    auto& old = it->second.side1;
    if (seed) return;
    if (w.side1.size() < old.size() || (w.side1.size() == old.size() && w.side1 < old)) it->second = std::move(w);
  };

  for (VertexId u : g.vertices()) {
    if (seed && g.find(*seed) != u) continue;
    std::set<EdgeSet> tried;
    EdgeSet chosen;
    // DFS from u in g minus the chosen edges, stopping past nu vertices
    auto grow = [&](auto&& self) -> void {
      ++stamp;
      VertexSet reached{u};
      EdgeSet tree;
      mark[u] = stamp;
      std::vector<VertexId> stack{u};
      bool overflow = false;
      while (!stack.empty() && !overflow) {
        VertexId a = stack.back();
        stack.pop_back();
        for (auto [b, e] : adj.out[a]) {
          if (removed[e] || mark[b] == stamp) continue;
          mark[b] = stamp;
          tree.push_back(e);
          reached.push_back(b);
          stack.push_back(b);
          if (static_cast<int>(reached.size()) > nu) {
            overflow = true;
            break;
          }
        }
      }
      if (!overflow) {
        std::sort(reached.begin(), reached.end());
        consider(reached);
      }
      if (static_cast<int>(chosen.size()) >= c) return;
      // some tree edge crosses any smaller connected side through u
      for (EdgeId e : tree) {
        EdgeSet next = chosen;
        next.insert(std::lower_bound(next.begin(), next.end(), e), e);
        if (!tried.insert(next).second) continue;
        EdgeSet saved = chosen;
        chosen = std::move(next);
        removed[e] = 1;
        self(self);
        removed[e] = 0;
        chosen = std::move(saved);
      }
    };
    grow(grow);
  }
  std::vector<CutWitness> out;
  for (auto& [k, w] : found) out.push_back(std::move(w));
  return out;
}

int CutIndex::alive_cut_count() const {
  return static_cast<int>(std::count(cut_alive.begin(), cut_alive.end(), 1));
}

CutIndex build_cut_index(const MultiGraph& g, int c, const std::vector<CutWitness>& cuts) {
  CutIndex idx;
  idx.cuts_of_edge.assign(g.edge_id_count(), {});
  VertexSet ts = g.terminals();
  if (ts.size() < 2) return idx;
  std::vector<int> tslot(g.id_count(), -1);
  for (size_t i = 0; i < ts.size(); ++i) tslot[ts[i]] = static_cast<int>(i);
  Adjacency adj(g);

  auto connected = [&](const VertexSet& s) {
    if (s.empty()) return false;
    Mask in = to_mask(g, s), seen(g.id_count());
    std::vector<VertexId> stack{s[0]};
    seen.set(s[0]);
    size_t count = 1;
    while (!stack.empty()) {
      VertexId a = stack.back();
      stack.pop_back();
      for (auto [b, e] : adj.out[a])
        if (in.test(b) && !seen.test(b)) seen.set(b), ++count, stack.push_back(b);
    }
    return count == s.size();
  };

  // connected sides holding a terminal, each with its boundary
  struct Side {
    Mask vertices;
    Mask terms;
    EdgeSet boundary;
  };
  std::vector<Side> sides;
  std::set<VertexSet> seen_sides;
  for (const auto& w : cuts) {
    for (const VertexSet* s : {&w.side1, &w.side2}) {
      if (!seen_sides.insert(*s).second || !connected(*s)) continue;
      Side sd{to_mask(g, *s), Mask(ts.size()), boundary(g, *s)};
      for (VertexId v : *s)
        if (tslot[v] >= 0) sd.terms.set(tslot[v]);
      if (sd.terms.any() && static_cast<int>(sd.boundary.size()) <= c) sides.push_back(std::move(sd));
    }
  }

  struct Best {
    int value;
    std::set<EdgeSet> cuts;
  };
  std::map<Mask, Best> by_partition;
  auto record = [&](const Mask& terms, EdgeSet edges) {
    if (terms.all() || terms.none()) return;
    Mask key = terms.test(0) ? terms : ~terms;
    int value = static_cast<int>(edges.size());
    auto it = by_partition.find(key);
    if (it == by_partition.end()) {
      by_partition.emplace(key, Best{value, {std::move(edges)}});
    } else if (value < it->second.value) {
      it->second = Best{value, {std::move(edges)}};
    } else if (value == it->second.value) {
      it->second.cuts.insert(std::move(edges));
    }
  };

  // unions of pairwise non-adjacent sides; their boundaries are disjoint
  std::vector<int> pick;
  auto extend = [&](auto&& self, size_t from, const Mask& verts, const Mask& terms, const EdgeSet& edges) -> void {
    for (size_t i = from; i < sides.size(); ++i) {
      const Side& s = sides[i];
      if (edges.size() + s.boundary.size() > static_cast<size_t>(c)) continue;
      if (verts.intersects(s.vertices)) continue;
      EdgeSet merged;
      std::set_union(edges.begin(), edges.end(), s.boundary.begin(), s.boundary.end(), std::back_inserter(merged));
      if (merged.size() != edges.size() + s.boundary.size()) continue;  // adjacent
      Mask nv = verts | s.vertices, nt = terms | s.terms;
      record(nt, merged);
      self(self, i + 1, nv, nt, merged);
    }
  };
  extend(extend, 0, Mask(g.id_count()), Mask(ts.size()), EdgeSet{});

  for (auto& [key, best] : by_partition) {
    int p = static_cast<int>(idx.partitions.size());
    VertexSet t1, t2;
    for (size_t i = 0; i < ts.size(); ++i) (key.test(i) ? t1 : t2).push_back(ts[i]);
    idx.partitions.push_back({t1, t2});
    idx.partition_value.push_back(best.value);
    idx.live_cuts.push_back(static_cast<int>(best.cuts.size()));
    for (const EdgeSet& es : best.cuts) {
      int id = static_cast<int>(idx.cuts.size());
      idx.cuts.push_back(es);
      idx.cut_partition.push_back(p);
      idx.cut_alive.push_back(1);
      for (EdgeId e : es) idx.cuts_of_edge[e].push_back(id);
    }
  }
  std::set<EdgeId> e0;
  for (const auto& es : idx.cuts) e0.insert(es.begin(), es.end());
  idx.edges.assign(e0.begin(), e0.end());
  return idx;
}

bool is_contractible(const CutIndex& index, EdgeId e) {
  if (e < 0 || e >= static_cast<int>(index.cuts_of_edge.size())) return true;
  std::map<int, int> lost;
  for (int id : index.cuts_of_edge[e])
    if (index.cut_alive[id]) ++lost[index.cut_partition[id]];
  for (auto [p, n] : lost)
    if (index.live_cuts[p] - n <= 0) return false;
  return true;
}

bool contract_edge_and_update(MultiGraph& g, CutIndex& index, EdgeId e) {
  g.check_edge(e);
  if (!g.is_live(e)) throw Error("contract_edge_and_update: edge " + std::to_string(e) + " is not live");
  if (!is_contractible(index, e)) return false;
  if (e < static_cast<int>(index.cuts_of_edge.size()))
    for (int id : index.cuts_of_edge[e])
      if (index.cut_alive[id]) {
        index.cut_alive[id] = 0;
        --index.live_cuts[index.cut_partition[id]];
      }
  g.contract(e);
  return true;
}

Rational PhiPolicy::resolve(int n, int c) const {
  if (mode == Mode::kFixed) {
    if (fixed <= 0 || fixed > 1) throw Error("phi must lie in (0, 1]");
    return fixed;
  }
  std::int64_t lg = n <= 2 ? 1 : static_cast<std::int64_t>(std::ceil(std::log2(static_cast<double>(n))));
  std::int64_t c4 = static_cast<std::int64_t>(c) * c * c * c;
  return Rational(1, 4 * c_prime * c4 * lg * lg * lg);
}

namespace {

// phi-sparsify one connected graph in place; returns contracted edge ids
EdgeSet sparsify_connected(MultiGraph& h, int c, Rational phi, const SparsifyOptions& opts,
                           std::vector<std::pair<std::string, std::int64_t>>& stats) {
  const int n = h.num_vertices();
  int nu = n - 1;
  if (opts.certified) nu = std::min(nu, volume_bound(c, phi));
  auto cuts = enumerate_small_cuts(h, c, nu);
  CutIndex idx = build_cut_index(h, c, cuts);
  VertexSet ts = h.terminals();
  bool check = opts.paranoid && ts.size() <= 12;
  int disagreements = 0;
  EdgeSet contracted;
  for (EdgeId e : h.live_edges()) {
    if (!h.is_live(e)) continue;
    if (check) {
      MultiGraph trial = h;
      trial.contract(e);
      bool safe = tc_equivalent(h, trial, ts, c).equivalent;
      if (!safe && is_contractible(idx, e)) ++disagreements;
      if (!safe) continue;
    }
    if (contract_edge_and_update(h, idx, e)) contracted.push_back(e);
  }
  auto add = [&](const std::string& k, std::int64_t v) {
    for (auto& [name, val] : stats)
      if (name == k) {
        val += v;
        return;
      }
    stats.push_back({k, v});
  };
  add("enumerated_cuts", static_cast<std::int64_t>(cuts.size()));
  add("index_partitions", static_cast<std::int64_t>(idx.partitions.size()));
  add("index_cuts", static_cast<std::int64_t>(idx.cuts.size()));
  add("contracted", static_cast<std::int64_t>(contracted.size()));
  add("max_nu", 0);
  for (auto& [name, val] : stats)
    if (name == "max_nu") val = std::max<std::int64_t>(val, nu);
  if (check) add("paranoid_disagreements", disagreements);
  return contracted;
}

}  // namespace

SparsifierResult phi_sparsify(const MultiGraph& g, int c, Rational phi, const SparsifyOptions& opts) {
  MultiGraph h = g;
  std::vector<std::pair<std::string, std::int64_t>> stats;
  for (const auto& comp : connected_components(g)) {
    if (comp.size() < 2) continue;
    Subgraph sub = induced_subgraph(g, comp);
    for (EdgeId e : sparsify_connected(sub.graph, c, phi, opts, stats)) h.contract(sub.to_parent_edge[e]);
  }
  SparsifierResult res = make_result(h, g.id_count(), g.edge_id_count());
  res.metrics = std::move(stats);
  res.metrics.push_back({"remaining_edges", h.live_edge_count()});
  return res;
}

SparsifierResult efficient_poly_sized(const MultiGraph& g, int c, const EfficientOptions& opts) {
  MultiGraph h = g;
  const int n0 = std::max(g.num_vertices(), 2);
  const int cap = static_cast<int>(std::floor(std::log2(static_cast<double>(n0)))) + 5;
  std::vector<std::int64_t> trace{h.live_edge_count()};
  int passes = 0, unverified = 0, pieces = 0;
  std::vector<std::pair<std::string, std::int64_t>> stats;
  Rational phi;
  while (passes < cap) {
    ++passes;
    phi = opts.phi.resolve(h.num_vertices(), c);
    Decomposition d = expander_decompose(h, phi, opts.exact_limit);
    pieces = static_cast<int>(d.pieces.size());
    unverified = static_cast<int>(std::count(d.verified.begin(), d.verified.end(), 0));
    Mask promoted(h.id_count());
    for (EdgeId e : d.inter_cluster_edges) {
      auto [u, v] = h.endpoints(e);
      promoted.set(u);
      promoted.set(v);
    }
    MultiGraph next = h;
    for (size_t i = 0; i < d.pieces.size(); ++i) {
      const VertexSet& x = d.pieces[i];
      if (x.size() < 2) continue;
      Subgraph sub = induced_subgraph(h, x);
      for (size_t j = 0; j < x.size(); ++j)
        if (promoted.test(x[j])) sub.graph.set_terminal(static_cast<VertexId>(j));
      SparsifyOptions so{static_cast<bool>(d.verified[i]), opts.paranoid};
      for (EdgeId e : sparsify_connected(sub.graph, c, phi, so, stats)) next.contract(sub.to_parent_edge[e]);
    }
    std::int64_t before = h.live_edge_count(), after = next.live_edge_count();
    h = std::move(next);
    trace.push_back(after);
    if (after >= before) break;
  }
  SparsifierResult res = make_result(h, g.id_count(), g.edge_id_count());
  res.trace = std::move(trace);
  res.metrics = std::move(stats);
  res.metrics.push_back({"passes", passes});
  res.metrics.push_back({"pieces", pieces});
  res.metrics.push_back({"unverified_pieces", unverified});
  res.metrics.push_back({"phi_inverse", phi.denominator() / std::max<std::int64_t>(phi.numerator(), 1)});
  return res;
}

}  // namespace cmimic
