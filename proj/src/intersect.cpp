#include "cmimic/intersect.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cmimic {

namespace {

void add_edges(IntersectingSet& out, const EdgeSet& es, const char* tag) {
  EdgeSet merged;
  std::set_union(out.edges.begin(), out.edges.end(), es.begin(), es.end(), std::back_inserter(merged));
  out.edges = std::move(merged);
  for (EdgeId e : es) out.provenance.emplace(e, tag);
}

void absorb(IntersectingSet& out, const IntersectingSet& r) {
  EdgeSet merged;
  std::set_union(out.edges.begin(), out.edges.end(), r.edges.begin(), r.edges.end(), std::back_inserter(merged));
  out.edges = std::move(merged);
  for (const auto& [e, tag] : r.provenance) out.provenance.emplace(e, tag);
  out.branches += r.branches;
  out.isolating_rounds += r.isolating_rounds;
  out.local_cut_calls += r.local_cut_calls;
  out.monotone_violations += r.monotone_violations;
}

bool connected_within(const MultiGraph& g, const VertexSet& s) {
  if (s.empty()) return false;
  Adjacency adj(g);
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
}

VertexSet terminals_in(const VertexSet& side, const VertexSet& ts) {
  VertexSet out;
  std::set_intersection(side.begin(), side.end(), ts.begin(), ts.end(), std::back_inserter(out));
  return out;
}

VertexId collapse(MultiGraph& g, const VertexSet& side) {
  for (size_t i = 1; i < side.size(); ++i) g.merge(side[0], side[i]);
  return g.find(side[0]);
}

// G / V_other with the contracted vertex joining the kept terminals
std::pair<MultiGraph, VertexSet> shrink(const MultiGraph& g, const VertexSet& keep, const VertexSet& other,
                                        const VertexSet& ts) {
  MultiGraph h = g;
  VertexId v = collapse(h, other);
  VertexSet t = terminals_in(keep, ts);
  t.push_back(v);
  return {std::move(h), resolve(h, t)};
}

// min cut of every terminal bipartition, kept when at most c
void partition_cuts(const MultiGraph& g, const VertexSet& ts, int c, IntersectingSet& out) {
  const int k = static_cast<int>(ts.size());
  for (std::uint32_t mask = 0; k >= 2 && mask < (1u << (k - 1)); ++mask) {
    VertexSet a{ts[0]}, b;
    for (int i = 1; i < k; ++i) ((mask >> (i - 1)) & 1 ? a : b).push_back(ts[i]);
    if (b.empty()) continue;
    auto r = max_flow_bounded(g, a, b, c);
    if (!r.exceeds) add_edges(out, r.witness->edges, "partition");
  }
}

// runs fn on each component holding two or more terminals, in local ids
template <class Fn>
IntersectingSet by_component(const MultiGraph& g, const VertexSet& terminals, Fn fn) {
  VertexSet ts = resolve(g, terminals);
  IntersectingSet out;
  for (const VertexSet& comp : connected_components(g)) {
    VertexSet local_t;
    Subgraph sub = induced_subgraph(g, comp);
    sub.graph.clear_terminals();
    for (size_t i = 0; i < sub.to_parent_vertex.size(); ++i)
      if (std::binary_search(ts.begin(), ts.end(), sub.to_parent_vertex[i])) {
        local_t.push_back(static_cast<VertexId>(i));
        sub.graph.set_terminal(static_cast<VertexId>(i));
      }
    if (local_t.size() < 2) continue;
    IntersectingSet r = fn(sub.graph, local_t);
    IntersectingSet mapped;
    mapped.branches = r.branches;
    mapped.isolating_rounds = r.isolating_rounds;
    mapped.local_cut_calls = r.local_cut_calls;
    mapped.monotone_violations = r.monotone_violations;
    EdgeSet es;
    for (EdgeId e : r.edges) es.push_back(sub.to_parent_edge[e]);
    std::sort(es.begin(), es.end());
    mapped.edges = es;
    for (const auto& [e, tag] : r.provenance) mapped.provenance.emplace(sub.to_parent_edge[e], tag);
    absorb(out, mapped);
  }
  return out;
}

void nontrivial_rec(const MultiGraph& g, VertexSet ts, int c, IntersectingSet& out) {
  ts = resolve(g, ts);
  if (ts.size() <= 4) {
    partition_cuts(g, ts, c, out);
    return;
  }
  // complete enumeration: every cut with a connected side
  const CutWitness* pick = nullptr;
  auto cuts = enumerate_small_cuts(g, c, g.num_vertices() - 1);
  for (const auto& w : cuts) {
    if (terminals_in(w.side1, ts).size() < 2 || terminals_in(w.side2, ts).size() < 2) continue;
    if (!connected_within(g, w.side2)) continue;
    if (!pick || w.value < pick->value || (w.value == pick->value && w.edges < pick->edges)) pick = &w;
  }
  if (pick) {
    ++out.branches;
    add_edges(out, pick->edges, "nontrivial");
    auto [g1, t1] = shrink(g, pick->side1, pick->side2, ts);
    nontrivial_rec(g1, t1, c, out);
    auto [g2, t2] = shrink(g, pick->side2, pick->side1, ts);
    nontrivial_rec(g2, t2, c, out);
    return;
  }
  for (VertexId s : ts) {
    VertexSet rest;
    for (VertexId t : ts)
      if (t != s) rest.push_back(t);
    auto r = max_flow_bounded(g, {s}, rest, c);
    if (!r.exceeds) add_edges(out, r.witness->edges, "isolating");
  }
}

bool merged_with_other(const MultiGraph& g, VertexId s, const VertexSet& ts) {
  for (VertexId t : ts)
    if (t != s && g.find(t) == g.find(s)) return true;
  return false;
}

// repeated contraction across the maximal s-isolating cut of value x
void isolate_and_contract(MultiGraph& g, VertexId s, const VertexSet& ts, int c, int x, bool single_flow,
                          IntersectingSet& out) {
  EdgeSet last;
  while (true) {
    auto cut = maximal_isolating_cut(g, g.find(s), resolve(g, ts), c);
    if (!cut || cut->value != x) break;
    last = cut->edges;
    ++out.isolating_rounds;
    collapse(g, cut->side1);
    for (EdgeId e : cut->edges)
      if (g.is_live(e)) g.contract(e);
    if (merged_with_other(g, s, ts) || single_flow) break;
  }
  add_edges(out, last, "isolating");
}

void terminal_rec(MultiGraph g, VertexSet ts, int c, bool single_flow, IntersectingSet& out);

// shared tail of the slow and fast terminal-cut drivers once a minimum terminal cut is known;
// returns true when the caller should stop
template <class Recurse>
bool handle_min_cut(MultiGraph& g, const VertexSet& ts, int c, const CutWitness& w, bool single_flow,
                    IntersectingSet& out, Recurse recurse) {
  VertexSet t1 = terminals_in(w.side1, ts), t2 = terminals_in(w.side2, ts);
  if (t1.size() >= 2 && t2.size() >= 2) {
    ++out.branches;
    add_edges(out, w.edges, "nontrivial");
    auto [g1, n1] = shrink(g, w.side1, w.side2, ts);
    recurse(std::move(g1), n1);
    auto [g2, n2] = shrink(g, w.side2, w.side1, ts);
    recurse(std::move(g2), n2);
    return true;
  }
  VertexId s = t1.size() == 1 ? t1[0] : t2[0];
  isolate_and_contract(g, s, ts, c, w.value, single_flow, out);
  return false;
}

void terminal_rec(MultiGraph g, VertexSet ts, int c, bool single_flow, IntersectingSet& out) {
  while (true) {
    ts = resolve(g, ts);
    if (ts.size() <= 4) {
      partition_cuts(g, ts, c, out);
      return;
    }
    auto w = min_terminal_cut(g, ts, c);
    if (!w) return;
    bool stop = handle_min_cut(g, ts, c, *w, single_flow, out, [&](MultiGraph h, const VertexSet& t) {
      terminal_rec(std::move(h), t, c, single_flow, out);
    });
    if (stop) return;
  }
}

// smallest cut with a connected side through s of at most nu vertices and a
// terminal on the far side
std::optional<CutWitness> local_terminal_cut(const MultiGraph& g, VertexId s, const VertexSet& ts, int c, int nu) {
  std::optional<CutWitness> best;
  for (auto& w : enumerate_small_cuts(g, c, nu, s)) {
    if (terminals_in(w.side2, ts).empty()) continue;
    if (!best || w.value < best->value || (w.value == best->value && w.edges < best->edges)) best = std::move(w);
  }
  return best;
}

void fast_rec(MultiGraph g, VertexSet ts, int c, const IntersectOptions& opts, IntersectingSet& out) {
  const Rational limit = Rational(opts.fast_constant * c * c) / opts.phi;
  std::map<VertexId, int> bound;  // lower bounds on the local cut value, keyed by vertex id
  while (true) {
    ts = resolve(g, ts);
    if (ts.size() <= 4) {
      partition_cuts(g, ts, c, out);
      return;
    }
    if (Rational(static_cast<std::int64_t>(ts.size())) <= limit) {
      terminal_rec(std::move(g), ts, c, true, out);
      return;
    }
    int nu = g.num_vertices() - 1;
    if (opts.certified) nu = std::min(nu, volume_bound(c, opts.phi));
    // merged terminals inherit the larger bound: a cut for the merged class serves both
    std::map<VertexId, int> cur;
    for (auto [v, b] : bound) {
      VertexId r = g.find(v);
      if (std::binary_search(ts.begin(), ts.end(), r)) cur[r] = std::max(cur[r], b);
    }
    for (VertexId t : ts) cur.emplace(t, 0);
    bound = cur;
    std::optional<CutWitness> chosen;
    while (true) {
      auto it = std::min_element(bound.begin(), bound.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second < b.second : a.first < b.first;
      });
      VertexId s = it->first;
      ++out.local_cut_calls;
      auto w = local_terminal_cut(g, s, ts, c, nu);
      int value = w ? w->value : c + 1;
      if (value < it->second) ++out.monotone_violations;
      if (value <= it->second) {
        chosen = std::move(w);
        break;
      }
      it->second = value;
      if (value > c && std::all_of(bound.begin(), bound.end(), [&](const auto& p) { return p.second > c; })) break;
    }
    if (!chosen) return;
    bool stop = handle_min_cut(g, ts, c, *chosen, true, out, [&](MultiGraph h, const VertexSet& t) {
      fast_rec(std::move(h), t, c, opts, out);
    });
    if (stop) return;
  }
}

}  // namespace

std::optional<CutWitness> min_terminal_cut(const MultiGraph& g, const VertexSet& terminals, int c) {
  VertexSet ts = resolve(g, terminals);
  if (ts.size() < 2) throw Error("min_terminal_cut: need at least two terminals");
  std::optional<CutWitness> best;
  for (size_t i = 1; i < ts.size(); ++i) {
    auto r = max_flow_bounded(g, {ts[0]}, {ts[i]}, c);
    if (r.exceeds) continue;
    CutWitness& w = *r.witness;
    if (!best || w.value < best->value || (w.value == best->value && w.edges < best->edges)) best = std::move(w);
  }
  return best;
}

std::optional<CutWitness> maximal_isolating_cut(const MultiGraph& g, VertexId s, const VertexSet& terminals, int c) {
  VertexSet ts = resolve(g, terminals);
  VertexId rs = g.find(s);
  if (!std::binary_search(ts.begin(), ts.end(), rs)) throw Error("maximal_isolating_cut: s is not a terminal");
  VertexSet rest;
  for (VertexId t : ts)
    if (t != rs) rest.push_back(t);
  if (rest.empty()) return std::nullopt;
  auto r = max_flow_bounded(g, {rs}, rest, c);
  if (r.exceeds) return std::nullopt;
  // everything that cannot reach the other terminals stays with s
  Mask side(g.id_count());
  for (VertexId v : g.vertices())
    if (!r.sink_side.test(v)) side.set(v);
  return make_witness(g, side);
}

std::optional<LocalCut> local_cut(const MultiGraph& g, VertexId v, int c, int nu) {
  VertexId rv = g.find(v);
  if (nu < g.degree(rv)) throw Error("local_cut: volume bound below deg(v)");
  int total = 0;
  for (VertexId x : g.vertices()) total += g.degree(x);
  std::optional<LocalCut> best;
  auto offer = [&](CutWitness w) {
    int vol = 0;
    for (VertexId x : w.side1) vol += g.degree(x);
    if (vol > nu || vol > total - vol) return;
    if (!best || w.value < best->value || (w.value == best->value && w.edges < best->witness.edges))
      best = LocalCut{w.value, std::move(w)};
  };
  // a value 0 cut exists only when v's component is a proper part
  for (const VertexSet& comp : connected_components(g))
    if (std::binary_search(comp.begin(), comp.end(), rv) && static_cast<int>(comp.size()) < g.num_vertices())
      offer(make_witness(g, to_mask(g, comp)));
  for (auto& w : enumerate_small_cuts(g, c, nu, rv)) offer(std::move(w));
  return best;
}

IntersectingSet recursive_nontrivial_cuts(const MultiGraph& g, const VertexSet& terminals, int c) {
  return by_component(g, terminals, [&](const MultiGraph& h, const VertexSet& ts) {
    IntersectingSet out;
    nontrivial_rec(h, ts, c, out);
    return out;
  });
}

IntersectingSet recursive_terminal_cuts(const MultiGraph& g, const VertexSet& terminals, int c, bool sparse_top) {
  const MultiGraph& base = g;
  MultiGraph cert;
  if (sparse_top) cert = sparse_certificate(g, c);
  return by_component(sparse_top ? cert : base, terminals, [&](const MultiGraph& h, const VertexSet& ts) {
    IntersectingSet out;
    terminal_rec(h, ts, c, false, out);
    return out;
  });
}

IntersectingSet recursive_terminal_cuts_fast(const MultiGraph& g, const VertexSet& terminals, int c,
                                             const IntersectOptions& opts) {
  if (opts.phi <= 0 || opts.phi > 1) throw Error("recursive_terminal_cuts_fast: phi must lie in (0, 1]");
  return by_component(g, terminals, [&](const MultiGraph& h, const VertexSet& ts) {
    IntersectingSet out;
    fast_rec(h, ts, c, opts, out);
    return out;
  });
}

ContainingSet get_containing_edges(const MultiGraph& g, const VertexSet& terminals, int c, IntersectStrategy strategy,
                                   const IntersectOptions& opts) {
  ContainingSet out;
  MultiGraph h = g;
  VertexSet ts = resolve(g, terminals);
  for (int cc = c; cc >= 1; --cc) {
    IntersectingSet r;
    switch (strategy) {
      case IntersectStrategy::kNontrivial: r = recursive_nontrivial_cuts(h, ts, cc); break;
      case IntersectStrategy::kTerminal: r = recursive_terminal_cuts(h, ts, cc, false); break;
      case IntersectStrategy::kTerminalFast: r = recursive_terminal_cuts_fast(h, ts, cc, opts); break;
    }
    std::string round = "round " + std::to_string(cc) + ": ";
    for (const auto& [e, tag] : r.provenance) out.provenance.emplace(e, round + tag);
    EdgeSet merged;
    std::set_union(out.edges.begin(), out.edges.end(), r.edges.begin(), r.edges.end(), std::back_inserter(merged));
    out.edges = std::move(merged);
    VertexSet grown = ts;
    for (EdgeId e : out.edges) {
      auto [u, v] = h.endpoints(e);
      grown.push_back(u);
      grown.push_back(v);
      if (h.is_live(e)) h.remove_edge(e);
    }
    ts = resolve(h, grown);
    out.round_sizes.push_back(static_cast<int>(out.edges.size()));
  }
  return out;
}

SparsifierResult contract_to_sparsifier(const MultiGraph& g, const EdgeSet& e_con) {
  MultiGraph h = g;
  for (EdgeId e : g.live_edges())
    if (!std::binary_search(e_con.begin(), e_con.end(), e) && h.is_live(e)) h.contract(e);
  auto res = make_result(h, g.id_count(), g.edge_id_count());
  res.metrics.push_back({"containing_edges", static_cast<std::int64_t>(e_con.size())});
  return res;
}

Rational ContainmentOptions::resolve(int n, int c) const {
  if (mode == Mode::kFixed) {
    if (fixed <= 0 || fixed > 1) throw Error("phi must lie in (0, 1]");
    return fixed;
  }
  std::int64_t lg = n <= 2 ? 1 : static_cast<std::int64_t>(std::ceil(std::log2(static_cast<double>(n))));
  std::int64_t inv = 5 * c;
  for (int i = 0; i < c; ++i) inv *= 4 * c_int;
  std::int64_t fact = 1;
  for (int i = 2; i <= c; ++i) fact *= i;
  inv *= fact * fact * lg * lg * lg * lg;
  return Rational(1, inv);
}

SparsifierResult mimicking_via_containment(const MultiGraph& g, int c, const ContainmentOptions& opts) {
  const VertexSet terminals = g.terminals();
  MultiGraph h = g;
  const int n0 = std::max(g.num_vertices(), 2);
  const int cap = static_cast<int>(std::floor(std::log2(static_cast<double>(n0)))) + 5;
  std::vector<std::int64_t> trace{h.num_vertices()};
  int passes = 0, pieces = 0, unverified = 0;
  std::int64_t last_containing = 0;
  while (passes < cap) {
    ++passes;
    MultiGraph cert = sparse_certificate(h, c);
    Rational phi = opts.resolve(cert.num_vertices(), c);
    Decomposition d = expander_decompose(cert, phi, opts.exact_limit);
    pieces = static_cast<int>(d.pieces.size());
    unverified = static_cast<int>(std::count(d.verified.begin(), d.verified.end(), 0));
    EdgeSet e_con = d.inter_cluster_edges;
    VertexSet promoted = resolve(cert, terminals);
    for (EdgeId e : d.inter_cluster_edges) {
      auto [u, v] = cert.endpoints(e);
      promoted.push_back(u);
      promoted.push_back(v);
    }
    promoted = resolve(cert, promoted);
    for (size_t i = 0; i < d.pieces.size(); ++i) {
      const VertexSet& x = d.pieces[i];
      Subgraph sub = induced_subgraph(cert, x);
      VertexSet local_t;
      for (size_t j = 0; j < x.size(); ++j)
        if (std::binary_search(promoted.begin(), promoted.end(), x[j])) local_t.push_back(static_cast<VertexId>(j));
      if (local_t.size() < 2) continue;
      IntersectOptions io{phi, static_cast<bool>(d.verified[i]), opts.fast_constant};
      auto con = get_containing_edges(sub.graph, local_t, c, IntersectStrategy::kTerminalFast, io);
      for (EdgeId e : con.edges) e_con.push_back(sub.to_parent_edge[e]);
    }
    std::sort(e_con.begin(), e_con.end());
    e_con.erase(std::unique(e_con.begin(), e_con.end()), e_con.end());
    last_containing = static_cast<std::int64_t>(e_con.size());
    MultiGraph next = contract_to_sparsifier(cert, e_con).graph;
    trace.push_back(next.num_vertices());
    bool shrank = next.num_vertices() < h.num_vertices() || next.live_edge_count() < h.live_edge_count();
    h = std::move(next);
    if (!shrank) break;
  }
  SparsifierResult res = make_result(h, g.id_count(), g.edge_id_count());
  res.trace = std::move(trace);
  res.metrics = {{"passes", passes},
                 {"pieces", pieces},
                 {"unverified_pieces", unverified},
                 {"containing_edges", last_containing}};
  return res;
}

}  // namespace cmimic
