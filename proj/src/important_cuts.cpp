#include "cmimic/important_cuts.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "cmimic/welllinked.hpp"

namespace cmimic {

namespace {

Mask all_reps(const MultiGraph& g) {
  Mask m(g.id_count());
  for (VertexId v : g.vertices()) m.set(v);
  return m;
}

Mask terminal_mask(const MultiGraph& g) {
  Mask m(g.id_count());
  for (VertexId v : g.terminals()) m.set(v);
  return m;
}

int cut_value(const MultiGraph& g, const Mask& side) {
  int cut = 0;
  for (EdgeId e = 0; e < g.edge_id_count(); ++e) {
    if (!g.is_live(e)) continue;
    auto [u, v] = g.endpoints(e);
    cut += side.test(u) != side.test(v);
  }
  return cut;
}

// q0 inside, q1 outside, terminal counts and budget
bool valid_side(const MultiGraph& g, const Mask& q0, const Mask& q1, int c0, int c1, int ell, const Mask& side0) {
  if (!q0.is_subset_of(side0) || q1.intersects(side0)) return false;
  Mask t = terminal_mask(g);
  Mask side1 = all_reps(g) - side0;
  if (static_cast<int>((t & side0).count()) < c0 || static_cast<int>((t & side1).count()) < c1) return false;
  return cut_value(g, side0) <= ell;
}

std::vector<Mask> important_impl(const MultiGraph& g, const Mask& x, const Mask& y, int k) {
  Mask all = all_reps(g);
  if (y.none()) return {all};
  std::set<VertexSet> candidates;
  VertexSet ys = from_mask(y);
  std::function<void(const Mask&, const MultiGraph&, int)> rec = [&](const Mask& xs, const MultiGraph& cur,
                                                                      int budget) {
    auto r = max_flow_bounded(cur, from_mask(xs), ys, budget);
    if (r.exceeds) return;
    Mask big = all - r.sink_side;  // the furthest minimum cut from X
    candidates.insert(from_mask(big));
    for (EdgeId e = 0; e < cur.edge_id_count(); ++e) {
      if (!cur.is_live(e)) continue;
      auto [u, v] = cur.endpoints(e);
      if (big.test(u) == big.test(v)) continue;
      if (big.test(v)) std::swap(u, v);
      if (!y.test(v)) {
        Mask grown = big;
        grown.set(v);
        rec(grown, cur, budget);
      }
      if (budget >= 1) {
        MultiGraph less = cur;
        less.remove_edge(e);
        rec(big, less, budget - 1);
      }
      return;
    }
  };
  rec(x, g, k);
  std::vector<Mask> out;
  for (const auto& s : candidates) {
    Mask sm = to_mask(g, s);
    int b = cut_value(g, sm);
    if (b > k) continue;
    bool important = true;
    for (VertexId v : from_mask(all - sm - y)) {
      VertexSet grown = s;
      grown.push_back(v);
      if (!max_flow_bounded(g, grown, ys, b).exceeds) {
        important = false;
        break;
      }
    }
    if (important) out.push_back(sm);
  }
  return out;
}

struct CutInfo {
  Mask side;
  Mask terms;
  int tcount;
  int bsize;
};

class ConstrainedSolver {
 public:
  std::optional<Mask> solve(const MultiGraph& g, const Mask& q0, const Mask& q1, int c0, int c1, int ell) {
    if (ell < 0 || q0.intersects(q1)) return std::nullopt;
    if (c0 == 0 && c1 == 0) return plain(g, q0, q1, ell);
    if (c1 == 0) return base(g, q0, q1, c0, ell);
    if (c0 == 0) {
      auto r = base(g, q1, q0, c1, ell);
      if (!r) return std::nullopt;
      return all_reps(g) - *r;
    }
    Mask t = terminal_mask(g);
    if (static_cast<int>(t.count()) < c0 + c1) return std::nullopt;
    // cheapest cut with a terminal on each side
    std::optional<Mask> best;
    int best_value = ell + 1;
    VertexSet q0s = from_mask(q0), q1s = from_mask(q1);
    for (VertexId t0 : from_mask(t - q1)) {
      for (VertexId t1 : from_mask(t - q0)) {
        if (t0 == t1 || best_value == 0) continue;
        VertexSet a = q0s, b = q1s;
        a.push_back(t0);
        b.push_back(t1);
        auto r = max_flow_bounded(g, a, b, best_value - 1);
        if (r.exceeds) continue;
        best_value = r.value;
        best = r.source_side;
      }
    }
    if (!best) return std::nullopt;
    Mask side0 = *best;
    Mask side1 = all_reps(g) - side0;
    int t0 = static_cast<int>((t & side0).count()), t1 = static_cast<int>((t & side1).count());
    if (t0 >= c0 && t1 >= c1) return side0;
    if (t0 < c0) return reduce(g, side0, q0, q1, c0, c1, ell);
    auto r = reduce(g, side1, q1, q0, c1, c0, ell);
    if (!r) return std::nullopt;
    return all_reps(g) - *r;
  }

  std::optional<Mask> plain(const MultiGraph& g, const Mask& q0, const Mask& q1, int ell) {
    if (ell < 0 || q0.intersects(q1)) return std::nullopt;
    if (q1.none()) return all_reps(g);
    if (q0.none()) return Mask(g.id_count());
    auto r = max_flow_bounded(g, from_mask(q0), from_mask(q1), ell);
    if (r.exceeds) return std::nullopt;
    return r.source_side;
  }

  // Side 0 holds `part` of a cheapest terminal-separating cut but too few terminals.
  std::optional<Mask> reduce(const MultiGraph& g, const Mask& part, const Mask& q0, const Mask& q1, int c0, int c1,
                             int ell) {
    Mask all = all_reps(g);
    Mask rest = all - part;
    Mask t = terminal_mask(g);
    EdgeSet crossing;
    Mask touched = t & part;
    for (EdgeId e = 0; e < g.edge_id_count(); ++e) {
      if (!g.is_live(e)) continue;
      auto [u, v] = g.endpoints(e);
      if (part.test(u) == part.test(v)) continue;
      crossing.push_back(e);
      touched.set(u);
      touched.set(v);
    }
    VertexSet free = from_mask(touched - q0 - q1);
    if (free.size() > 20) throw CapExceeded("constrained_cut: too many boundary vertices to guess");
    Subgraph sub_p = induced_subgraph(g, from_mask(part));
    Subgraph sub_r = induced_subgraph(g, from_mask(rest));
    std::vector<int> local(g.id_count(), -1);
    for (size_t i = 0; i < sub_p.to_parent_vertex.size(); ++i) local[sub_p.to_parent_vertex[i]] = static_cast<int>(i);
    for (size_t i = 0; i < sub_r.to_parent_vertex.size(); ++i) local[sub_r.to_parent_vertex[i]] = static_cast<int>(i);
    const int np = sub_p.graph.id_count(), nr = sub_r.graph.id_count();

    for (std::uint32_t guess = 0; guess < (1u << free.size()); ++guess) {
      Mask zero = q0 & touched, one = q1 & touched;
      for (size_t i = 0; i < free.size(); ++i) ((guess >> i) & 1 ? one : zero).set(free[i]);
      int cut_cross = 0;
      for (EdgeId e : crossing) {
        auto [u, v] = g.endpoints(e);
        cut_cross += zero.test(u) != zero.test(v);
      }
      int budget = ell - cut_cross;
      if (budget < 0) continue;
      int tz = static_cast<int>((t & part & zero).count()), to = static_cast<int>((t & part & one).count());
      // inner cut on the deficient part
      Mask src(np), snk(np);
      for (VertexId v : from_mask((q0 | zero) & part)) src.set(local[v]);
      for (VertexId v : from_mask(one & part)) snk.set(local[v]);
      auto inner = plain(sub_p.graph, src, snk, budget);
      if (!inner) continue;
      int used = cut_value(sub_p.graph, *inner);
      Mask rq0(nr), rq1(nr);
      for (VertexId v : from_mask(zero & rest)) rq0.set(local[v]);
      for (VertexId v : from_mask((one | q1) & rest)) rq1.set(local[v]);
      auto sub = solve(sub_r.graph, rq0, rq1, std::max(c0 - tz, 0), std::max(c1 - to, 0), budget - used);
      if (!sub) continue;
      Mask side0(g.id_count());
      for (VertexId v : from_mask(*inner)) side0.set(sub_p.to_parent_vertex[v]);
      for (VertexId v : from_mask(*sub)) side0.set(sub_r.to_parent_vertex[v]);
      if (valid_side(g, q0, q1, c0, c1, ell, side0)) return side0;
    }
    return std::nullopt;
  }

  // A0 needs c_req terminals; the side of q1 needs none.
  std::optional<Mask> base(const MultiGraph& g, const Mask& q0, const Mask& q1, int creq, int ell) {
    if (ell < 0 || q0.intersects(q1)) return std::nullopt;
    if (creq == 0) return plain(g, q0, q1, ell);
    Mask all = all_reps(g);
    Mask avail = terminal_mask(g) - q1;
    if (static_cast<int>(avail.count()) < creq) return std::nullopt;
    // connect q0 with auxiliary edges; they never cross because q0 stays on one side
    MultiGraph aux = g;
    VertexSet q0s = from_mask(q0);
    for (size_t i = 1; i < q0s.size(); ++i) aux.add_edge(q0s[0], q0s[i]);
    auto info = [&](const Mask& side) {
      Mask terms = side & avail;
      return CutInfo{side, terms, static_cast<int>(terms.count()), cut_value(aux, side)};
    };
    auto accept = [&](const Mask& side) { return valid_side(g, q0, q1, creq, 0, ell, side); };

    std::vector<CutInfo> c0s;
    if (q0.none())
      c0s.push_back(info(Mask(g.id_count())));
    else
      for (const auto& m : important_impl(aux, q0, q1, ell)) c0s.push_back(info(m));
    std::vector<CutInfo> cs;
    {
      std::set<VertexSet> seen;
      for (VertexId t : from_mask(avail - q0)) {
        Mask x(g.id_count());
        x.set(t);
        for (const auto& m : important_impl(aux, x, q1, ell))
          if (seen.insert(from_mask(m)).second) cs.push_back(info(m));
      }
    }
    for (const auto& c0 : c0s)
      if (c0.tcount >= creq && accept(c0.side)) return c0.side;
    for (const auto& c0 : c0s)
      for (const auto& c1 : cs) {
        if (c0.terms.intersects(c1.terms) || c0.tcount + c1.tcount < creq) continue;
        Mask u = c0.side | c1.side;
        if (accept(u)) return u;
      }
    // cut profiles: slots (kappa, ell_i), kept minimal so no slot is redundant
    for (const auto& c0 : c0s) {
      int need = creq - c0.tcount;
      int budget = ell - c0.bsize;
      if (budget < 0) continue;
      std::vector<std::pair<int, int>> slots;
      std::optional<Mask> found;
      std::function<void(int, int, int, int, int)> profiles = [&](int kappa_lo, int ell_lo, int ksum, int lsum,
                                                                   int kmin) {
        if (found) return;
        if (!slots.empty() && ksum >= need) {
          if (ksum - kmin < need) found = realize(c0, cs, slots, need, creq, accept);
          return;
        }
        if (static_cast<int>(slots.size()) >= need) return;
        for (int kappa = kappa_lo; kappa <= creq - 1; ++kappa)
          for (int li = (kappa == kappa_lo ? ell_lo : 0); li + lsum <= budget; ++li) {
            slots.push_back({kappa, li});
            profiles(kappa, li, ksum + kappa, lsum + li, std::min(kmin, kappa));
            slots.pop_back();
            if (found) return;
          }
      };
      profiles(1, 0, 0, 0, creq);
      if (found) return found;
    }
    return std::nullopt;
  }

  std::optional<Mask> realize(const CutInfo& c0, const std::vector<CutInfo>& cs,
                              const std::vector<std::pair<int, int>>& slots, int /*need*/, int creq,
                              const std::function<bool(const Mask&)>& accept) {
    auto fits = [&](const CutInfo& ci, size_t slot) {
      return ci.tcount == slots[slot].first && ci.bsize == slots[slot].second;
    };
    // greedy rounds collect the terminals worth branching on
    Mask s = c0.terms;
    for (int round = 0; round <= creq; ++round)
      for (size_t i = 0; i < slots.size(); ++i)
        for (const auto& ci : cs)
          if (fits(ci, i) && !ci.terms.intersects(s)) {
            s |= ci.terms;
            break;
          }
    std::vector<std::vector<int>> options(slots.size());
    for (size_t i = 0; i < slots.size(); ++i)
      for (size_t j = 0; j < cs.size(); ++j)
        if (fits(cs[j], i) && cs[j].terms.intersects(s) && !cs[j].terms.intersects(c0.terms))
          options[i].push_back(static_cast<int>(j));
    std::optional<Mask> found;
    Mask used = c0.terms;
    Mask side = c0.side;
    std::function<void(size_t)> pick = [&](size_t i) {
      if (found) return;
      if (i == slots.size()) {
        if (accept(side)) found = side;
        return;
      }
      for (int j : options[i]) {
        // identical slots take candidates in increasing order
        if (i > 0 && slots[i] == slots[i - 1] && j <= last_[i - 1]) continue;
        if (cs[j].terms.intersects(used)) continue;
        Mask keep_used = used, keep_side = side;
        used |= cs[j].terms;
        side |= cs[j].side;
        last_[i] = j;
        pick(i + 1);
        used = keep_used;
        side = keep_side;
        if (found) return;
      }
    };
    last_.assign(slots.size(), -1);
    pick(0);
    return found;
  }

 private:
  std::vector<int> last_;
};

}  // namespace

std::vector<CutWitness> enumerate_important_cuts(const MultiGraph& g, const VertexSet& x, const VertexSet& y, int c) {
  Mask xm = to_mask(g, x), ym = to_mask(g, y);
  if (xm.none()) throw Error("enumerate_important_cuts: X must be nonempty");
  if (xm.intersects(ym)) throw Error("enumerate_important_cuts: X and Y overlap");
  std::vector<CutWitness> out;
  for (const auto& m : important_impl(g, xm, ym, c)) out.push_back(make_witness(g, m));
  std::sort(out.begin(), out.end(), [](const CutWitness& a, const CutWitness& b) { return a.side1 < b.side1; });
  return out;
}

bool satisfies_spec(const MultiGraph& g, const ConstrainedCutSpec& spec, const CutWitness& w) {
  Mask side0 = to_mask(g, w.side1);
  return valid_side(g, to_mask(g, spec.q0), to_mask(g, spec.q1), spec.c0, spec.c1, spec.ell, side0) &&
         w.value == cut_value(g, side0);
}

std::optional<CutWitness> constrained_cut(const MultiGraph& g, const ConstrainedCutSpec& spec) {
  if (std::max({spec.c0, spec.c1, spec.ell}) > kConstrainedCap)
    throw CapExceeded("constrained_cut: max(c0, c1, ell) exceeds cap " + std::to_string(kConstrainedCap));
  if (spec.c0 < 0 || spec.c1 < 0 || spec.ell < 0) throw Error("constrained_cut: negative parameter");
  Mask q0 = to_mask(g, spec.q0), q1 = to_mask(g, spec.q1);
  if (q0.intersects(q1)) throw Error("constrained_cut: Q0 and Q1 overlap");
  Mask t = terminal_mask(g);
  if (q0.intersects(t) || q1.intersects(t)) throw Error("constrained_cut: Q0/Q1 contain terminals");
  ConstrainedSolver s;
  auto r = s.solve(g, q0, q1, spec.c0, spec.c1, spec.ell);
  if (!r) return std::nullopt;
  return make_witness(g, *r);
}

std::optional<CutWitness> constrained_cut_base(const MultiGraph& g, const VertexSet& q0, const VertexSet& q1,
                                               int c_req, int ell) {
  if (std::max(c_req, ell) > kConstrainedCap)
    throw CapExceeded("constrained_cut_base: max(c_req, ell) exceeds cap " + std::to_string(kConstrainedCap));
  Mask m0 = to_mask(g, q0), m1 = to_mask(g, q1);
  Mask t = terminal_mask(g);
  if (m0.intersects(m1)) throw Error("constrained_cut_base: Q0 and Q1 overlap");
  if (m0.intersects(t) || m1.intersects(t)) throw Error("constrained_cut_base: Q0/Q1 contain terminals");
  ConstrainedSolver s;
  auto r = s.base(g, m0, m1, c_req, ell);
  if (!r) return std::nullopt;
  return make_witness(g, *r);
}

std::optional<ViolatingCut> find_violating_cut_fpt(const MultiGraph& g, const VertexSet& x, int c) {
  if (c > kConstrainedCap) throw CapExceeded("find_violating_cut_fpt: c exceeds cap " + std::to_string(kConstrainedCap));
  VertexSet xs = resolve(g, x);
  if (xs.size() < 2) return std::nullopt;
  BoundaryGadget bg = boundary_preprocess(g, xs);
  const MultiGraph& h = bg.graph;
  Mask none(h.id_count());
  ConstrainedSolver s;
  // a zero-edge violating cut exists when X is disconnected, so start at 0
  for (int ell = 0; ell <= c - 1; ++ell) {
    auto r = s.solve(h, none, none, ell + 1, ell + 1, ell);
    if (!r) continue;
    ViolatingCut vc;
    Mask in_a(g.id_count());
    for (VertexId v : from_mask(*r))
      if (bg.to_parent_vertex[v] >= 0) in_a.set(bg.to_parent_vertex[v]);
    for (VertexId v : xs) (in_a.test(v) ? vc.side_a : vc.side_b).push_back(v);
    Mask in_x = to_mask(g, xs);
    for (EdgeId e = 0; e < g.edge_id_count(); ++e) {
      if (!g.is_live(e)) continue;
      auto [u, v] = g.endpoints(e);
      if (in_x.test(u) && in_x.test(v) && in_a.test(u) != in_a.test(v)) vc.edges.push_back(e);
      if (in_x.test(u) != in_x.test(v)) (in_a.test(in_x.test(u) ? u : v) ? vc.boundary_a : vc.boundary_b) += 1;
    }
    if (!is_violating(g, xs, vc, c)) throw Error("find_violating_cut_fpt: produced an invalid witness");
    return vc;
  }
  return std::nullopt;
}

}  // namespace cmimic
