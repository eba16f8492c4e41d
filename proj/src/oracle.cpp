#include "cmimic/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>

namespace cmimic {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

// Dense Edmonds-Karp, stops once `limit` units are routed.
class DenseFlow {
 public:
  explicit DenseFlow(int n) : n_(n), cap_(n, std::vector<int>(n, 0)) {}
  void add_undirected(int u, int v, int w) {
    if (u == v) return;
    cap_[u][v] += w;
    cap_[v][u] += w;
  }
  void add_arc(int u, int v, int w) { cap_[u][v] += w; }
  int run(int s, int t, int limit) {
    int flow = 0;
    std::vector<int> prev(n_);
    while (flow < limit) {
      std::fill(prev.begin(), prev.end(), -1);
      prev[s] = s;
      std::deque<int> q{s};
      while (!q.empty() && prev[t] < 0) {
        int x = q.front();
        q.pop_front();
        for (int y = 0; y < n_; ++y)
          if (prev[y] < 0 && cap_[x][y] > 0) {
            prev[y] = x;
            q.push_back(y);
          }
      }
      if (prev[t] < 0) break;
      int push = limit - flow;
      for (int y = t; y != s; y = prev[y]) push = std::min(push, cap_[prev[y]][y]);
      for (int y = t; y != s; y = prev[y]) {
        cap_[prev[y]][y] -= push;
        cap_[y][prev[y]] += push;
      }
      flow += push;
    }
    return flow;
  }

 private:
  int n_;
  std::vector<std::vector<int>> cap_;
};

struct DenseIndex {
  std::vector<int> of;  // rep id -> dense index
  int size = 0;
  explicit DenseIndex(const MultiGraph& g) : of(g.id_count(), -1) {
    for (VertexId v : g.vertices()) of[v] = size++;
  }
};

// capacity per live edge is 1 unless `heavy` marks it, then it is effectively infinite
int flow_value(const MultiGraph& g, const VertexSet& a, const VertexSet& b, int limit,
               const std::vector<char>* heavy = nullptr) {
  DenseIndex idx(g);
  std::vector<char> in_a(idx.size, 0), in_b(idx.size, 0);
  for (VertexId x : a) {
    g.check_vertex(x);
    in_a[idx.of[g.find(x)]] = 1;
  }
  for (VertexId x : b) {
    g.check_vertex(x);
    in_b[idx.of[g.find(x)]] = 1;
  }
  for (int i = 0; i < idx.size; ++i)
    if (in_a[i] && in_b[i]) return limit;
  DenseFlow f(idx.size + 2);
  const int s = idx.size, t = idx.size + 1;
  for (EdgeId e = 0; e < g.edge_id_count(); ++e) {
    if (!g.is_live(e)) continue;
    auto [u, v] = g.endpoints(e);
    int w = (heavy && (*heavy)[e]) ? kInf : 1;
    f.add_undirected(idx.of[u], idx.of[v], w);
  }
  for (int i = 0; i < idx.size; ++i) {
    if (in_a[i]) f.add_arc(s, i, kInf);
    if (in_b[i]) f.add_arc(i, t, kInf);
  }
  return f.run(s, t, limit);
}

std::vector<Bipartition> all_bipartitions(const VertexSet& terminals) {
  std::vector<Bipartition> out;
  const int k = static_cast<int>(terminals.size());
  if (k < 2) return out;
  for (std::uint32_t mask = 0; mask < (1u << (k - 1)); ++mask) {
    Bipartition p;
    p.left.push_back(terminals[0]);
    for (int i = 1; i < k; ++i) ((mask >> (i - 1)) & 1 ? p.left : p.right).push_back(terminals[i]);
    if (!p.right.empty()) out.push_back(std::move(p));
  }
  return out;
}

void check_labels(const MultiGraph& g, const VertexSet& terminals, const char* which) {
  for (VertexId t : terminals)
    if (t < 0 || t >= g.id_count())
      throw Error(std::string("terminal label ") + std::to_string(t) + " missing in " + which);
}

}  // namespace

int oracle_mincut(const MultiGraph& g, const VertexSet& a, const VertexSet& b, int c) {
  return flow_value(g, a, b, c);
}

EquivalenceReport tc_equivalent(const MultiGraph& g, const MultiGraph& h, const VertexSet& terminals, int c) {
  if (static_cast<int>(terminals.size()) > kOracleTerminalCap)
    throw CapExceeded("tc_equivalent: more than " + std::to_string(kOracleTerminalCap) + " terminals");
  check_labels(g, terminals, "G");
  check_labels(h, terminals, "H");
  EquivalenceReport rep;
  for (auto& p : all_bipartitions(terminals)) {
    int x = oracle_mincut(g, p.left, p.right, c);
    int y = oracle_mincut(h, p.left, p.right, c);
    if (x != y) {
      rep.equivalent = false;
      rep.counterexample = std::move(p);
      rep.g_value = x;
      rep.h_value = y;
      return rep;
    }
  }
  return rep;
}

bool disjoint_subset_equivalent(const MultiGraph& g, const MultiGraph& h, const VertexSet& terminals, int c) {
  const int k = static_cast<int>(terminals.size());
  if (k > kDisjointTerminalCap)
    throw CapExceeded("disjoint_subset_equivalent: more than " + std::to_string(kDisjointTerminalCap) + " terminals");
  check_labels(g, terminals, "G");
  check_labels(h, terminals, "H");
  // each terminal goes to A, B or neither
  std::vector<int> digit(k, 0);
  while (true) {
    VertexSet a, b;
    for (int i = 0; i < k; ++i) {
      if (digit[i] == 1) a.push_back(terminals[i]);
      if (digit[i] == 2) b.push_back(terminals[i]);
    }
    if (!a.empty() && !b.empty() && oracle_mincut(g, a, b, c) != oracle_mincut(h, a, b, c)) return false;
    int i = 0;
    while (i < k && digit[i] == 2) digit[i++] = 0;
    if (i == k) break;
    ++digit[i];
  }
  return true;
}

bool is_violating(const MultiGraph& g, const VertexSet& x, const ViolatingCut& cut, int c) {
  Mask in_x = to_mask(g, x);
  Mask in_a = to_mask(g, cut.side_a), in_b = to_mask(g, cut.side_b);
  if (in_a.none() || in_b.none() || in_a.intersects(in_b) || (in_a | in_b) != in_x) return false;
  EdgeSet between;
  int ba = 0, bb = 0;
  for (EdgeId e = 0; e < g.edge_id_count(); ++e) {
    if (!g.is_live(e)) continue;
    auto [u, v] = g.endpoints(e);
    if ((in_a.test(u) && in_b.test(v)) || (in_b.test(u) && in_a.test(v))) between.push_back(e);
    if (in_x.test(u) != in_x.test(v)) {
      VertexId inner = in_x.test(u) ? u : v;
      (in_a.test(inner) ? ba : bb) += 1;
    }
  }
  if (between != cut.edges || ba != cut.boundary_a || bb != cut.boundary_b) return false;
  return static_cast<int>(between.size()) < std::min({ba, bb, c});
}

std::optional<ViolatingCut> find_violating_cut_bruteforce(const MultiGraph& g, const VertexSet& x, int c) {
  VertexSet xs = resolve(g, x);
  const int s = static_cast<int>(xs.size());
  if (s > kWellLinkedCap)
    throw CapExceeded("find_violating_cut_bruteforce: piece of " + std::to_string(s) + " vertices exceeds cap " +
                      std::to_string(kWellLinkedCap));
  if (s < 2) return std::nullopt;
  std::vector<int> local(g.id_count(), -1);
  for (int i = 0; i < s; ++i) local[xs[i]] = i;
  std::vector<std::vector<int>> nbr(s);
  std::vector<int> outside(s, 0);
  for (EdgeId e = 0; e < g.edge_id_count(); ++e) {
    if (!g.is_live(e)) continue;
    auto [u, v] = g.endpoints(e);
    int lu = local[u], lv = local[v];
    if (lu >= 0 && lv >= 0) {
      nbr[lu].push_back(lv);
      nbr[lv].push_back(lu);
    } else if (lu >= 0) {
      ++outside[lu];
    } else if (lv >= 0) {
      ++outside[lv];
    }
  }
  // Gray code over the first s-1 vertices; the last one stays in B
  std::vector<char> in_a(s, 0);
  int cut = 0, ba = 0, bb = 0;
  for (int i = 0; i < s; ++i) bb += outside[i];
  for (std::uint32_t step = 1; step < (1u << (s - 1)); ++step) {
    int i = __builtin_ctz(step);
    int sign = in_a[i] ? -1 : 1;  // +1: moving i into A
    for (int y : nbr[i]) cut += (in_a[y] ? -1 : 1) * sign;
    ba += sign * outside[i];
    bb -= sign * outside[i];
    in_a[i] = static_cast<char>(!in_a[i]);
    if (cut < std::min({ba, bb, c})) {
      ViolatingCut vc;
      for (int j = 0; j < s; ++j) (in_a[j] ? vc.side_a : vc.side_b).push_back(xs[j]);
      Mask ma = to_mask(g, vc.side_a), mb = to_mask(g, vc.side_b);
      for (EdgeId e = 0; e < g.edge_id_count(); ++e) {
        if (!g.is_live(e)) continue;
        auto [u, v] = g.endpoints(e);
        if ((ma.test(u) && mb.test(v)) || (mb.test(u) && ma.test(v))) vc.edges.push_back(e);
      }
      vc.boundary_a = ba;
      vc.boundary_b = bb;
      return vc;
    }
  }
  return std::nullopt;
}

bool is_well_linked(const MultiGraph& g, const VertexSet& x, int c) {
  return !find_violating_cut_bruteforce(g, x, c).has_value();
}

namespace {

void check_verify_caps(const MultiGraph& g, int c, const char* who) {
  if (g.live_edge_count() > kVerifyEdgeCap)
    throw CapExceeded(std::string(who) + ": more than " + std::to_string(kVerifyEdgeCap) + " edges");
  if (c > kVerifyThresholdCap)
    throw CapExceeded(std::string(who) + ": threshold above " + std::to_string(kVerifyThresholdCap));
}

}  // namespace

bool verify_containing(const MultiGraph& g, const VertexSet& terminals, int c, const EdgeSet& e_con) {
  check_verify_caps(g, c, "verify_containing");
  std::vector<char> heavy(g.edge_id_count(), 1);
  for (EdgeId e : e_con) {
    g.check_edge(e);
    heavy[e] = 0;
  }
  for (const auto& p : all_bipartitions(resolve(g, terminals))) {
    int lambda = oracle_mincut(g, p.left, p.right, c + 1);
    if (lambda > c) continue;
    // some separator of size lambda avoids every edge outside e_con
    if (flow_value(g, p.left, p.right, lambda + 1, &heavy) != lambda) return false;
  }
  return true;
}

bool verify_intersecting(const MultiGraph& g, const VertexSet& terminals, int c, const EdgeSet& e_int) {
  check_verify_caps(g, c, "verify_intersecting");
  EdgeSet live = g.live_edges();
  const int m = static_cast<int>(live.size());
  Mask in_int(g.edge_id_count());
  for (EdgeId e : e_int) {
    g.check_edge(e);
    in_int.set(e);
  }
  // components of G minus e_int
  std::vector<int> comp(g.id_count(), -1);
  {
    MultiGraph rest = g;
    for (EdgeId e : e_int)
      if (rest.is_live(e)) rest.remove_edge(e);
    int id = 0;
    for (const auto& cc : connected_components(rest)) {
      for (VertexId v : cc) comp[v] = id;
      ++id;
    }
  }
  Adjacency adj(g);
  for (const auto& p : all_bipartitions(resolve(g, terminals))) {
    int lambda = oracle_mincut(g, p.left, p.right, c + 1);
    if (lambda > c) continue;
    Mask right = to_mask(g, p.right);
    bool found = false;
    std::vector<int> pick(lambda);
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (found) return;
      if (depth == lambda) {
        Mask removed(g.edge_id_count());
        for (int i : pick) removed.set(live[i]);
        Mask seen(g.id_count());
        std::vector<VertexId> stack;
        for (VertexId t : p.left) {
          VertexId r = g.find(t);
          if (!seen.test(r)) {
            seen.set(r);
            stack.push_back(r);
          }
        }
        while (!stack.empty()) {
          VertexId x = stack.back();
          stack.pop_back();
          for (auto [y, e] : adj.out[x])
            if (!removed.test(e) && !seen.test(y)) {
              seen.set(y);
              stack.push_back(y);
            }
        }
        if (seen.intersects(right)) return;
        // minimum size forces F = E(V1, V2); now count F per component
        std::map<int, int> per_comp;
        for (int i : pick) {
          EdgeId e = live[i];
          if (in_int.test(e)) continue;
          auto [u, v] = g.endpoints(e);
          if (++per_comp[comp[u]] > c - 1) return;
          (void)v;
        }
        found = true;
        return;
      }
      for (int i = start; i <= m - (lambda - depth); ++i) {
        pick[depth] = i;
        rec(i + 1, depth + 1);
        if (found) return;
      }
    };
    rec(0, 0);
    if (!found) return false;
  }
  return true;
}

std::vector<int> naive_offline(const QueryLog& log, int c) {
  validate_log(log);
  const int n = log.vertex_count();
  std::map<std::pair<VertexId, VertexId>, int> mult;
  std::vector<int> answers;
  for (const auto& ev : log.events) {
    auto key = std::minmax(ev.u, ev.v);
    if (ev.kind == EventKind::kInsert) {
      ++mult[key];
    } else if (ev.kind == EventKind::kDelete) {
      if (--mult[key] == 0) mult.erase(key);
    } else {
      MultiGraph g(n);
      for (auto [k, cnt] : mult)
        for (int i = 0; i < cnt; ++i) g.add_edge(k.first, k.second);
      answers.push_back(oracle_mincut(g, {ev.u}, {ev.v}, c));
    }
  }
  return answers;
}

}  // namespace cmimic
