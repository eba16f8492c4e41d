#include "cmimic/dynacon.hpp"

#include <algorithm>
#include <map>

#include "cmimic/intersect.hpp"
#include "cmimic/oracle.hpp"

namespace cmimic {

std::int64_t LifetimeIndex::total_side_edges() const {
  std::int64_t total = 0;
  for (const auto& n : nodes) total += static_cast<std::int64_t>(n.left_edges.size() + n.right_edges.size());
  return total;
}

namespace {

bool present_through(const EdgeCopy& e, int l, int r) { return e.birth <= l && e.last >= r; }

VertexSet event_vertices(const QueryLog& log, int l, int r) {
  VertexSet out;
  for (int i = l; i <= r; ++i) {
    out.push_back(log.events[i].u);
    out.push_back(log.events[i].v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int build_node(LifetimeIndex& idx, const QueryLog& log, const std::vector<int>& active, int l, int r) {
  int id = static_cast<int>(idx.nodes.size());
  idx.nodes.push_back({l, r, (l + r) / 2, {}, {}, {}, {}});
  if (l == r) return id;
  const int m = (l + r) / 2;
  // only copies with an event inside [l, r] can be new to a child
  std::vector<int> left_active, right_active, left_new, right_new;
  for (int k : active) {
    const EdgeCopy& e = idx.copies[k];
    if (present_through(e, l, r)) continue;
    if (present_through(e, l, m)) left_new.push_back(k);
    else if (e.birth <= m && e.last >= l) left_active.push_back(k);
    if (present_through(e, m + 1, r)) right_new.push_back(k);
    else if (e.birth <= r && e.last >= m + 1) right_active.push_back(k);
  }
  idx.nodes[id].left_edges = left_new;
  idx.nodes[id].right_edges = right_new;
  idx.nodes[id].left_terminals = event_vertices(log, l, m);
  idx.nodes[id].right_terminals = event_vertices(log, m + 1, r);
  int left = build_node(idx, log, left_active, l, m);
  int right = build_node(idx, log, right_active, m + 1, r);
  idx.nodes[id].left = left;
  idx.nodes[id].right = right;
  return id;
}

struct Solver {
  const QueryLog& log;
  const LifetimeIndex& idx;
  int c;
  const SparsifyFn& sparsify;
  const OfflineOptions& opts;
  OfflineReport& report;
  std::vector<int> query_rank;  // event position -> answer slot, -1 otherwise
  std::vector<int> queries_before;  // prefix counts of queries

  bool has_query(int l, int r) const { return queries_before[r + 1] > queries_before[l]; }

  MultiGraph compress(MultiGraph g, const VertexSet& terminals) {
    g.clear_terminals();
    for (VertexId t : terminals) g.set_terminal(t);
    ++report.sparsify_calls;
    SparsifierResult res = sparsify(g, c);
    VertexSet reps = resolve(g, terminals);
    if (opts.check_nodes && reps.size() <= 12) {
      ++report.checked_nodes;
      if (!tc_equivalent(g, res.graph, terminals, c).equivalent) ++report.failed_checks;
    }
    report.total_node_edges += res.graph.live_edge_count();
    return std::move(res.graph);
  }

  void solve(int node, MultiGraph g) {
    const IntervalNode& n = idx.nodes[node];
    if (n.l == n.r) {
      const QueryEvent& ev = log.events[n.l];
      if (ev.kind == EventKind::kQuery)
        report.answers[query_rank[n.l]] = ev.u == ev.v ? c : thresholded_mincut(g, {ev.u}, {ev.v}, c);
      return;
    }
    if (has_query(n.l, n.m)) {
      MultiGraph h = g;
      for (int k : n.left_edges) h.add_edge(idx.copies[k].u, idx.copies[k].v);
      solve(n.left, compress(std::move(h), n.left_terminals));
    }
    if (has_query(n.m + 1, n.r)) {
      for (int k : n.right_edges) g.add_edge(idx.copies[k].u, idx.copies[k].v);
      solve(n.right, compress(std::move(g), n.right_terminals));
    }
  }
};

}  // namespace

LifetimeIndex edge_lifetime_index(const QueryLog& log) {
  validate_log(log);
  LifetimeIndex idx;
  idx.vertex_count = log.vertex_count();
  const int q = static_cast<int>(log.events.size());
  std::map<std::pair<VertexId, VertexId>, std::vector<int>> open;
  for (int i = 0; i < q; ++i) {
    const QueryEvent& ev = log.events[i];
    auto key = std::minmax(ev.u, ev.v);
    if (ev.kind == EventKind::kInsert) {
      open[key].push_back(static_cast<int>(idx.copies.size()));
      idx.copies.push_back({ev.u, ev.v, i, q - 1});
    } else if (ev.kind == EventKind::kDelete) {
      auto& stack = open[key];
      idx.copies[stack.back()].last = i - 1;
      stack.pop_back();
    }
  }
  if (q == 0) return idx;
  std::vector<int> active;
  for (int k = 0; k < static_cast<int>(idx.copies.size()); ++k) {
    if (present_through(idx.copies[k], 0, q - 1)) idx.root_edges.push_back(k);
    else if (idx.copies[k].birth <= idx.copies[k].last) active.push_back(k);
  }
  build_node(idx, log, active, 0, q - 1);
  return idx;
}

OfflineReport offline_connectivity_report(const QueryLog& log, int c, const SparsifyFn& sparsify,
                                          const OfflineOptions& opts) {
  if (c < 1) throw Error("threshold c must be positive");
  LifetimeIndex idx = edge_lifetime_index(log);
  OfflineReport report;
  report.answers.assign(log.query_count(), 0);
  if (log.events.empty()) return report;
  Solver s{log, idx, c, sparsify, opts, report, {}, {0}};
  int rank = 0;
  for (const auto& ev : log.events) {
    s.query_rank.push_back(ev.kind == EventKind::kQuery ? rank++ : -1);
    s.queries_before.push_back(rank);
  }
  if (rank == 0) return report;
  MultiGraph g(idx.vertex_count);
  for (int k : idx.root_edges) g.add_edge(idx.copies[k].u, idx.copies[k].v);
  s.solve(0, s.compress(std::move(g), event_vertices(log, 0, static_cast<int>(log.events.size()) - 1)));
  return report;
}

std::vector<int> offline_connectivity(const QueryLog& log, int c, const SparsifyFn& sparsify) {
  return offline_connectivity_report(log, c, sparsify).answers;
}

std::vector<int> offline_connectivity(const QueryLog& log, int c) {
  return offline_connectivity(log, c, [](const MultiGraph& g, int cc) { return mimicking_via_containment(g, cc); });
}

std::vector<int> multi_pair_connectivity(const MultiGraph& g, const std::vector<std::pair<VertexSet, VertexSet>>& pairs,
                                         int c, const SparsifyFn& sparsify) {
  QueryLog log;
  for (EdgeId e : g.live_edges()) {
    auto [u, v] = g.endpoints(e);
    log.events.push_back({EventKind::kInsert, u, v});
  }
  // every pair gets a fresh source and sink tied to its sets by c parallel edges
  VertexId next = g.id_count();
  for (const auto& [a, b] : pairs) {
    if (a.empty() || b.empty()) throw Error("multi_pair_connectivity: empty vertex set");
    VertexId s = next++, t = next++;
    std::vector<QueryEvent> adds;
    for (VertexId x : resolve(g, a))
      for (int i = 0; i < c; ++i) adds.push_back({EventKind::kInsert, s, x});
    for (VertexId x : resolve(g, b))
      for (int i = 0; i < c; ++i) adds.push_back({EventKind::kInsert, t, x});
    log.events.insert(log.events.end(), adds.begin(), adds.end());
    log.events.push_back({EventKind::kQuery, s, t});
    for (auto ev : adds) log.events.push_back({EventKind::kDelete, ev.u, ev.v});
  }
  return offline_connectivity(log, c, sparsify);
}

std::vector<int> multi_pair_connectivity(const MultiGraph& g, const std::vector<std::pair<VertexSet, VertexSet>>& pairs,
                                         int c) {
  return multi_pair_connectivity(g, pairs, c,
                                 [](const MultiGraph& h, int cc) { return mimicking_via_containment(h, cc); });
}

}  // namespace cmimic
