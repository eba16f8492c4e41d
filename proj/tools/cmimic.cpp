// Command-line front end. Every subcommand is deterministic: the same inputs
// and CMIMIC_SEED give byte-identical output.
#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "cmimic/dynacon.hpp"
#include "cmimic/expander.hpp"
#include "cmimic/important_cuts.hpp"
#include "cmimic/intersect.hpp"
#include "cmimic/io.hpp"
#include "cmimic/oracle.hpp"
#include "cmimic/welllinked.hpp"

using namespace cmimic;
using nlohmann::json;

namespace {

std::string sha256(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return out.str();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string label(VertexId v) { return std::to_string(v + 1); }

json labels(const VertexSet& vs) {
  json a = json::array();
  for (VertexId v : vs) a.push_back(v + 1);
  return a;
}

json metrics_json(const SparsifierResult& r) {
  json m = json::object();
  for (const auto& [k, v] : r.metrics) m[k] = v;
  if (!r.trace.empty()) m["trace"] = r.trace;
  return m;
}

// shared state for the run manifest
struct Run {
  std::string command;
  json inputs = json::object();
  json params = json::object();
  json audit = json::object();
  std::string output;
  std::string manifest_path;
  bool as_json = false;

  void input(const std::string& path) { inputs[path] = sha256(slurp(path)); }

  void finish(const std::string& out_path = "") {
    if (!out_path.empty()) {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw Error("cannot write " + out_path);
      f << output;
    } else {
      std::cout << output;
    }
    if (manifest_path.empty()) return;
    json m{{"command", command},       {"inputs", inputs},
           {"parameters", params},     {"output_sha256", sha256(output)},
           {"audit", audit}};
    std::ofstream f(manifest_path, std::ios::binary);
    if (!f) throw Error("cannot write " + manifest_path);
    f << m.dump(2) << "\n";
  }
};

Rational phi_arg(const std::string& s, int n, int c) {
  if (s == "auto") return PhiPolicy{}.resolve(n, c);
  return parse_rational(s);
}

SparsifierResult run_method(const std::string& method, const MultiGraph& g, int c, const std::string& phi,
                            bool paranoid, CutFinder finder) {
  if (method == "existence") return poly_sized_c_network(g, c, finder);
  if (method == "efficient") {
    EfficientOptions opts;
    opts.paranoid = paranoid;
    if (phi != "auto") opts.phi = {PhiPolicy::Mode::kFixed, parse_rational(phi)};
    return efficient_poly_sized(g, c, opts);
  }
  if (method == "containment") {
    ContainmentOptions opts;
    if (phi != "auto") opts.mode = ContainmentOptions::Mode::kFixed, opts.fixed = parse_rational(phi);
    return mimicking_via_containment(g, c, opts);
  }
  throw Error("unknown method " + method);
}

VertexSet parse_vertex_list(const std::string& s, int n) {
  VertexSet out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int v = std::stoi(tok);
    if (v < 1 || v > n) throw Error("vertex " + tok + " out of range");
    out.push_back(v - 1);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string edge_line(const EdgeSet& es) {
  std::vector<std::string> p;
  for (EdgeId e : es) p.push_back(std::to_string(e));
  return join(p, " ");
}

std::string side_line(const VertexSet& vs) {
  std::vector<std::string> p;
  for (VertexId v : vs) p.push_back(label(v));
  return join(p, " ");
}

// random multigraph for audits: n <= 20, m <= 50, k <= 8, c <= 3
GraphFile random_graph(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int n = pick(4, 20), m = pick(n - 1, std::min(50, 3 * n)), k = pick(2, std::min(8, n)), c = pick(1, 3);
  MultiGraph g(n);
  for (int v = 1; v < n; ++v) g.add_edge(v, pick(0, v - 1));
  while (g.live_edge_count() < m) {
    int u = pick(0, n - 1), v = pick(0, n - 1);
    if (u != v) g.add_edge(u, v);
  }
  std::vector<VertexId> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  for (int i = 0; i < k; ++i) g.set_terminal(all[i]);
  GraphFile out{g, {}, c};
  out.terminals = out.graph.terminals();
  return out;
}

std::uint64_t env_seed() {
  const char* s = std::getenv("CMIMIC_SEED");
  return s ? std::strtoull(s, nullptr, 10) : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"connectivity-c mimicking networks"};
  app.require_subcommand(1);
  app.fallthrough();
  Run run;
  app.add_flag("--json", run.as_json, "machine-readable output");
  app.add_option("--manifest", run.manifest_path, "write a run manifest (JSON) to this path");
  int c = 0;
  std::string graph_path, out_path, phi = "auto";

  auto* sp = app.add_subcommand("sparsify", "build a mimicking network");
  std::string method = "efficient", finder_name = "brute";
  bool paranoid = false;
  sp->add_option("graph", graph_path)->required()->check(CLI::ExistingFile);
  sp->add_option("--method", method)->check(CLI::IsMember({"existence", "efficient", "containment"}));
  sp->add_option("--c", c, "threshold, overrides the file header");
  sp->add_option("--phi", phi, "conductance target: auto, p/q or decimal");
  sp->add_option("--finder", finder_name, "violating-cut finder for existence")->check(CLI::IsMember({"brute", "fpt"}));
  sp->add_flag("--paranoid", paranoid, "recheck contractions with the oracle");
  sp->add_option("-o,--output", out_path);

  auto* vf = app.add_subcommand("verify", "check (T, c)-equivalence of a sparsifier");
  std::string h_path;
  vf->add_option("graph", graph_path)->required()->check(CLI::ExistingFile);
  vf->add_option("sparsifier", h_path)->required()->check(CLI::ExistingFile);
  vf->add_option("--c", c);

  auto* dc = app.add_subcommand("dynacon", "offline dynamic c-connectivity");
  std::string log_path, sparsifier = "containment";
  dc->add_option("log", log_path)->required()->check(CLI::ExistingFile);
  dc->add_option("--c", c)->required();
  dc->add_option("--sparsifier", sparsifier)->check(CLI::IsMember({"containment", "identity"}));

  auto* de = app.add_subcommand("decompose", "expander decomposition");
  de->add_option("graph", graph_path)->required()->check(CLI::ExistingFile);
  de->add_option("--phi", phi)->required();

  auto* ec = app.add_subcommand("enumerate-cuts", "cuts of size <= c with a connected side of <= nu vertices");
  int nu = 0;
  ec->add_option("graph", graph_path)->required()->check(CLI::ExistingFile);
  ec->add_option("--c", c);
  ec->add_option("--nu", nu)->required();

  auto* is = app.add_subcommand("intersecting", "edge set intersecting or containing all small terminal cuts");
  std::string strategy = "terminal";
  bool containing = false;
  is->add_option("graph", graph_path)->required()->check(CLI::ExistingFile);
  is->add_option("--c", c);
  is->add_option("--strategy", strategy)->check(CLI::IsMember({"nontrivial", "terminal", "terminal-fast"}));
  is->add_flag("--containing", containing, "run the threshold rounds and return a containing set");

  auto* vc = app.add_subcommand("violating-cut", "violating cut of a vertex set, or WELL-LINKED");
  std::string piece;
  vc->add_option("graph", graph_path)->required()->check(CLI::ExistingFile);
  vc->add_option("--piece", piece, "comma-separated vertex labels")->required();
  vc->add_option("--c", c);
  vc->add_option("--finder", finder_name)->check(CLI::IsMember({"brute", "fpt"}));

  auto* au = app.add_subcommand("audit", "size and equivalence table over random instances (seed: CMIMIC_SEED)");
  int count = 20;
  std::vector<std::string> methods{"existence", "efficient", "containment"};
  au->add_option("--count", count);
  au->add_option("--methods", methods)->check(CLI::IsMember({"existence", "efficient", "containment"}));

  CLI11_PARSE(app, argc, argv);

  try {
    std::ostringstream out;
    json j;
    int status = 0;
    CutFinder finder = finder_name == "fpt" ? CutFinder::kFpt : CutFinder::kBruteForce;
    if (sp->parsed()) {
      run.command = "sparsify";
      run.input(graph_path);
      auto gf = read_graph_file(graph_path, c);
      run.params = {{"c", gf.c}, {"method", method}, {"phi", phi}, {"paranoid", paranoid}, {"finder", finder_name}};
      auto r = run_method(method, gf.graph, gf.c, phi, paranoid, finder);
      j = sparsifier_to_json(r, gf.terminals);
      run.audit = metrics_json(r);
      run.audit["edges_out"] = r.graph.live_edge_count();
      run.audit["vertices_out"] = r.graph.num_vertices();
      out << j.dump(2) << "\n";
    } else if (vf->parsed()) {
      run.command = "verify";
      run.input(graph_path);
      run.input(h_path);
      auto gf = read_graph_file(graph_path, c);
      run.params = {{"c", gf.c}};
      MultiGraph h = sparsifier_from_json(json::parse(slurp(h_path)));
      auto rep = tc_equivalent(gf.graph, h, gf.terminals, gf.c);
      run.audit["equivalent"] = rep.equivalent;
      if (rep.equivalent) {
        j = {{"equivalent", true}};
        out << (run.as_json ? j.dump() : "EQUIVALENT") << "\n";
      } else {
        status = 1;
        const auto& cx = *rep.counterexample;
        j = {{"equivalent", false}, {"left", labels(cx.left)}, {"right", labels(cx.right)},
             {"g_value", rep.g_value}, {"h_value", rep.h_value}};
        if (run.as_json)
          out << j.dump() << "\n";
        else
          out << "NOT EQUIVALENT: " << side_line(cx.left) << " | " << side_line(cx.right) << " has mincut "
              << rep.g_value << " in G and " << rep.h_value << " in H\n";
      }
    } else if (dc->parsed()) {
      run.command = "dynacon";
      run.input(log_path);
      run.params = {{"c", c}, {"sparsifier", sparsifier}};
      auto log = read_log_file(log_path);
      SparsifyFn fn = identity_sparsifier;
      if (sparsifier == "containment") fn = [](const MultiGraph& g, int cc) { return mimicking_via_containment(g, cc); };
      auto rep = offline_connectivity_report(log, c, fn);
      run.audit = {{"sparsify_calls", rep.sparsify_calls}, {"total_node_edges", rep.total_node_edges}};
      if (run.as_json)
        out << json(rep.answers).dump() << "\n";
      else
        for (int a : rep.answers) out << a << "\n";
    } else if (de->parsed()) {
      run.command = "decompose";
      run.input(graph_path);
      auto gf = read_graph_file(graph_path);
      Rational p = phi_arg(phi, gf.graph.num_vertices(), gf.c);
      run.params = {{"phi", std::to_string(p.numerator()) + "/" + std::to_string(p.denominator())}};
      auto d = expander_decompose(gf.graph, p);
      json pieces = json::array();
      for (size_t i = 0; i < d.pieces.size(); ++i)
        pieces.push_back({{"vertices", labels(d.pieces[i])}, {"verified", static_cast<bool>(d.verified[i])}});
      run.audit = {{"pieces", d.pieces.size()}, {"inter_cluster_edges", d.inter_cluster_edges.size()}};
      if (run.as_json) {
        out << json{{"pieces", pieces}, {"inter_cluster_edges", d.inter_cluster_edges}}.dump() << "\n";
      } else {
        for (size_t i = 0; i < d.pieces.size(); ++i)
          out << "piece " << i << (d.verified[i] ? "" : " (unverified)") << ": " << side_line(d.pieces[i]) << "\n";
        out << "inter-cluster: " << edge_line(d.inter_cluster_edges) << "\n";
      }
    } else if (ec->parsed()) {
      run.command = "enumerate-cuts";
      run.input(graph_path);
      auto gf = read_graph_file(graph_path, c);
      run.params = {{"c", gf.c}, {"nu", nu}};
      auto cuts = enumerate_small_cuts(gf.graph, gf.c, nu);
      std::sort(cuts.begin(), cuts.end(), [](const auto& a, const auto& b) { return a.edges < b.edges; });
      run.audit["cuts"] = cuts.size();
      json a = json::array();
      for (const auto& w : cuts) {
        if (run.as_json) a.push_back({{"edges", w.edges}, {"side", labels(w.side1)}});
        else out << edge_line(w.edges) << "\n";
      }
      if (run.as_json) out << a.dump() << "\n";
    } else if (is->parsed()) {
      run.command = "intersecting";
      run.input(graph_path);
      auto gf = read_graph_file(graph_path, c);
      run.params = {{"c", gf.c}, {"strategy", strategy}, {"containing", containing}};
      auto st = strategy == "nontrivial" ? IntersectStrategy::kNontrivial
                : strategy == "terminal" ? IntersectStrategy::kTerminal
                                         : IntersectStrategy::kTerminalFast;
      EdgeSet edges;
      std::map<EdgeId, std::string> prov;
      if (containing) {
        auto r = get_containing_edges(gf.graph, gf.terminals, gf.c, st);
        edges = r.edges, prov = r.provenance;
        run.audit["round_sizes"] = r.round_sizes;
      } else {
        IntersectingSet r = st == IntersectStrategy::kNontrivial ? recursive_nontrivial_cuts(gf.graph, gf.terminals, gf.c)
                            : st == IntersectStrategy::kTerminal
                                ? recursive_terminal_cuts(gf.graph, gf.terminals, gf.c)
                                : recursive_terminal_cuts_fast(gf.graph, gf.terminals, gf.c);
        edges = r.edges, prov = r.provenance;
        run.audit["branches"] = r.branches;
      }
      run.audit["edges"] = edges.size();
      if (run.as_json) {
        json p = json::object();
        for (const auto& [e, tag] : prov) p[std::to_string(e)] = tag;
        out << json{{"edges", edges}, {"provenance", p}}.dump() << "\n";
      } else {
        out << edge_line(edges) << "\n";
      }
    } else if (vc->parsed()) {
      run.command = "violating-cut";
      run.input(graph_path);
      auto gf = read_graph_file(graph_path, c);
      VertexSet x = parse_vertex_list(piece, gf.graph.num_vertices());
      run.params = {{"c", gf.c}, {"piece", labels(x)}, {"finder", finder_name}};
      auto v = find_violating_cut(gf.graph, x, gf.c, finder);
      run.audit["well_linked"] = !v.has_value();
      if (run.as_json) {
        if (v) out << json{{"side_a", labels(v->side_a)}, {"side_b", labels(v->side_b)}, {"edges", v->edges}}.dump() << "\n";
        else out << json{{"well_linked", true}}.dump() << "\n";
      } else if (v) {
        out << side_line(v->side_a) << " | " << side_line(v->side_b) << " : " << edge_line(v->edges) << "\n";
      } else {
        out << "WELL-LINKED\n";
      }
    } else if (au->parsed()) {
      run.command = "audit";
      std::uint64_t seed = env_seed();
      run.params = {{"seed", seed}, {"count", count}, {"methods", methods}};
      std::mt19937_64 rng(seed);
      json rows = json::array();
      if (!run.as_json) out << "instance\tn\tm\tk\tc\tmethod\tedges_out\tratio_kc4\tratio_kc2c\tequivalent\n";
      int failures = 0;
      for (int i = 0; i < count; ++i) {
        GraphFile gf = random_graph(rng);
        const int k = static_cast<int>(gf.terminals.size());
        for (const auto& m : methods) {
          auto r = run_method(m, gf.graph, gf.c, "auto", false, CutFinder::kBruteForce);
          bool eq = tc_equivalent(gf.graph, r.graph, gf.terminals, gf.c).equivalent;
          failures += !eq;
          double kc4 = double(k) * std::pow(gf.c, 4), kc2c = double(k) * std::pow(gf.c, 2 * gf.c);
          int e = r.graph.live_edge_count();
          rows.push_back({{"instance", i}, {"n", gf.graph.num_vertices()}, {"m", gf.graph.live_edge_count()},
                          {"k", k}, {"c", gf.c}, {"method", m}, {"edges_out", e}, {"ratio_kc4", e / kc4},
                          {"ratio_kc2c", e / kc2c}, {"equivalent", eq}});
          if (!run.as_json)
            out << i << "\t" << gf.graph.num_vertices() << "\t" << gf.graph.live_edge_count() << "\t" << k << "\t"
                << gf.c << "\t" << m << "\t" << e << "\t" << std::fixed << std::setprecision(4) << e / kc4 << "\t"
                << e / kc2c << "\t" << (eq ? "yes" : "NO") << "\n";
        }
      }
      run.audit = {{"failures", failures}};
      if (run.as_json) out << rows.dump(2) << "\n";
      status = failures ? 1 : 0;
    }
    run.output = out.str();
    run.finish(sp->parsed() ? out_path : "");
    return status;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
