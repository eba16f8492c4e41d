#include "cmimic/io.hpp"

#include <fstream>
#include <sstream>

namespace cmimic {

namespace {

// the next non-empty line with comments removed, or false at end of input
bool next_line(std::istream& in, std::string& line, int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

[[noreturn]] void fail(const std::string& source, int lineno, const std::string& what) {
  throw Error(source + ":" + std::to_string(lineno) + ": " + what);
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return in;
}

}  // namespace

GraphFile parse_graph(std::istream& in, const std::string& source, int c_override) {
  std::string line;
  int lineno = 0;
  if (!next_line(in, line, lineno)) fail(source, lineno, "missing header `n m k c`");
  std::istringstream head(line);
  int n = 0, m = 0, k = 0, c = 0;
  if (!(head >> n >> m >> k >> c)) fail(source, lineno, "header must be `n m k c`");
  if (n < 1 || m < 0 || k < 0 || k > n) fail(source, lineno, "header values out of range");
  if (c_override > 0) c = c_override;
  if (c < 1) fail(source, lineno, "threshold c must be positive");
  VertexSet terminals;
  if (k > 0) {
    if (!next_line(in, line, lineno)) fail(source, lineno, "missing terminal line");
    std::istringstream ts(line);
    int t;
    while (ts >> t) {
      if (t < 1 || t > n) fail(source, lineno, "terminal " + std::to_string(t) + " is not a vertex");
      terminals.push_back(t);
    }
    if (static_cast<int>(terminals.size()) != k)
      fail(source, lineno, "expected " + std::to_string(k) + " terminals, found " + std::to_string(terminals.size()));
  }
  std::vector<WeightedEdge> edges;
  for (int i = 0; i < m; ++i) {
    if (!next_line(in, line, lineno)) fail(source, lineno, "expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    std::istringstream es(line);
    WeightedEdge e;
    if (!(es >> e.u >> e.v)) fail(source, lineno, "edge line must be `u v [w]`");
    if (!(es >> e.w)) e.w = 1;
    if (e.u < 1 || e.u > n || e.v < 1 || e.v > n) fail(source, lineno, "edge endpoint out of range");
    if (e.w < 1) fail(source, lineno, "edge weight must be positive");
    edges.push_back(e);
  }
  if (next_line(in, line, lineno)) fail(source, lineno, "unexpected trailing content");
  GraphFile out{build_graph(n, edges, terminals, c), {}, c};
  out.terminals = out.graph.terminals();
  return out;
}

GraphFile read_graph_file(const std::string& path, int c_override) {
  auto in = open(path);
  return parse_graph(in, path, c_override);
}

QueryLog parse_log(std::istream& in, const std::string& source) {
  QueryLog log;
  std::string line;
  int lineno = 0;
  while (next_line(in, line, lineno)) {
    std::istringstream ls(line);
    std::string op;
    int u = 0, v = 0;
    if (!(ls >> op >> u >> v) || op.size() != 1) fail(source, lineno, "event line must be `I|D|Q u v`");
    if (u < 1 || v < 1) fail(source, lineno, "vertex labels start at 1");
    EventKind kind;
    switch (op[0]) {
      case 'I': kind = EventKind::kInsert; break;
      case 'D': kind = EventKind::kDelete; break;
      case 'Q': kind = EventKind::kQuery; break;
      default: fail(source, lineno, "unknown event `" + op + "`");
    }
    log.events.push_back({kind, u - 1, v - 1});
  }
  try {
    validate_log(log);
  } catch (const Error& e) {
    throw Error(source + ": " + e.what());
  }
  return log;
}

QueryLog read_log_file(const std::string& path) {
  auto in = open(path);
  return parse_log(in, path);
}

nlohmann::json sparsifier_to_json(const SparsifierResult& r, const VertexSet& terminals) {
  nlohmann::json j;
  const MultiGraph& g = r.graph;
  j["vertices"] = nlohmann::json::array();
  for (VertexId v : g.vertices()) j["vertices"].push_back(v + 1);
  j["terminals"] = nlohmann::json::array();
  for (VertexId t : terminals) j["terminals"].push_back(t + 1);
  j["edges"] = nlohmann::json::array();
  for (EdgeId e : g.live_edges()) {
    auto [u, v] = g.endpoints(e);
    j["edges"].push_back({u + 1, v + 1});
  }
  j["merge_map"] = nlohmann::json::object();
  for (size_t v = 0; v < r.merge_map.size(); ++v) j["merge_map"][std::to_string(v + 1)] = r.merge_map[v] + 1;
  j["kept_edge_ids"] = nlohmann::json::array();
  for (EdgeId e : r.kept_edges) j["kept_edge_ids"].push_back(e);
  return j;
}

MultiGraph sparsifier_from_json(const nlohmann::json& j) {
  try {
    const auto& mm = j.at("merge_map");
    const int n = static_cast<int>(mm.size());
    MultiGraph g(n);
    auto label = [&](const nlohmann::json& x) {
      int v = x.get<int>();
      if (v < 1 || v > n) throw Error("sparsifier JSON: vertex " + std::to_string(v) + " out of range");
      return v - 1;
    };
    for (const auto& [orig, rep] : mm.items()) g.merge(label(std::stoi(orig)), label(rep));
    for (const auto& e : j.at("edges")) g.add_edge(label(e.at(0)), label(e.at(1)));
    for (const auto& t : j.at("terminals")) g.set_terminal(label(t));
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("sparsifier JSON: ") + e.what());
  }
}

Rational parse_rational(const std::string& s) {
  auto bad = [&]() -> Rational { throw Error("not a rational number: `" + s + "`"); };
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      size_t a = 0, b = 0;
      std::int64_t p = std::stoll(s.substr(0, slash), &a), q = std::stoll(s.substr(slash + 1), &b);
      if (a != slash || b != s.size() - slash - 1 || q == 0) return bad();
      return Rational(p, q);
    }
    auto dot = s.find('.');
    std::string digits = s;
    std::int64_t den = 1;
    if (dot != std::string::npos) {
      digits = s.substr(0, dot) + s.substr(dot + 1);
      for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
    }
    size_t used = 0;
    std::int64_t p = std::stoll(digits, &used);
    if (used != digits.size()) return bad();
    return Rational(p, den);
  } catch (const std::logic_error&) {
    return bad();
  }
}

}  // namespace cmimic
