/**
 * \file io.hpp
 * Text formats for graphs and event logs, and the JSON form of a sparsifier.
 * All files use 1-based vertex labels; in memory they are 0-based.
 */
#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "cmimic/graph.hpp"
#include "cmimic/query_log.hpp"
#include "cmimic/sparsifier.hpp"

namespace cmimic {

struct GraphFile {
  MultiGraph graph;  // weights capped at c and expanded to parallel edges
  VertexSet terminals;
  int c = 1;
};

// `n m k c`, then k terminals, then m lines `u v [w]`. '#' starts a comment.
// Errors name the source and line. c_override > 0 replaces the header value
// before weights are capped.
GraphFile parse_graph(std::istream& in, const std::string& source, int c_override = 0);
GraphFile read_graph_file(const std::string& path, int c_override = 0);

// lines `I u v`, `D u v`, `Q u v`; validated
QueryLog parse_log(std::istream& in, const std::string& source);
QueryLog read_log_file(const std::string& path);

// {vertices, terminals, edges, merge_map, kept_edge_ids}; terminals are the
// input labels, everything else refers to representatives.
nlohmann::json sparsifier_to_json(const SparsifierResult& r, const VertexSet& terminals);
// rebuilds the output graph in the input id space, terminals marked
MultiGraph sparsifier_from_json(const nlohmann::json& j);

// "auto", "p/q", an integer or a decimal such as 0.25
Rational parse_rational(const std::string& s);

}  // namespace cmimic
