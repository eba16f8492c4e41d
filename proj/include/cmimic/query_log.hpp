#pragma once

#include <vector>

#include "cmimic/graph.hpp"

namespace cmimic {

enum class EventKind { kInsert, kDelete, kQuery };

struct QueryEvent {
  EventKind kind;
  VertexId u;  // 0-based
  VertexId v;
};

struct QueryLog {
  std::vector<QueryEvent> events;
  // one more than the largest vertex id mentioned (at least `min_vertices`)
  int vertex_count(int min_vertices = 0) const;
  int query_count() const;
};

// Throws Error naming the event position when a delete has no live copy.
void validate_log(const QueryLog& log);

}  // namespace cmimic
