#include "cmimic/query_log.hpp"

#include <algorithm>
#include <map>

namespace cmimic {

int QueryLog::vertex_count(int min_vertices) const {
  int n = min_vertices;
  for (const auto& ev : events) n = std::max({n, ev.u + 1, ev.v + 1});
  return n;
}

int QueryLog::query_count() const {
  return static_cast<int>(std::count_if(events.begin(), events.end(),
                                        [](const QueryEvent& e) { return e.kind == EventKind::kQuery; }));
}

void validate_log(const QueryLog& log) {
  std::map<std::pair<VertexId, VertexId>, int> mult;
  for (size_t i = 0; i < log.events.size(); ++i) {
    const auto& ev = log.events[i];
    if (ev.u < 0 || ev.v < 0) throw Error("event " + std::to_string(i + 1) + ": negative vertex id");
    auto key = std::minmax(ev.u, ev.v);
    if (ev.kind == EventKind::kInsert) {
      if (ev.u == ev.v) throw Error("event " + std::to_string(i + 1) + ": self-loop insert");
      ++mult[key];
    } else if (ev.kind == EventKind::kDelete) {
      auto it = mult.find(key);
      if (it == mult.end() || it->second == 0)
        throw Error("event " + std::to_string(i + 1) + ": delete of absent edge " + std::to_string(ev.u + 1) + " " +
                    std::to_string(ev.v + 1));
      --it->second;
    }
  }
}

}  // namespace cmimic
