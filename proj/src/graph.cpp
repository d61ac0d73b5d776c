#include "dgq/graph.hpp"

#include <cassert>

namespace dgq {

void DynamicGraph::AdjList::pop_front(EdgeId expected) {
  assert(!empty() && ids[head] == expected);
  (void)expected;
  ++head;
  if (head == ids.size()) {
    ids.clear();
    head = 0;
  } else if (head > 32 && head * 2 > ids.size()) {
    ids.erase(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(head));
    head = 0;
  }
}

EdgeId DynamicGraph::add_edge(const StreamEdge& e) {
  return add_edge(e.src, e.src_type, e.edge_type, e.dst, e.dst_type, e.timestamp);
}

EdgeId DynamicGraph::add_edge(std::string_view src, std::string_view src_type,
                              std::string_view edge_type, std::string_view dst,
                              std::string_view dst_type, Timestamp ts) {
  if (ts < 0) throw OrderingError("negative timestamp " + std::to_string(ts));
  if (t_last_ && ts < *t_last_) {
    throw OrderingError("timestamp " + std::to_string(ts) + " precedes newest edge at " +
                        std::to_string(*t_last_));
  }
  // Vertex names are interned only after the label checks pass.
  const LabelId st = labels_.intern(src_type);
  const LabelId dt = labels_.intern(dst_type);
  const LabelId et = labels_.intern(edge_type);
  if (auto v = vertex_names_.find(src)) check_vertex_label(*v, st);
  if (auto v = vertex_names_.find(dst)) check_vertex_label(*v, dt);
  if (src == dst && st != dt) {
    throw SchemaError("self-loop on '" + std::string(src) + "' carries two vertex labels");
  }
  const VertexId s = vertex_names_.intern(src);
  const VertexId d = vertex_names_.intern(dst);
  if (slots_.size() < vertex_names_.size()) slots_.resize(vertex_names_.size());
  const EdgeId id = append(s, d, st, dt, et, ts);
  evict_expired();
  return id;
}

void DynamicGraph::check_vertex_label(VertexId v, LabelId label) const {
  if (has_vertex(v) && slots_[v].label != label) {
    throw SchemaError("vertex '" + vertex_names_.name(v) + "' has label '" +
                      labels_.name(slots_[v].label) + "', edge says '" + labels_.name(label) + "'");
  }
}

EdgeId DynamicGraph::append(VertexId src, VertexId dst, LabelId src_type, LabelId dst_type,
                            LabelId edge_type, Timestamp ts) {
  const EdgeId id = next_id_++;
  for (VertexId v : {src, dst}) {
    if (!slots_[v].live()) {
      slots_[v].label = v == src ? src_type : dst_type;
      ++live_vertices_;
    }
    if (src == dst) break;
  }
  slots_[src].out.ids.push_back(id);
  slots_[dst].in.ids.push_back(id);
  edges_.push_back(EdgeRecord{id, src, dst, src_type, dst_type, edge_type, ts});
  t_last_ = ts;
  return id;
}

std::vector<EdgeId> DynamicGraph::evict_expired() {
  std::vector<EdgeId> removed;
  if (!t_last_ || window_.is_infinite()) return removed;
  while (!edges_.empty() && window_.expired(edges_.front().timestamp, *t_last_)) {
    const EdgeRecord& e = edges_.front();
    slots_[e.src].out.pop_front(e.id);
    slots_[e.dst].in.pop_front(e.id);
    if (!slots_[e.src].live()) --live_vertices_;
    if (e.dst != e.src && !slots_[e.dst].live()) --live_vertices_;
    removed.push_back(e.id);
    edges_.pop_front();
    ++evicted_;
  }
  return removed;
}

std::span<const EdgeId> DynamicGraph::out_edges(VertexId v) const {
  if (v >= slots_.size()) return {};
  return slots_[v].out.live();
}

std::span<const EdgeId> DynamicGraph::in_edges(VertexId v) const {
  if (v >= slots_.size()) return {};
  return slots_[v].in.live();
}

std::optional<VertexId> DynamicGraph::find_vertex(std::string_view name) const {
  auto v = vertex_names_.find(name);
  if (v && has_vertex(*v)) return v;
  return std::nullopt;
}

std::vector<EdgeRecord> DynamicGraph::neighbors(VertexId v, Direction direction,
                                                std::optional<LabelId> type_filter) const {
  std::vector<EdgeRecord> result;
  if (!has_vertex(v)) return result;
  auto keep = [&](const EdgeRecord& e) { return !type_filter || e.edge_type == *type_filter; };
  if (direction != Direction::In) {
    for (EdgeId id : out_edges(v)) {
      if (keep(edge(id))) result.push_back(edge(id));
    }
  }
  if (direction != Direction::Out) {
    for (EdgeId id : in_edges(v)) {
      const EdgeRecord& e = edge(id);
      // a self-loop was already reported from the out list
      if (direction == Direction::Any && e.is_loop()) continue;
      if (keep(e)) result.push_back(e);
    }
  }
  return result;
}

DegreeStats DynamicGraph::degree_stats() const {
  DegreeStats stats;
  if (live_vertices_ == 0) return stats;
  std::map<LabelId, std::pair<std::uint64_t, std::uint64_t>> per_label;  // degree sum, count
  std::uint64_t total = 0;
  for (VertexId v = 0; v < slots_.size(); ++v) {
    if (!slots_[v].live()) continue;
    const std::uint64_t d = degree(v);
    total += d;
    auto& [sum, count] = per_label[slots_[v].label];
    sum += d;
    ++count;
  }
  stats.mean = static_cast<double>(total) / static_cast<double>(live_vertices_);
  for (const auto& [label, sc] : per_label) {
    stats.by_label[labels_.name(label)] =
        static_cast<double>(sc.first) / static_cast<double>(sc.second);
  }
  return stats;
}

std::vector<VertexId> DynamicGraph::vertices() const {
  std::vector<VertexId> result;
  result.reserve(live_vertices_);
  for (VertexId v = 0; v < slots_.size(); ++v) {
    if (slots_[v].live()) result.push_back(v);
  }
  return result;
}

}  // namespace dgq
