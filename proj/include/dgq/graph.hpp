#pragma once

#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dgq/common.hpp"

namespace dgq {

/// One line of the edge stream, before interning.
struct StreamEdge {
  Timestamp timestamp = 0;
  std::string src;
  std::string src_type;
  std::string edge_type;
  std::string dst;
  std::string dst_type;
};

/// A stored edge. Vertex and label fields are interned ids owned by the graph.
struct EdgeRecord {
  EdgeId id = kNoEdge;
  VertexId src = kNoVertex;
  VertexId dst = kNoVertex;
  LabelId src_type = kNoLabel;
  LabelId dst_type = kNoLabel;
  LabelId edge_type = kNoLabel;
  Timestamp timestamp = 0;

  VertexId other(VertexId v) const { return v == src ? dst : src; }
  bool is_loop() const { return src == dst; }
};

struct DegreeStats {
  double mean = 0.0;
  std::map<std::string, double> by_label;
};

/// Sliding-window store of typed, timestamped, directed multi-edges.
///
/// Edges are kept in arrival order, so expiry always removes a prefix of the
/// global edge list and a prefix of every adjacency list. Edge ids are dense
/// ordinals starting at 0; a live edge is looked up in O(1) by offset from the
/// oldest live id.
class DynamicGraph {
 public:
  explicit DynamicGraph(Window window = Window::infinite()) : window_(window) {}

  /// Interns the endpoints and labels, appends the edge, then evicts expired
  /// edges. Throws OrderingError / SchemaError without modifying the graph.
  EdgeId add_edge(const StreamEdge& e);
  EdgeId add_edge(std::string_view src, std::string_view src_type, std::string_view edge_type,
                  std::string_view dst, std::string_view dst_type, Timestamp ts);

  /// Removes every edge with timestamp <= t_last - t_W. add_edge already calls
  /// this, so an explicit call normally returns an empty list.
  std::vector<EdgeId> evict_expired();

  /// Live incident edges of v, each once (self-loops included once for Any).
  std::vector<EdgeRecord> neighbors(VertexId v, Direction direction,
                                    std::optional<LabelId> type_filter = std::nullopt) const;

  DegreeStats degree_stats() const;

  // -- accessors ------------------------------------------------------------

  bool has_vertex(VertexId v) const { return v < slots_.size() && slots_[v].live(); }
  std::optional<VertexId> find_vertex(std::string_view name) const;
  const std::string& vertex_name(VertexId v) const { return vertex_names_.name(v); }
  LabelId vertex_label(VertexId v) const { return slots_.at(v).label; }

  /// Live out/in edge ids of v in arrival order; empty for unknown vertices.
  std::span<const EdgeId> out_edges(VertexId v) const;
  std::span<const EdgeId> in_edges(VertexId v) const;
  std::size_t degree(VertexId v) const { return out_edges(v).size() + in_edges(v).size(); }

  bool contains_edge(EdgeId id) const {
    return !edges_.empty() && id >= edges_.front().id && id <= edges_.back().id;
  }
  const EdgeRecord& edge(EdgeId id) const { return edges_[id - edges_.front().id]; }
  const std::deque<EdgeRecord>& edges() const { return edges_; }

  /// Ids of every live vertex, ascending.
  std::vector<VertexId> vertices() const;

  Interner& labels() { return labels_; }
  const Interner& labels() const { return labels_; }
  const Interner& vertex_names() const { return vertex_names_; }
  std::size_t vertex_id_bound() const { return slots_.size(); }

  Window window() const { return window_; }
  std::optional<Timestamp> t_last() const { return t_last_; }
  std::size_t vertex_count() const { return live_vertices_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::uint64_t edges_ingested() const { return next_id_; }
  std::uint64_t edges_evicted() const { return evicted_; }

 private:
  struct AdjList {
    std::vector<EdgeId> ids;
    std::size_t head = 0;

    std::span<const EdgeId> live() const { return {ids.data() + head, ids.size() - head}; }
    bool empty() const { return head == ids.size(); }
    void pop_front(EdgeId expected);
  };

  struct Slot {
    LabelId label = kNoLabel;
    AdjList out;
    AdjList in;
    bool live() const { return !out.empty() || !in.empty(); }
  };

  EdgeId append(VertexId src, VertexId dst, LabelId src_type, LabelId dst_type,
                LabelId edge_type, Timestamp ts);
  void check_vertex_label(VertexId v, LabelId label) const;

  Window window_;
  Interner vertex_names_;
  Interner labels_;
  std::vector<Slot> slots_;
  std::deque<EdgeRecord> edges_;
  std::optional<Timestamp> t_last_;
  EdgeId next_id_ = 0;
  std::uint64_t evicted_ = 0;
  std::size_t live_vertices_ = 0;
};

}  // namespace dgq
