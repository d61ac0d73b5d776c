#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dgq/common.hpp"
#include "dgq/graph.hpp"

namespace dgq {

struct QueryEdge {
  QVertexId src = 0;
  QVertexId dst = 0;
  std::string label;
};

/// A subset of a query's edges and vertices, addressed by the query's own ids.
/// Used for SJ-Tree node subgraphs and cut-subgraphs. Both lists stay sorted.
struct Subgraph {
  std::vector<QEdgeId> edges;
  std::vector<QVertexId> vertices;

  bool empty() const { return edges.empty() && vertices.empty(); }
  bool has_edge(QEdgeId e) const;
  bool has_vertex(QVertexId v) const;

  friend bool operator==(const Subgraph&, const Subgraph&) = default;
};

Subgraph subgraph_union(const Subgraph& a, const Subgraph& b);
Subgraph subgraph_intersection(const Subgraph& a, const Subgraph& b);

/// Small typed directed pattern graph. Vertex and edge ids are dense ordinals.
class QueryGraph {
 public:
  QVertexId add_vertex(std::string label);
  QEdgeId add_edge(QVertexId src, QVertexId dst, std::string label);

  std::size_t vertex_count() const { return vertex_labels_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& vertex_label(QVertexId v) const { return vertex_labels_.at(v); }
  const QueryEdge& edge(QEdgeId e) const { return edges_.at(e); }
  const std::vector<QueryEdge>& edges() const { return edges_; }
  const std::vector<std::string>& vertex_labels() const { return vertex_labels_; }

  /// Edges plus their endpoints.
  Subgraph subgraph_of(std::vector<QEdgeId> edges) const;
  Subgraph whole() const;

  /// True when the edges of `sub` form one weakly connected piece (vacuously
  /// true for an empty edge set).
  bool is_connected(const Subgraph& sub) const;
  bool is_connected() const { return is_connected(whole()); }

  /// Parses the line format `node <id> <label>` / `edge <id> <src> <dst> <label>`.
  static QueryGraph parse(std::istream& in);
  static QueryGraph parse_string(const std::string& text);
  static QueryGraph load(const std::string& path);
  std::string to_text() const;

  friend bool operator==(const QueryGraph&, const QueryGraph&);

 private:
  std::vector<std::string> vertex_labels_;
  std::vector<QueryEdge> edges_;
};

bool operator==(const QueryEdge& a, const QueryEdge& b);

/// Query labels resolved against a data graph's label table.
struct ResolvedQuery {
  std::vector<LabelId> vertex_labels;
  std::vector<LabelId> edge_labels;

  static ResolvedQuery resolve(const QueryGraph& q, Interner& labels);

  /// Whether data edge e can play query edge qe (labels and loop shape).
  bool compatible(const QueryGraph& q, QEdgeId qe, const EdgeRecord& e) const {
    const QueryEdge& x = q.edge(qe);
    return e.edge_type == edge_labels[qe] && e.src_type == vertex_labels[x.src] &&
           e.dst_type == vertex_labels[x.dst] && (x.src == x.dst) == e.is_loop();
  }
};

/// A set of (query edge -> data edge) pairs with the induced vertex bindings.
///
/// Stored densely: slot i of edges() holds the data edge bound to query edge i
/// or kNoEdge. The edge vector doubles as the canonical signature, since it is
/// exactly the qedge-ordered list of pairs.
class Match {
 public:
  Match() = default;
  Match(std::size_t query_edges, std::size_t query_vertices)
      : edges_(query_edges, kNoEdge), times_(query_edges, 0), vertices_(query_vertices, kNoVertex) {}

  /// Binds qe to e and both endpoints. Returns false (and leaves the match
  /// unchanged) if that would break consistency or injectivity.
  bool bind(const QueryGraph& q, QEdgeId qe, const EdgeRecord& e);
  /// Binds a lone vertex (used by projections onto vertex-only cuts).
  bool bind_vertex(QVertexId qv, VertexId v);

  EdgeId edge(QEdgeId qe) const { return qe < edges_.size() ? edges_[qe] : kNoEdge; }
  VertexId vertex(QVertexId qv) const { return qv < vertices_.size() ? vertices_[qv] : kNoVertex; }
  bool uses_data_edge(EdgeId e) const;
  bool uses_data_vertex(VertexId v) const;

  std::size_t edge_count() const { return bound_edges_; }
  std::size_t vertex_count() const;
  bool empty() const { return bound_edges_ == 0 && vertex_count() == 0; }

  Timestamp t_min() const { return t_min_; }
  Timestamp t_max() const { return t_max_; }
  /// t_max - t_min; 0 for a match with no edges.
  std::int64_t time_span() const { return bound_edges_ ? t_max_ - t_min_ : 0; }

  const std::vector<EdgeId>& signature() const { return edges_; }
  const std::vector<VertexId>& bindings() const { return vertices_; }

  /// `qedge=edge_id;...` in qedge order, bound edges only.
  std::string format_pairs() const;

  friend bool operator==(const Match& a, const Match& b) { return a.edges_ == b.edges_ && a.vertices_ == b.vertices_; }

 private:
  friend std::optional<Match> join(const Match&, const Match&);
  friend Match project(const Match&, const Subgraph&);

  std::vector<EdgeId> edges_;
  std::vector<Timestamp> times_;
  std::vector<VertexId> vertices_;
  std::size_t bound_edges_ = 0;
  Timestamp t_min_ = std::numeric_limits<Timestamp>::max();
  Timestamp t_max_ = std::numeric_limits<Timestamp>::min();
};

/// Union of two matches over the same query, or nullopt when shared query
/// vertices disagree, the merged vertex binding is not injective, or a data
/// edge would be used twice.
std::optional<Match> join(const Match& m1, const Match& m2);

/// Restriction of m to the cut's vertices and edges. Throws ContractError if
/// the cut names something m does not bind.
Match project(const Match& m, const Subgraph& cut);

inline std::int64_t time_span(const Match& m) { return m.time_span(); }

struct SignatureHash {
  std::size_t operator()(const std::vector<EdgeId>& sig) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (EdgeId e : sig) {
      h ^= std::hash<EdgeId>{}(e) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace dgq
