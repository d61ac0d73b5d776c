#include "dgq/query.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace dgq {

namespace {

template <class T>
bool sorted_contains(const std::vector<T>& v, T x) {
  return std::binary_search(v.begin(), v.end(), x);
}

}  // namespace

bool Subgraph::has_edge(QEdgeId e) const { return sorted_contains(edges, e); }
bool Subgraph::has_vertex(QVertexId v) const { return sorted_contains(vertices, v); }

Subgraph subgraph_union(const Subgraph& a, const Subgraph& b) {
  Subgraph out;
  std::set_union(a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(),
                 std::back_inserter(out.edges));
  std::set_union(a.vertices.begin(), a.vertices.end(), b.vertices.begin(), b.vertices.end(),
                 std::back_inserter(out.vertices));
  return out;
}

Subgraph subgraph_intersection(const Subgraph& a, const Subgraph& b) {
  Subgraph out;
  std::set_intersection(a.edges.begin(), a.edges.end(), b.edges.begin(), b.edges.end(),
                        std::back_inserter(out.edges));
  std::set_intersection(a.vertices.begin(), a.vertices.end(), b.vertices.begin(),
                        b.vertices.end(), std::back_inserter(out.vertices));
  return out;
}

// ---------------------------------------------------------------------------
// QueryGraph
// ---------------------------------------------------------------------------

QVertexId QueryGraph::add_vertex(std::string label) {
  vertex_labels_.push_back(std::move(label));
  return static_cast<QVertexId>(vertex_labels_.size() - 1);
}

QEdgeId QueryGraph::add_edge(QVertexId src, QVertexId dst, std::string label) {
  if (src >= vertex_labels_.size() || dst >= vertex_labels_.size()) {
    throw ContractError("query edge references an undeclared vertex");
  }
  edges_.push_back(QueryEdge{src, dst, std::move(label)});
  return static_cast<QEdgeId>(edges_.size() - 1);
}

Subgraph QueryGraph::subgraph_of(std::vector<QEdgeId> edges) const {
  Subgraph sub;
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (QEdgeId e : edges) {
    const QueryEdge& x = edge(e);
    sub.vertices.push_back(x.src);
    sub.vertices.push_back(x.dst);
  }
  std::sort(sub.vertices.begin(), sub.vertices.end());
  sub.vertices.erase(std::unique(sub.vertices.begin(), sub.vertices.end()), sub.vertices.end());
  sub.edges = std::move(edges);
  return sub;
}

Subgraph QueryGraph::whole() const {
  Subgraph sub;
  sub.edges.resize(edges_.size());
  std::iota(sub.edges.begin(), sub.edges.end(), QEdgeId{0});
  sub.vertices.resize(vertex_labels_.size());
  std::iota(sub.vertices.begin(), sub.vertices.end(), QVertexId{0});
  return sub;
}

bool QueryGraph::is_connected(const Subgraph& sub) const {
  if (sub.edges.empty()) return sub.vertices.size() <= 1;
  // union-find over the touched vertices
  std::vector<QVertexId> parent(vertex_labels_.size());
  std::iota(parent.begin(), parent.end(), QVertexId{0});
  auto find = [&](QVertexId v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (QEdgeId e : sub.edges) parent[find(edge(e).src)] = find(edge(e).dst);
  const QVertexId root = find(edge(sub.edges.front()).src);
  return std::all_of(sub.vertices.begin(), sub.vertices.end(),
                     [&](QVertexId v) { return find(v) == root; });
}

QueryGraph QueryGraph::parse(std::istream& in) {
  QueryGraph q;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind) || kind[0] == '#') continue;
    if (kind == "node") {
      long long id = -1;
      std::string label;
      if (!(fields >> id >> label)) throw ParseError("expected 'node <id> <label>'", line_no);
      if (id != static_cast<long long>(q.vertex_count())) {
        throw ParseError("node ids must be dense ordinals; expected " +
                             std::to_string(q.vertex_count()),
                         line_no);
      }
      q.add_vertex(label);
    } else if (kind == "edge") {
      long long id = -1, src = -1, dst = -1;
      std::string label;
      if (!(fields >> id >> src >> dst >> label)) {
        throw ParseError("expected 'edge <id> <src> <dst> <label>'", line_no);
      }
      if (id != static_cast<long long>(q.edge_count())) {
        throw ParseError("edge ids must be dense ordinals; expected " +
                             std::to_string(q.edge_count()),
                         line_no);
      }
      const auto n = static_cast<long long>(q.vertex_count());
      if (src < 0 || dst < 0 || src >= n || dst >= n) {
        throw ParseError("edge endpoint is not a declared node", line_no);
      }
      q.add_edge(static_cast<QVertexId>(src), static_cast<QVertexId>(dst), label);
    } else {
      throw ParseError("unknown record '" + kind + "'", line_no);
    }
    std::string extra;
    if (fields >> extra && extra[0] != '#') throw ParseError("trailing field '" + extra + "'", line_no);
  }
  if (q.edge_count() == 0) throw ValidationError("query has no edges");
  for (QVertexId v = 0; v < q.vertex_count(); ++v) {
    const bool touched = std::any_of(q.edges_.begin(), q.edges_.end(), [v](const QueryEdge& e) {
      return e.src == v || e.dst == v;
    });
    if (!touched) throw ValidationError("query vertex " + std::to_string(v) + " has no edges");
  }
  if (!q.is_connected()) throw ValidationError("query graph is not connected");
  return q;
}

QueryGraph QueryGraph::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

QueryGraph QueryGraph::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open query file '" + path + "'");
  return parse(in);
}

std::string QueryGraph::to_text() const {
  std::ostringstream out;
  for (QVertexId v = 0; v < vertex_count(); ++v) out << "node " << v << ' ' << vertex_labels_[v] << '\n';
  for (QEdgeId e = 0; e < edge_count(); ++e) {
    out << "edge " << e << ' ' << edges_[e].src << ' ' << edges_[e].dst << ' ' << edges_[e].label << '\n';
  }
  return out.str();
}

bool operator==(const QueryEdge& a, const QueryEdge& b) {
  return a.src == b.src && a.dst == b.dst && a.label == b.label;
}

bool operator==(const QueryGraph& a, const QueryGraph& b) {
  return a.vertex_labels_ == b.vertex_labels_ && a.edges_ == b.edges_;
}

ResolvedQuery ResolvedQuery::resolve(const QueryGraph& q, Interner& labels) {
  ResolvedQuery r;
  for (const auto& l : q.vertex_labels()) r.vertex_labels.push_back(labels.intern(l));
  for (const auto& e : q.edges()) r.edge_labels.push_back(labels.intern(e.label));
  return r;
}

// ---------------------------------------------------------------------------
// Match
// ---------------------------------------------------------------------------

bool Match::uses_data_edge(EdgeId e) const {
  return std::find(edges_.begin(), edges_.end(), e) != edges_.end();
}

bool Match::uses_data_vertex(VertexId v) const {
  return std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
}

std::size_t Match::vertex_count() const {
  return static_cast<std::size_t>(
      std::count_if(vertices_.begin(), vertices_.end(), [](VertexId v) { return v != kNoVertex; }));
}

bool Match::bind_vertex(QVertexId qv, VertexId v) {
  if (qv >= vertices_.size()) vertices_.resize(qv + 1, kNoVertex);
  if (vertices_[qv] == v) return true;
  if (vertices_[qv] != kNoVertex || uses_data_vertex(v)) return false;
  vertices_[qv] = v;
  return true;
}

bool Match::bind(const QueryGraph& q, QEdgeId qe, const EdgeRecord& e) {
  const QueryEdge& x = q.edge(qe);
  if (edges_.size() < q.edge_count()) {
    edges_.resize(q.edge_count(), kNoEdge);
    times_.resize(q.edge_count(), 0);
  }
  if (vertices_.size() < q.vertex_count()) vertices_.resize(q.vertex_count(), kNoVertex);
  if (edges_[qe] != kNoEdge) return edges_[qe] == e.id;
  if (uses_data_edge(e.id)) return false;
  if ((x.src == x.dst) != e.is_loop()) return false;

  auto fits = [&](QVertexId qv, VertexId v) {
    return vertices_[qv] == v || (vertices_[qv] == kNoVertex && !uses_data_vertex(v));
  };
  if (!fits(x.src, e.src)) return false;
  if (x.src != x.dst && !fits(x.dst, e.dst)) return false;
  // both endpoints fresh and the same data vertex would collide
  if (x.src != x.dst && vertices_[x.src] == kNoVertex && vertices_[x.dst] == kNoVertex &&
      e.src == e.dst) {
    return false;
  }

  vertices_[x.src] = e.src;
  vertices_[x.dst] = e.dst;
  edges_[qe] = e.id;
  times_[qe] = e.timestamp;
  ++bound_edges_;
  t_min_ = std::min(t_min_, e.timestamp);
  t_max_ = std::max(t_max_, e.timestamp);
  return true;
}

std::string Match::format_pairs() const {
  std::string out;
  for (QEdgeId qe = 0; qe < edges_.size(); ++qe) {
    if (edges_[qe] == kNoEdge) continue;
    if (!out.empty()) out += ';';
    out += std::to_string(qe);
    out += '=';
    out += std::to_string(edges_[qe]);
  }
  return out;
}

std::optional<Match> join(const Match& m1, const Match& m2) {
  Match out = m1;
  if (out.edges_.size() < m2.edges_.size()) {
    out.edges_.resize(m2.edges_.size(), kNoEdge);
    out.times_.resize(m2.edges_.size(), 0);
  }
  if (out.vertices_.size() < m2.vertices_.size()) out.vertices_.resize(m2.vertices_.size(), kNoVertex);

  for (QVertexId qv = 0; qv < m2.vertices_.size(); ++qv) {
    const VertexId v = m2.vertices_[qv];
    if (v == kNoVertex || out.vertices_[qv] == v) continue;
    if (out.vertices_[qv] != kNoVertex) return std::nullopt;  // binding conflict
    if (out.uses_data_vertex(v)) return std::nullopt;         // injectivity
    out.vertices_[qv] = v;
  }
  for (QEdgeId qe = 0; qe < m2.edges_.size(); ++qe) {
    const EdgeId e = m2.edges_[qe];
    if (e == kNoEdge || out.edges_[qe] == e) continue;
    if (out.edges_[qe] != kNoEdge || out.uses_data_edge(e)) return std::nullopt;
    out.edges_[qe] = e;
    out.times_[qe] = m2.times_[qe];
    ++out.bound_edges_;
  }
  out.t_min_ = std::min(m1.t_min_, m2.t_min_);
  out.t_max_ = std::max(m1.t_max_, m2.t_max_);
  return out;
}

Match project(const Match& m, const Subgraph& cut) {
  Match out(m.edges_.size(), m.vertices_.size());
  for (QVertexId qv : cut.vertices) {
    if (m.vertex(qv) == kNoVertex) {
      throw ContractError("projection: query vertex " + std::to_string(qv) + " is not bound");
    }
    out.vertices_[qv] = m.vertices_[qv];
  }
  for (QEdgeId qe : cut.edges) {
    if (m.edge(qe) == kNoEdge) {
      throw ContractError("projection: query edge " + std::to_string(qe) + " is not bound");
    }
    out.edges_[qe] = m.edges_[qe];
    out.times_[qe] = m.times_[qe];
    ++out.bound_edges_;
    out.t_min_ = std::min(out.t_min_, m.times_[qe]);
    out.t_max_ = std::max(out.t_max_, m.times_[qe]);
  }
  return out;
}

}  // namespace dgq
