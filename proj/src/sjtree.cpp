#include "dgq/sjtree.hpp"

#include <algorithm>
#include <cstring>
#include <set>
#include <sstream>

namespace dgq {

JoinKey get_join_key(const Subgraph& cut, const Match& m) {
  JoinKey key;
  key.reserve(cut.vertices.size() * sizeof(VertexId) + cut.edges.size() * sizeof(EdgeId));
  for (QVertexId qv : cut.vertices) {
    const VertexId v = m.vertex(qv);
    if (v == kNoVertex) {
      throw ContractError("join key: query vertex " + std::to_string(qv) + " is not bound");
    }
    char buf[sizeof(VertexId)];
    std::memcpy(buf, &v, sizeof v);
    key.append(buf, sizeof buf);
  }
  for (QEdgeId qe : cut.edges) {
    const EdgeId e = m.edge(qe);
    if (e == kNoEdge) {
      throw ContractError("join key: query edge " + std::to_string(qe) + " is not bound");
    }
    char buf[sizeof(EdgeId)];
    std::memcpy(buf, &e, sizeof e);
    key.append(buf, sizeof buf);
  }
  return key;
}

// ---------------------------------------------------------------------------
// MatchTable
// ---------------------------------------------------------------------------

bool MatchTable::insert(const JoinKey& key, Match m) {
  if (!signatures_.insert(m.signature()).second) return false;
  buckets_[key].push_back(std::move(m));
  ++size_;
  return true;
}

const std::vector<Match>* MatchTable::bucket(const JoinKey& key) const {
  auto it = buckets_.find(key);
  return it == buckets_.end() ? nullptr : &it->second;
}

std::size_t MatchTable::purge(const Window& window, Timestamp t_last) {
  if (window.is_infinite()) return 0;
  std::size_t removed = 0;
  for (auto it = buckets_.begin(); it != buckets_.end();) {
    auto& matches = it->second;
    auto keep_end = std::remove_if(matches.begin(), matches.end(), [&](const Match& m) {
      if (!window.expired(m.t_max(), t_last)) return false;
      signatures_.erase(m.signature());
      return true;
    });
    removed += static_cast<std::size_t>(matches.end() - keep_end);
    matches.erase(keep_end, matches.end());
    it = matches.empty() ? buckets_.erase(it) : std::next(it);
  }
  size_ -= removed;
  return removed;
}

void MatchTable::clear() {
  buckets_.clear();
  signatures_.clear();
  size_ = 0;
}

// ---------------------------------------------------------------------------
// construction
// ---------------------------------------------------------------------------

SJTree SJTree::left_deep(QueryGraph query, const std::vector<std::vector<QEdgeId>>& leaves) {
  if (leaves.empty()) throw ValidationError("a decomposition needs at least one leaf");
  SJTree t;
  t.query_ = std::move(query);
  const auto L = static_cast<NodeId>(leaves.size());
  t.nodes_.resize(L == 1 ? 1 : 2 * L - 1);
  for (NodeId i = 0; i < L; ++i) {
    for (QEdgeId e : leaves[i]) {
      if (e >= t.query_.edge_count()) throw ValidationError("leaf names unknown query edge " + std::to_string(e));
    }
    SJTreeNode& n = t.nodes_[i];
    n.id = i;
    n.subgraph = t.query_.subgraph_of(leaves[i]);
    n.leaf_index = i;
    t.leaves_.push_back(i);
  }
  NodeId left = 0;
  for (NodeId k = 1; k < L; ++k) {
    const NodeId id = L + k - 1;
    SJTreeNode& n = t.nodes_[id];
    n.id = id;
    n.left = left;
    n.right = k;
    n.subgraph = subgraph_union(t.nodes_[left].subgraph, t.nodes_[k].subgraph);
    n.cut = subgraph_intersection(t.nodes_[left].subgraph, t.nodes_[k].subgraph);
    t.nodes_[left].parent = id;
    t.nodes_[k].parent = id;
    left = id;
  }
  t.root_ = left;
  t.validate();
  return t;
}

NodeId SJTree::prefix_node(std::size_t i) const {
  if (i == 0) return leaves_.at(0);
  return *nodes_[leaves_.at(i)].parent;
}

std::optional<NodeId> SJTree::sibling(NodeId n) const {
  const auto& p = nodes_.at(n).parent;
  if (!p) return std::nullopt;
  const SJTreeNode& parent = nodes_[*p];
  return *parent.left == n ? parent.right : parent.left;
}

// ---------------------------------------------------------------------------
// propagation
// ---------------------------------------------------------------------------

bool SJTree::admissible(const Match& m, const PropagationContext& ctx) const {
  return ctx.window.admits_span(m.time_span()) && !ctx.window.expired(m.t_min(), ctx.t_last);
}

std::size_t SJTree::insert_and_propagate(NodeId n, Match m, const PropagationContext& ctx) {
  if (!admissible(m, ctx)) return 0;
  if (n == root_) return ctx.emit && ctx.emit(m) ? 1 : 0;

  SJTreeNode& node = nodes_[n];
  if (node.table.contains(m)) return 0;
  const NodeId parent = *node.parent;
  const NodeId sib = *sibling(n);
  const JoinKey key = get_join_key(nodes_[parent].cut, m);

  // Probe first, store second, recurse last: the recursion may touch other
  // tables but never the bucket scanned here.
  std::vector<Match> joined;
  if (const auto* bucket = nodes_[sib].table.bucket(key)) {
    for (const Match& other : *bucket) {
      if (auto j = join(other, m); j && admissible(*j, ctx)) joined.push_back(std::move(*j));
    }
  }
  const Match* stored = nullptr;
  if (node.table.insert(key, m)) {
    ++stored_;
    stored = &m;
  }
  if (stored && ctx.on_stored) ctx.on_stored(n, *stored);

  std::size_t emitted = 0;
  for (Match& j : joined) {
    if (parent == root_) {
      if (ctx.emit && ctx.emit(j)) ++emitted;
    } else {
      emitted += insert_and_propagate(parent, std::move(j), ctx);
    }
  }
  return emitted;
}

std::size_t SJTree::purge_stale(Timestamp t_last, const Window& window) {
  std::size_t removed = 0;
  for (auto& n : nodes_) removed += n.table.purge(window, t_last);
  stored_ -= removed;
  return removed;
}

void SJTree::clear_matches() {
  for (auto& n : nodes_) n.table.clear();
  stored_ = 0;
}

// ---------------------------------------------------------------------------
// validation
// ---------------------------------------------------------------------------

void SJTree::validate() const {
  if (nodes_.empty()) throw ValidationError("empty SJ-Tree");
  const auto n_nodes = static_cast<NodeId>(nodes_.size());
  auto in_range = [&](const std::optional<NodeId>& x) { return !x || *x < n_nodes; };

  std::size_t roots = 0;
  for (const auto& n : nodes_) {
    std::string where = "node " + std::to_string(n.id) + ": ";
    if (n.id < source_lines_.size()) where = "line " + std::to_string(source_lines_[n.id]) + ", " + where;
    if (!in_range(n.parent) || !in_range(n.left) || !in_range(n.right)) {
      throw ValidationError(where + "link to a nonexistent node");
    }
    if (!n.parent) ++roots;
    if (n.left.has_value() != n.right.has_value()) {
      throw ValidationError(where + "internal nodes need exactly two children");
    }
    if (n.parent) {
      const auto& p = nodes_[*n.parent];
      if (p.left != n.id && p.right != n.id) throw ValidationError(where + "parent does not list it as a child");
    }
    if (n.is_leaf()) {
      if (!n.leaf_index) throw ValidationError(where + "leaf without leaf_index");
      if (n.subgraph.edges.empty()) throw ValidationError(where + "leaf with no edges");
      if (!n.cut.empty()) throw ValidationError(where + "leaf with a cut-subgraph");
      if (!query_.is_connected(n.subgraph)) throw ValidationError(where + "leaf subgraph is not connected");
    } else {
      if (n.leaf_index) throw ValidationError(where + "internal node with leaf_index");
      const auto& l = nodes_[*n.left];
      const auto& r = nodes_[*n.right];
      if (l.parent != n.id || r.parent != n.id) throw ValidationError(where + "child does not point back");
      if (!r.is_leaf()) throw ValidationError(where + "right child is not a leaf (tree must be left-deep)");
      if (n.subgraph != subgraph_union(l.subgraph, r.subgraph)) {
        throw ValidationError(where + "subgraph is not the join of its children");
      }
      if (n.cut != subgraph_intersection(l.subgraph, r.subgraph)) {
        throw ValidationError(where + "cut-subgraph is not the intersection of its children");
      }
    }
    if (n.subgraph != query_.subgraph_of(n.subgraph.edges)) {
      throw ValidationError(where + "subgraph vertices do not match its edges");
    }
  }
  if (roots != 1 || nodes_[root_].parent) throw ValidationError("SJ-Tree must have exactly one root");
  if (nodes_[root_].subgraph != query_.whole()) {
    throw ValidationError("root subgraph does not cover the query");
  }

  // leaves in left-to-right order must carry leaf_index 0..L-1
  std::vector<NodeId> order;
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    const auto& n = nodes_[id];
    if (n.is_leaf()) {
      order.push_back(id);
    } else {
      stack.push_back(*n.right);
      stack.push_back(*n.left);
    }
    if (order.size() > nodes_.size()) throw ValidationError("SJ-Tree contains a cycle");
  }
  if (order != leaves_) throw ValidationError("leaf list disagrees with tree order");
  std::set<QEdgeId> seen;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& leaf = nodes_[order[i]];
    if (leaf.leaf_index != i) {
      throw ValidationError("leaf_index of node " + std::to_string(leaf.id) + " is not its left-to-right position");
    }
    for (QEdgeId e : leaf.subgraph.edges) {
      if (!seen.insert(e).second) throw ValidationError("query edge " + std::to_string(e) + " appears in two leaves");
    }
  }
}

bool SJTree::same_structure(const SJTree& other) const {
  if (!(query_ == other.query_) || root_ != other.root_ || leaves_ != other.leaves_ ||
      nodes_.size() != other.nodes_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& a = nodes_[i];
    const auto& b = other.nodes_[i];
    if (a.id != b.id || a.subgraph != b.subgraph || a.cut != b.cut || a.parent != b.parent ||
        a.left != b.left || a.right != b.right || a.leaf_index != b.leaf_index) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// plan text
// ---------------------------------------------------------------------------

namespace {

template <class T>
std::string opt(const std::optional<T>& x) {
  return x ? std::to_string(*x) : "-";
}

}  // namespace

std::string SJTree::serialize() const {
  std::ostringstream out;
  out << "sjtree " << nodes_.size() << '\n';
  for (const auto& n : nodes_) {
    out << "node " << n.id << " parent=" << opt(n.parent) << " left=" << opt(n.left)
        << " right=" << opt(n.right) << " leaf_index=" << opt(n.leaf_index) << '\n';
    for (QEdgeId e : n.subgraph.edges) out << "  subgraph: edge " << e << '\n';
    out << "  cut:";
    if (n.cut.empty()) out << " empty";
    if (!n.cut.vertices.empty()) {
      out << " vertex";
      for (QVertexId v : n.cut.vertices) out << ' ' << v;
    }
    if (!n.cut.edges.empty()) {
      out << " edge";
      for (QEdgeId e : n.cut.edges) out << ' ' << e;
    }
    out << '\n';
  }
  return out.str();
}

SJTree SJTree::deserialize(const std::string& text, const QueryGraph& query) {
  SJTree t;
  t.query_ = query;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> declared;
  SJTreeNode* current = nullptr;
  std::vector<bool> seen_cut;
  std::vector<std::size_t> node_line;

  auto parse_id = [&](const std::string& s, std::size_t ln) -> std::uint64_t {
    if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) throw ParseError("expected an id, got '" + s + "'", ln);
    return std::stoull(s);
  };
  auto parse_link = [&](const std::string& tok, const std::string& name,
                        std::size_t ln) -> std::optional<std::uint64_t> {
    const std::string prefix = name + "=";
    if (tok.rfind(prefix, 0) != 0) throw ParseError("expected '" + prefix + "...'", ln);
    const std::string v = tok.substr(prefix.size());
    if (v == "-") return std::nullopt;
    return parse_id(v, ln);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind) || kind[0] == '#') continue;
    if (kind == "sjtree") {
      std::string n;
      if (declared || !(fields >> n)) throw ParseError("bad 'sjtree <num_nodes>' header", line_no);
      declared = parse_id(n, line_no);
      if (*declared == 0 || *declared > 4096) throw ParseError("implausible node count", line_no);
      t.nodes_.resize(*declared);
      seen_cut.assign(*declared, false);
      node_line.assign(*declared, 0);
    } else if (kind == "node") {
      if (!declared) throw ParseError("'node' before 'sjtree' header", line_no);
      std::string id, p, l, r, k;
      if (!(fields >> id >> p >> l >> r >> k)) throw ParseError("incomplete node record", line_no);
      const auto nid = parse_id(id, line_no);
      if (nid >= *declared) throw ParseError("node id out of range", line_no);
      if (node_line[nid]) throw ParseError("duplicate node " + id, line_no);
      node_line[nid] = line_no;
      current = &t.nodes_[nid];
      current->id = static_cast<NodeId>(nid);
      auto as_node = [](std::optional<std::uint64_t> x) -> std::optional<NodeId> {
        if (!x) return std::nullopt;
        return static_cast<NodeId>(*x);
      };
      current->parent = as_node(parse_link(p, "parent", line_no));
      current->left = as_node(parse_link(l, "left", line_no));
      current->right = as_node(parse_link(r, "right", line_no));
      if (auto li = parse_link(k, "leaf_index", line_no)) current->leaf_index = *li;
    } else if (kind == "subgraph:") {
      if (!current) throw ParseError("'subgraph:' outside a node", line_no);
      std::string word;
      if (!(fields >> word) || word != "edge") throw ParseError("expected 'subgraph: edge <id>'", line_no);
      std::string e;
      bool any = false;
      while (fields >> e) {
        const auto qe = parse_id(e, line_no);
        if (qe >= query.edge_count()) throw ParseError("query has no edge " + e, line_no);
        current->subgraph.edges.push_back(static_cast<QEdgeId>(qe));
        any = true;
      }
      if (!any) throw ParseError("'subgraph: edge' without ids", line_no);
    } else if (kind == "cut:") {
      if (!current) throw ParseError("'cut:' outside a node", line_no);
      if (seen_cut[current->id]) throw ParseError("second cut line for node", line_no);
      seen_cut[current->id] = true;
      std::string word;
      std::string mode;
      bool empty_kw = false;
      while (fields >> word) {
        if (word == "empty") {
          empty_kw = true;
        } else if (word == "vertex" || word == "edge") {
          mode = word;
        } else if (mode == "vertex") {
          const auto qv = parse_id(word, line_no);
          if (qv >= query.vertex_count()) throw ParseError("query has no vertex " + word, line_no);
          current->cut.vertices.push_back(static_cast<QVertexId>(qv));
        } else if (mode == "edge") {
          const auto qe = parse_id(word, line_no);
          if (qe >= query.edge_count()) throw ParseError("query has no edge " + word, line_no);
          current->cut.edges.push_back(static_cast<QEdgeId>(qe));
        } else {
          throw ParseError("unexpected token '" + word + "' in cut", line_no);
        }
      }
      if (empty_kw == !current->cut.empty()) {
        // either "empty" plus ids, or nothing at all
        throw ParseError("cut must be 'empty' or list vertices/edges", line_no);
      }
    } else {
      throw ParseError("unknown record '" + kind + "'", line_no);
    }
  }
  if (!declared) throw ParseError("missing 'sjtree' header", line_no);
  for (std::size_t i = 0; i < t.nodes_.size(); ++i) {
    if (!node_line[i]) throw ParseError("node " + std::to_string(i) + " is declared but missing", line_no);
    if (!seen_cut[i]) throw ParseError("node " + std::to_string(i) + " has no cut line", node_line[i]);
  }

  std::vector<std::pair<std::size_t, NodeId>> leaves;
  std::optional<NodeId> root;
  for (auto& n : t.nodes_) {
    const std::size_t ln = node_line[n.id];
    auto sorted = [](auto& v) {
      std::sort(v.begin(), v.end());
      return std::adjacent_find(v.begin(), v.end()) == v.end();
    };
    if (!sorted(n.subgraph.edges) || !sorted(n.cut.edges) || !sorted(n.cut.vertices)) {
      throw ParseError("duplicate id in node " + std::to_string(n.id), ln);
    }
    n.subgraph = query.subgraph_of(n.subgraph.edges);
    if (n.leaf_index) leaves.emplace_back(*n.leaf_index, n.id);
    if (!n.parent) {
      if (root) throw ValidationError("line " + std::to_string(ln) + ": second root node");
      root = n.id;
    }
  }
  if (!root) throw ValidationError("plan has no root node");
  t.root_ = *root;
  std::sort(leaves.begin(), leaves.end());
  for (const auto& [idx, id] : leaves) t.leaves_.push_back(id);
  t.source_lines_ = node_line;
  try {
    t.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("invalid plan: ") + e.what());
  }
  return t;
}

}  // namespace dgq
