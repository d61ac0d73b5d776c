#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dgq/query.hpp"

namespace dgq {

using NodeId = std::uint32_t;

/// Canonical byte encoding of a match's projection onto a cut-subgraph.
using JoinKey = std::string;

/// Data vertex ids of the cut's query vertices (ascending qvertex id), then
/// data edge ids of the cut's query edges (ascending qedge id). An empty cut
/// yields the empty key.
JoinKey get_join_key(const Subgraph& cut, const Match& m);

/// Matches stored at one SJ-Tree node, bucketed by join key and deduplicated by
/// signature.
class MatchTable {
 public:
  bool contains(const Match& m) const { return signatures_.contains(m.signature()); }
  /// Returns false if a match with the same signature is already stored.
  bool insert(const JoinKey& key, Match m);
  const std::vector<Match>* bucket(const JoinKey& key) const;

  /// Drops every match whose newest edge is expired. Returns how many.
  std::size_t purge(const Window& window, Timestamp t_last);

  std::size_t size() const { return size_; }
  template <class F>
  void for_each(F&& f) const {
    for (const auto& [key, matches] : buckets_) {
      for (const Match& m : matches) f(key, m);
    }
  }
  void clear();

 private:
  std::unordered_map<JoinKey, std::vector<Match>> buckets_;
  std::unordered_set<std::vector<EdgeId>, SignatureHash> signatures_;
  std::size_t size_ = 0;
};

struct SJTreeNode {
  NodeId id = 0;
  Subgraph subgraph;
  Subgraph cut;  // intersection of the children's subgraphs; empty for leaves
  std::optional<NodeId> parent;
  std::optional<NodeId> left;
  std::optional<NodeId> right;
  std::optional<std::size_t> leaf_index;
  MatchTable table;

  bool is_leaf() const { return !left && !right; }
};

/// Callbacks and clock used while propagating a match up the tree.
struct PropagationContext {
  Window window = Window::infinite();
  Timestamp t_last = 0;
  /// Receives each admissible complete match; returns true if it was new.
  std::function<bool(const Match&)> emit;
  /// Called after a match is stored at a non-root node.
  std::function<void(NodeId, const Match&)> on_stored;
};

/// Left-deep binary Subgraph Join Tree over a query.
///
/// Node ids: leaves are 0..L-1 in leaf order; the internal node joining leaves
/// 0..k has id L+k-1, so the root is 2L-2. A one-edge-leaf tree has a single
/// node that is both leaf and root.
class SJTree {
 public:
  /// Builds the left-deep tree whose leaves are `leaves` in order. Validates
  /// edge-disjointness and coverage of the query.
  static SJTree left_deep(QueryGraph query, const std::vector<std::vector<QEdgeId>>& leaves);

  const QueryGraph& query() const { return query_; }
  const std::vector<SJTreeNode>& nodes() const { return nodes_; }
  const SJTreeNode& node(NodeId id) const { return nodes_.at(id); }
  NodeId root() const { return root_; }
  const std::vector<NodeId>& leaves() const { return leaves_; }
  std::size_t leaf_count() const { return leaves_.size(); }
  /// Node whose subgraph is the union of leaves 0..i.
  NodeId prefix_node(std::size_t i) const;
  std::optional<NodeId> sibling(NodeId n) const;

  /// Stores m at node n after probing the sibling table under the parent's cut;
  /// every successful join is inserted at the parent in turn. Joins at the root
  /// are handed to ctx.emit when admissible. Returns the number of new complete
  /// matches emitted.
  std::size_t insert_and_propagate(NodeId n, Match m, const PropagationContext& ctx);

  /// Removes stored matches with t_max <= t_last - t_W.
  std::size_t purge_stale(Timestamp t_last, const Window& window);

  std::size_t stored_matches() const { return stored_; }
  void clear_matches();

  /// Checks Properties 1, 2 and 4, left-deepness and leaf order.
  void validate() const;

  std::string serialize() const;
  static SJTree deserialize(const std::string& text, const QueryGraph& query);

  /// Structural equality (ignores match tables).
  bool same_structure(const SJTree& other) const;

 private:
  bool admissible(const Match& m, const PropagationContext& ctx) const;

  QueryGraph query_;
  std::vector<SJTreeNode> nodes_;
  std::vector<NodeId> leaves_;
  NodeId root_ = 0;
  std::size_t stored_ = 0;
  std::vector<std::size_t> source_lines_;  // plan text line per node, for diagnostics
};

}  // namespace dgq
