#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "dgq/graph.hpp"
#include "dgq/query.hpp"
#include "dgq/sjtree.hpp"

namespace dgq {

enum class Strategy { Single, SingleLazy, Path, PathLazy, VF2 };

std::string to_string(Strategy s);
/// Accepts single|singlelazy|path|pathlazy|vf2 (case-insensitive).
Strategy parse_strategy(std::string_view name);
bool is_lazy(Strategy s);

/// All matches of the primitive `sub` (1 to 3 edges of q) in the live window
/// that bind `anchor` to one of sub's query edges. The anchor is tried at every
/// compatible query edge. Throws UnsupportedPrimitive for larger subgraphs.
std::vector<Match> match_primitive(const DynamicGraph& g, const QueryGraph& q, const ResolvedQuery& rq,
                                   const Subgraph& sub, const EdgeRecord& anchor);

/// Convenience form for a standalone primitive query; labels the graph has
/// never seen simply produce no matches.
std::vector<Match> match_primitive(DynamicGraph& g, const QueryGraph& sub, const EdgeRecord& anchor);

/// Append-only record of emitted complete matches.
class ResultLog {
 public:
  struct Entry {
    std::uint64_t seq;
    Match match;
  };

  explicit ResultLog(bool keep_matches = true) : keep_(keep_matches) {}

  /// Returns false (and logs nothing) for an already-seen signature.
  bool add(const Match& m);
  bool contains(const Match& m) const { return signatures_.contains(m.signature()); }
  std::uint64_t size() const { return count_; }
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  bool keep_;
  std::uint64_t count_ = 0;
  std::vector<Entry> entries_;
  std::unordered_set<std::vector<EdgeId>, SignatureHash> signatures_;
};

/// Per-vertex search activation for leaves 1..L-1.
///
/// Each vertex holds a level per leaf: 0 when the vertex belongs to a stored
/// partial match of the preceding prefix, d > 0 when it is d compatible hops
/// from such a vertex. A leaf is searched around an edge when either endpoint
/// has a level. Levels only decrease, so the enabled set only grows.
class SearchBitmap {
 public:
  static constexpr std::uint8_t kUnreached = 0xff;

  explicit SearchBitmap(std::size_t leaves = 0) : levels_(leaves) {}

  std::uint8_t level(std::size_t leaf, VertexId v) const {
    const auto& row = levels_.at(leaf);
    return v < row.size() ? row[v] : kUnreached;
  }
  bool enabled(std::size_t leaf, VertexId v) const { return leaf == 0 || level(leaf, v) != kUnreached; }
  /// Returns true if the level went down.
  bool lower(std::size_t leaf, VertexId v, std::uint8_t level);
  std::size_t enabled_count(std::size_t leaf) const;

 private:
  std::vector<std::vector<std::uint8_t>> levels_;
};

struct EngineMetrics {
  std::uint64_t edges = 0;
  std::uint64_t primitive_calls = 0;
  std::uint64_t retroactive_calls = 0;  // subset of primitive_calls
  std::uint64_t leaf_matches = 0;
  std::uint64_t emitted = 0;
  std::size_t stored = 0;
  std::size_t peak_stored = 0;
};

/// Incremental continuous-query engine over one SJ-Tree.
///
/// Non-lazy mode searches every leaf around every new edge. Lazy mode searches
/// leaf 0 everywhere and leaf i > 0 only near stored partial matches of leaves
/// 0..i-1, searching retroactively when a region becomes active.
class Engine {
 public:
  static constexpr std::uint64_t kPurgeInterval = 1u << 14;

  Engine(SJTree tree, Window window, bool lazy, bool keep_matches = true);

  /// Adds one edge and returns the complete matches it produced.
  const std::vector<Match>& process(const StreamEdge& e);
  /// Feeds a batch edge by edge; on_step sees each edge's delta.
  std::uint64_t process_batch(std::span<const StreamEdge> batch,
                              const std::function<void(const std::vector<Match>&)>& on_step = {});

  const DynamicGraph& graph() const { return graph_; }
  const SJTree& tree() const { return tree_; }
  const EngineMetrics& metrics() const { return metrics_; }
  const ResultLog& results() const { return log_; }
  const SearchBitmap& bitmap() const { return bitmap_; }
  bool lazy() const { return lazy_; }

 private:
  struct Activation {
    std::size_t leaf;
    std::vector<VertexId> vertices;
  };

  void sync_anchor_marks(EdgeId new_id);
  std::uint64_t& anchor_mark(EdgeId id) { return anchored_[id - anchored_base_]; }
  bool leaf_accepts(std::size_t leaf, const EdgeRecord& e) const;
  void search(std::size_t leaf, const EdgeRecord& e, bool retroactive);
  void lower(std::size_t leaf, VertexId v, std::uint8_t level);
  void drain_activations();

  SJTree tree_;
  DynamicGraph graph_;
  ResolvedQuery rq_;
  bool lazy_;
  ResultLog log_;
  PropagationContext ctx_;
  SearchBitmap bitmap_;
  std::vector<std::uint8_t> radius_;      // per leaf
  std::vector<bool> gated_;               // per leaf: lazy gating applies
  std::vector<std::size_t> prefix_leaf_;  // node id -> leaf enabled by matches stored there, or npos
  std::deque<std::uint64_t> anchored_;    // per live edge: bit i = leaf i already searched
  EdgeId anchored_base_ = 0;
  std::deque<Activation> pending_;
  bool draining_ = false;
  std::vector<Match> step_;
  EngineMetrics metrics_;
};

}  // namespace dgq
