#include "dgq/engine.hpp"

#include <algorithm>
#include <cctype>

namespace dgq {

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Single: return "Single";
    case Strategy::SingleLazy: return "SingleLazy";
    case Strategy::Path: return "Path";
    case Strategy::PathLazy: return "PathLazy";
    case Strategy::VF2: return "VF2";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "single") return Strategy::Single;
  if (s == "singlelazy") return Strategy::SingleLazy;
  if (s == "path") return Strategy::Path;
  if (s == "pathlazy") return Strategy::PathLazy;
  if (s == "vf2") return Strategy::VF2;
  throw ContractError("unknown strategy '" + std::string(name) + "'");
}

bool is_lazy(Strategy s) { return s == Strategy::SingleLazy || s == Strategy::PathLazy; }

// ---------------------------------------------------------------------------
// primitive search
// ---------------------------------------------------------------------------

namespace {

struct PrimitiveSearch {
  const DynamicGraph& g;
  const QueryGraph& q;
  const ResolvedQuery& rq;
  std::vector<Match>& out;

  void extend(const Match& m, std::vector<QEdgeId>& remaining) {
    if (remaining.empty()) {
      out.push_back(m);
      return;
    }
    // next query edge with a bound endpoint; the primitive is connected
    auto pos = std::find_if(remaining.begin(), remaining.end(), [&](QEdgeId qe) {
      const QueryEdge& x = q.edge(qe);
      return m.vertex(x.src) != kNoVertex || m.vertex(x.dst) != kNoVertex;
    });
    if (pos == remaining.end()) return;
    const QEdgeId qe = *pos;
    const QueryEdge& x = q.edge(qe);
    std::swap(*pos, remaining.back());
    remaining.pop_back();

    const VertexId vs = m.vertex(x.src);
    const auto candidates = vs != kNoVertex ? g.out_edges(vs) : g.in_edges(m.vertex(x.dst));
    for (EdgeId id : candidates) {
      const EdgeRecord& e = g.edge(id);
      if (!rq.compatible(q, qe, e)) continue;
      Match next = m;
      if (next.bind(q, qe, e)) extend(next, remaining);
    }

    remaining.push_back(qe);
    std::swap(*pos, remaining.back());
  }
};

}  // namespace

std::vector<Match> match_primitive(const DynamicGraph& g, const QueryGraph& q, const ResolvedQuery& rq,
                                   const Subgraph& sub, const EdgeRecord& anchor) {
  if (sub.edges.size() > 3) {
    throw UnsupportedPrimitive("primitive search handles at most 3 edges, got " +
                               std::to_string(sub.edges.size()));
  }
  std::vector<Match> out;
  PrimitiveSearch search{g, q, rq, out};
  for (QEdgeId qe : sub.edges) {
    if (!rq.compatible(q, qe, anchor)) continue;
    Match m(q.edge_count(), q.vertex_count());
    if (!m.bind(q, qe, anchor)) continue;
    std::vector<QEdgeId> remaining;
    for (QEdgeId other : sub.edges) {
      if (other != qe) remaining.push_back(other);
    }
    search.extend(m, remaining);
  }
  return out;
}

std::vector<Match> match_primitive(DynamicGraph& g, const QueryGraph& sub, const EdgeRecord& anchor) {
  ResolvedQuery rq;
  for (const auto& l : sub.vertex_labels()) {
    auto id = g.labels().find(l);
    if (!id) return {};
    rq.vertex_labels.push_back(*id);
  }
  for (const auto& e : sub.edges()) {
    auto id = g.labels().find(e.label);
    if (!id) return {};
    rq.edge_labels.push_back(*id);
  }
  return match_primitive(g, sub, rq, sub.whole(), anchor);
}

// ---------------------------------------------------------------------------
// ResultLog / SearchBitmap
// ---------------------------------------------------------------------------

bool ResultLog::add(const Match& m) {
  if (!signatures_.insert(m.signature()).second) return false;
  ++count_;
  if (keep_) entries_.push_back({count_, m});
  return true;
}

bool SearchBitmap::lower(std::size_t leaf, VertexId v, std::uint8_t level) {
  auto& row = levels_.at(leaf);
  if (v >= row.size()) row.resize(static_cast<std::size_t>(v) + 1, kUnreached);
  if (row[v] <= level) return false;
  row[v] = level;
  return true;
}

std::size_t SearchBitmap::enabled_count(std::size_t leaf) const {
  if (leaf == 0) return 0;
  const auto& row = levels_.at(leaf);
  return static_cast<std::size_t>(std::count_if(row.begin(), row.end(), [](std::uint8_t x) { return x != kUnreached; }));
}

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

Engine::Engine(SJTree tree, Window window, bool lazy, bool keep_matches)
    : tree_(std::move(tree)), graph_(window), lazy_(lazy), log_(keep_matches), bitmap_(tree_.leaf_count()) {
  const std::size_t L = tree_.leaf_count();
  if (L > 64) throw UnsupportedPrimitive("at most 64 leaves are supported");
  rq_ = ResolvedQuery::resolve(tree_.query(), graph_.labels());

  radius_.resize(L);
  gated_.assign(L, false);
  prefix_leaf_.assign(tree_.nodes().size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < L; ++i) {
    const auto& sub = tree_.node(tree_.leaves()[i]).subgraph;
    radius_[i] = static_cast<std::uint8_t>(sub.edges.size() - 1);
    if (i > 0) {
      prefix_leaf_[tree_.prefix_node(i - 1)] = i;
      // a leaf sharing no vertex with its prefix has no region to activate
      const auto& cut = tree_.node(*tree_.node(tree_.leaves()[i]).parent).cut;
      gated_[i] = lazy_ && !cut.vertices.empty();
    }
  }

  ctx_.window = window;
  ctx_.emit = [this](const Match& m) {
    if (!log_.add(m)) return false;
    step_.push_back(m);
    return true;
  };
  ctx_.on_stored = [this](NodeId n, const Match& m) {
    if (!lazy_) return;
    const std::size_t leaf = prefix_leaf_[n];
    if (leaf == static_cast<std::size_t>(-1) || !gated_[leaf]) return;
    Activation a{leaf, {}};
    for (VertexId v : m.bindings()) {
      if (v != kNoVertex) a.vertices.push_back(v);
    }
    pending_.push_back(std::move(a));
  };
}

void Engine::sync_anchor_marks(EdgeId new_id) {
  if (anchored_.empty()) anchored_base_ = new_id;
  while (anchored_base_ + anchored_.size() <= new_id) anchored_.push_back(0);
  const EdgeId oldest = graph_.edges().front().id;
  while (anchored_base_ < oldest) {
    anchored_.pop_front();
    ++anchored_base_;
  }
}

bool Engine::leaf_accepts(std::size_t leaf, const EdgeRecord& e) const {
  const auto& sub = tree_.node(tree_.leaves()[leaf]).subgraph;
  return std::any_of(sub.edges.begin(), sub.edges.end(),
                     [&](QEdgeId qe) { return rq_.compatible(tree_.query(), qe, e); });
}

void Engine::search(std::size_t leaf, const EdgeRecord& e, bool retroactive) {
  if (!leaf_accepts(leaf, e)) return;
  std::uint64_t& mark = anchor_mark(e.id);
  const std::uint64_t bit = std::uint64_t{1} << leaf;
  if (mark & bit) return;
  mark |= bit;
  ++metrics_.primitive_calls;
  if (retroactive) ++metrics_.retroactive_calls;

  const NodeId node = tree_.leaves()[leaf];
  auto found = match_primitive(graph_, tree_.query(), rq_, tree_.node(node).subgraph, e);
  metrics_.leaf_matches += found.size();
  for (Match& m : found) tree_.insert_and_propagate(node, std::move(m), ctx_);
}

void Engine::lower(std::size_t leaf, VertexId v, std::uint8_t level) {
  if (!bitmap_.lower(leaf, v, level)) return;
  // Retroactive search: whatever already sits around v may complete a match.
  for (auto ids : {graph_.out_edges(v), graph_.in_edges(v)}) {
    for (EdgeId id : ids) search(leaf, graph_.edge(id), true);
  }
  if (level >= radius_[leaf]) return;
  for (auto ids : {graph_.out_edges(v), graph_.in_edges(v)}) {
    for (EdgeId id : ids) {
      const EdgeRecord& e = graph_.edge(id);
      if (leaf_accepts(leaf, e)) lower(leaf, e.other(v), static_cast<std::uint8_t>(level + 1));
    }
  }
}

void Engine::drain_activations() {
  if (draining_) return;
  draining_ = true;
  while (!pending_.empty()) {
    Activation a = std::move(pending_.front());
    pending_.pop_front();
    for (VertexId v : a.vertices) lower(a.leaf, v, 0);
  }
  draining_ = false;
}

const std::vector<Match>& Engine::process(const StreamEdge& input) {
  step_.clear();
  const EdgeId id = graph_.add_edge(input);
  sync_anchor_marks(id);
  ctx_.t_last = *graph_.t_last();
  const EdgeRecord e = graph_.edge(id);

  for (std::size_t i = 0; i < tree_.leaf_count(); ++i) {
    if (!gated_[i]) {
      search(i, e, false);
    } else if (leaf_accepts(i, e)) {
      // the new edge extends the reach of an active region
      for (VertexId x : {e.src, e.dst}) {
        const std::uint8_t l = bitmap_.level(i, x);
        if (l < radius_[i]) lower(i, e.other(x), static_cast<std::uint8_t>(l + 1));
      }
      if (bitmap_.enabled(i, e.src) || bitmap_.enabled(i, e.dst)) search(i, e, false);
    }
    drain_activations();
  }

  ++metrics_.edges;
  if (metrics_.edges % kPurgeInterval == 0) tree_.purge_stale(ctx_.t_last, graph_.window());
  metrics_.emitted = log_.size();
  metrics_.stored = tree_.stored_matches();
  metrics_.peak_stored = std::max(metrics_.peak_stored, metrics_.stored);
  return step_;
}

std::uint64_t Engine::process_batch(std::span<const StreamEdge> batch,
                                    const std::function<void(const std::vector<Match>&)>& on_step) {
  std::uint64_t emitted = 0;
  for (const auto& e : batch) {
    const auto& delta = process(e);
    emitted += delta.size();
    if (on_step) on_step(delta);
  }
  return emitted;
}

}  // namespace dgq
