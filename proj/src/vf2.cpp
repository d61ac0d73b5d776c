#include "dgq/vf2.hpp"

#include <algorithm>

namespace dgq {

namespace {

class Vf2State {
 public:
  Vf2State(const DynamicGraph& g, const QueryGraph& q, const ResolvedQuery& rq, const EdgeRecord& seed,
           QEdgeId seed_qe, const Window& window, SignatureSet& seen, std::vector<Match>& out,
           std::uint64_t& states)
      : g_(g), q_(q), rq_(rq), seed_(seed), seed_qe_(seed_qe), window_(window), seen_(seen), out_(out),
        states_(states), core_(q.vertex_count(), kNoVertex) {
    order_.push_back(q.edge(seed_qe).src);
    if (q.edge(seed_qe).dst != order_[0]) order_.push_back(q.edge(seed_qe).dst);
    // breadth-first over the undirected query so each later vertex has a
    // mapped neighbour when its turn comes
    for (std::size_t i = 0; i < order_.size(); ++i) {
      for (const auto& e : q.edges()) {
        for (auto [a, b] : {std::pair{e.src, e.dst}, std::pair{e.dst, e.src}}) {
          if (a == order_[i] && std::find(order_.begin(), order_.end(), b) == order_.end()) order_.push_back(b);
        }
      }
    }
  }

  void run() {
    const QueryEdge& x = q_.edge(seed_qe_);
    if (!try_map(x.src, seed_.src)) return;
    if (x.src != x.dst) {
      if (!try_map(x.dst, seed_.dst)) {
        unmap(x.src);
        return;
      }
    }
    match(order_.size() > 1 && x.src != x.dst ? 2 : 1);
  }

 private:
  bool used(VertexId v) const { return std::find(core_.begin(), core_.end(), v) != core_.end(); }

  // A data edge with the query edge's label running the same way between the
  // images of its endpoints.
  bool has_edge(VertexId s, VertexId d, LabelId label) const {
    for (EdgeId id : g_.out_edges(s)) {
      const EdgeRecord& e = g_.edge(id);
      if (e.dst == d && e.edge_type == label) return true;
    }
    return false;
  }

  bool feasible(QVertexId u, VertexId v) const {
    if (g_.vertex_label(v) != rq_.vertex_labels[u] || used(v)) return false;
    for (QEdgeId qe = 0; qe < q_.edge_count(); ++qe) {
      const QueryEdge& x = q_.edge(qe);
      if (x.src != u && x.dst != u) continue;
      const VertexId s = x.src == u ? v : core_[x.src];
      const VertexId d = x.dst == u ? v : core_[x.dst];
      if (s == kNoVertex || d == kNoVertex) continue;
      if (!has_edge(s, d, rq_.edge_labels[qe])) return false;
    }
    return true;
  }

  bool try_map(QVertexId u, VertexId v) {
    ++states_;
    if (!feasible(u, v)) return false;
    core_[u] = v;
    return true;
  }
  void unmap(QVertexId u) { core_[u] = kNoVertex; }

  void match(std::size_t depth) {
    if (depth == order_.size()) {
      assign_edges();
      return;
    }
    const QVertexId u = order_[depth];
    std::vector<VertexId> candidates;
    // one mapped neighbour bounds the candidates; feasible() checks the rest
    for (const auto& x : q_.edges()) {
      if (x.src == u && x.dst != u && core_[x.dst] != kNoVertex) {
        for (EdgeId id : g_.in_edges(core_[x.dst])) candidates.push_back(g_.edge(id).src);
        break;
      }
      if (x.dst == u && x.src != u && core_[x.src] != kNoVertex) {
        for (EdgeId id : g_.out_edges(core_[x.src])) candidates.push_back(g_.edge(id).dst);
        break;
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (VertexId v : candidates) {
      if (!try_map(u, v)) continue;
      match(depth + 1);
      unmap(u);
    }
  }

  // All vertices are mapped; every query edge now picks one of the parallel
  // data edges between its endpoint images.
  void assign_edges() {
    Match m(q_.edge_count(), q_.vertex_count());
    if (!m.bind(q_, seed_qe_, seed_)) return;
    assign(m, 0);
  }

  void assign(const Match& m, QEdgeId qe) {
    if (qe == q_.edge_count()) {
      if (!window_.admits_span(m.time_span()) || window_.expired(m.t_min(), seed_.timestamp)) return;
      if (seen_.insert(m.signature()).second) out_.push_back(m);
      return;
    }
    if (qe == seed_qe_) {
      assign(m, qe + 1);
      return;
    }
    const QueryEdge& x = q_.edge(qe);
    for (EdgeId id : g_.out_edges(core_[x.src])) {
      const EdgeRecord& e = g_.edge(id);
      if (e.dst != core_[x.dst] || !rq_.compatible(q_, qe, e)) continue;
      Match next = m;
      if (next.bind(q_, qe, e)) assign(next, qe + 1);
    }
  }

  const DynamicGraph& g_;
  const QueryGraph& q_;
  const ResolvedQuery& rq_;
  const EdgeRecord& seed_;
  QEdgeId seed_qe_;
  const Window& window_;
  SignatureSet& seen_;
  std::vector<Match>& out_;
  std::uint64_t& states_;
  std::vector<VertexId> core_;
  std::vector<QVertexId> order_;
};

}  // namespace

std::vector<Match> vf2_baseline(const DynamicGraph& g, const QueryGraph& q, const ResolvedQuery& rq,
                                const EdgeRecord& new_edge, const Window& window, SignatureSet& seen,
                                std::uint64_t* states) {
  std::vector<Match> out;
  std::uint64_t local = 0;
  for (QEdgeId qe = 0; qe < q.edge_count(); ++qe) {
    if (!rq.compatible(q, qe, new_edge)) continue;
    Vf2State(g, q, rq, new_edge, qe, window, seen, out, local).run();
  }
  if (states) *states += local;
  return out;
}

Vf2Engine::Vf2Engine(QueryGraph query, Window window, bool keep_matches)
    : query_(std::move(query)), graph_(window), log_(keep_matches) {
  rq_ = ResolvedQuery::resolve(query_, graph_.labels());
}

const std::vector<Match>& Vf2Engine::process(const StreamEdge& input) {
  const EdgeId id = graph_.add_edge(input);
  ++searches_;
  step_ = vf2_baseline(graph_, query_, rq_, graph_.edge(id), graph_.window(), seen_, &states_);
  for (const Match& m : step_) log_.add(m);
  return step_;
}

}  // namespace dgq
