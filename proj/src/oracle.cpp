#include "dgq/oracle.hpp"

#include <algorithm>

namespace dgq {

namespace {

struct Enumerator {
  const DynamicGraph& g;
  const QueryGraph& q;
  std::vector<QEdgeId> order;
  std::vector<std::vector<const EdgeRecord*>> candidates;  // per qedge
  std::vector<VertexId> vmap;
  std::vector<const EdgeRecord*> emap;
  std::vector<Match>& out;

  bool vertex_taken(VertexId v, QVertexId except) const {
    for (QVertexId u = 0; u < vmap.size(); ++u) {
      if (u != except && vmap[u] == v) return true;
    }
    return false;
  }

  bool edge_taken(const EdgeRecord* e) const { return std::find(emap.begin(), emap.end(), e) != emap.end(); }

  void run(std::size_t depth) {
    if (depth == order.size()) {
      record();
      return;
    }
    const QEdgeId qe = order[depth];
    const QueryEdge& x = q.edge(qe);
    for (const EdgeRecord* e : candidates[qe]) {
      if (edge_taken(e)) continue;
      const VertexId old_s = vmap[x.src];
      const VertexId old_d = vmap[x.dst];
      if (old_s != kNoVertex && old_s != e->src) continue;
      if (old_d != kNoVertex && old_d != e->dst) continue;
      if (old_s == kNoVertex && vertex_taken(e->src, x.src)) continue;
      if (old_d == kNoVertex && vertex_taken(e->dst, x.dst)) continue;
      if (x.src != x.dst && e->src == e->dst) continue;
      vmap[x.src] = e->src;
      vmap[x.dst] = e->dst;
      emap[qe] = e;
      run(depth + 1);
      emap[qe] = nullptr;
      vmap[x.src] = old_s;
      vmap[x.dst] = old_d;
    }
  }

  void record() {
    Timestamp lo = emap[0]->timestamp;
    Timestamp hi = lo;
    for (const EdgeRecord* e : emap) {
      lo = std::min(lo, e->timestamp);
      hi = std::max(hi, e->timestamp);
    }
    const Window w = g.window();
    if (!w.is_infinite() && (hi - lo >= w.seconds() || lo <= *g.t_last() - w.seconds())) return;
    Match m(q.edge_count(), q.vertex_count());
    for (QEdgeId qe = 0; qe < q.edge_count(); ++qe) {
      if (!m.bind(q, qe, *emap[qe])) throw ContractError("oracle produced an inconsistent match");
    }
    out.push_back(std::move(m));
  }
};

}  // namespace

std::vector<Match> brute_force_oracle(const DynamicGraph& g, const QueryGraph& q) {
  if (q.edge_count() > kOracleMaxQueryEdges) {
    throw ContractError("oracle refuses queries with more than " + std::to_string(kOracleMaxQueryEdges) +
                        " edges");
  }
  if (g.edge_count() > kOracleMaxWindowEdges) {
    throw ContractError("oracle refuses windows with more than " + std::to_string(kOracleMaxWindowEdges) +
                        " edges");
  }
  std::vector<Match> out;
  if (q.edge_count() == 0 || g.edge_count() == 0) return out;

  Enumerator en{g, q, {}, std::vector<std::vector<const EdgeRecord*>>(q.edge_count()),
                std::vector<VertexId>(q.vertex_count(), kNoVertex),
                std::vector<const EdgeRecord*>(q.edge_count(), nullptr), out};

  const auto& L = g.labels();
  for (const EdgeRecord& e : g.edges()) {
    for (QEdgeId qe = 0; qe < q.edge_count(); ++qe) {
      const QueryEdge& x = q.edge(qe);
      if (L.name(e.edge_type) == x.label && L.name(e.src_type) == q.vertex_label(x.src) &&
          L.name(e.dst_type) == q.vertex_label(x.dst) && (x.src == x.dst) == (e.src == e.dst)) {
        en.candidates[qe].push_back(&e);
      }
    }
  }

  // qedges in breadth-first order so each one after the first touches a bound
  // vertex and prunes early
  std::vector<bool> placed(q.edge_count(), false);
  std::vector<bool> seen_v(q.vertex_count(), false);
  while (en.order.size() < q.edge_count()) {
    QEdgeId pick = 0;
    bool found = false;
    for (QEdgeId qe = 0; qe < q.edge_count() && !found; ++qe) {
      if (placed[qe]) continue;
      if (en.order.empty() || seen_v[q.edge(qe).src] || seen_v[q.edge(qe).dst]) {
        pick = qe;
        found = true;
      }
    }
    if (!found) pick = static_cast<QEdgeId>(std::find(placed.begin(), placed.end(), false) - placed.begin());
    placed[pick] = true;
    seen_v[q.edge(pick).src] = seen_v[q.edge(pick).dst] = true;
    en.order.push_back(pick);
  }

  en.run(0);
  return out;
}

}  // namespace dgq
