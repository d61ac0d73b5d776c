#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "dgq/generator.hpp"
#include "dgq/graph.hpp"
#include "dgq/query.hpp"
#include "dgq/stats.hpp"

namespace dgq::test {

using SigSet = std::set<std::vector<EdgeId>>;

inline StreamEdge edge(Timestamp ts, std::string src, std::string src_type, std::string type, std::string dst,
                       std::string dst_type) {
  return StreamEdge{ts, std::move(src), std::move(src_type), std::move(type), std::move(dst), std::move(dst_type)};
}

inline SigSet sigs(const std::vector<Match>& ms) {
  SigSet s;
  for (const auto& m : ms) s.insert(m.signature());
  return s;
}

/// Streams over vertices v0..v{n-1}; vertex i always carries label L{i % vlabels}.
/// Edge labels are uniform, or power-law distributed when `skew` > 0.
/// Timestamps advance by 0, 1 or 2 per edge, so ties occur.
inline std::vector<StreamEdge> random_stream(Rng& rng, std::size_t edges, std::size_t vertices, std::size_t vlabels,
                                             std::size_t elabels, double skew = 0.0, bool loops = false) {
  std::vector<StreamEdge> out;
  Timestamp ts = 0;
  const PowerLaw types(elabels, skew);
  for (std::size_t i = 0; i < edges; ++i) {
    ts += static_cast<Timestamp>(rng.below(3));
    const auto s = rng.below(vertices);
    auto d = rng.below(vertices);
    if (!loops) {
      while (d == s) d = rng.below(vertices);
    }
    const auto t = skew > 0 ? types.sample(rng) : rng.below(elabels);
    out.push_back(edge(ts, "v" + std::to_string(s), "L" + std::to_string(s % vlabels), "T" + std::to_string(t),
                       "v" + std::to_string(d), "L" + std::to_string(d % vlabels)));
  }
  return out;
}

/// Unordered 2-edge paths by direct enumeration: every pair of distinct live
/// edges sharing an endpoint, counted once per shared endpoint, keyed exactly
/// like PathKey but computed from strings. Independent of count_2edge_paths.
/// A self-loop has an out and an in incidence at its vertex; that pair counts
/// as one path, as the per-vertex incidence formula implies.
inline std::map<std::string, std::uint64_t> enumerate_2edge_paths(const DynamicGraph& g) {
  const auto& L = g.labels();
  std::vector<const EdgeRecord*> es;
  for (const auto& e : g.edges()) es.push_back(&e);
  auto desc = [&](const EdgeRecord& e, bool out_role) {
    const std::string far = L.name(out_role ? e.dst_type : e.src_type);
    return std::make_tuple(L.name(e.edge_type), far, out_role ? 0 : 1);
  };
  std::map<std::string, std::uint64_t> counts;
  for (std::size_t i = 0; i < es.size(); ++i) {
    for (std::size_t j = i; j < es.size(); ++j) {
      const EdgeRecord& a = *es[i];
      const EdgeRecord& b = *es[j];
      if (i == j && !a.is_loop()) continue;
      // each (incidence of a, incidence of b) at a common vertex is one path
      for (int ra = 0; ra < 2; ++ra) {
        for (int rb = 0; rb < 2; ++rb) {
          if (i == j && !(ra == 0 && rb == 1)) continue;
          const VertexId va = ra == 0 ? a.src : a.dst;
          const VertexId vb = rb == 0 ? b.src : b.dst;
          if (va != vb) continue;
          auto da = desc(a, ra == 0);
          auto db = desc(b, rb == 0);
          if (db < da) std::swap(da, db);
          const std::string center = L.name(g.vertex_label(va));
          auto part = [](const auto& d) {
            return std::string(std::get<2>(d) == 0 ? "out" : "in") + ":" + std::get<0>(d) + ":" + std::get<1>(d);
          };
          counts[center + "{" + part(da) + "," + part(db) + "}"] += 1;
        }
      }
    }
  }
  return counts;
}

}  // namespace dgq::test
