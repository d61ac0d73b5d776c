#include "dgq/generator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace dgq {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw ContractError("Rng::below(0)");
  const std::uint64_t threshold = (0 - n) % n;  // reject the short final block
  while (true) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % n;
  }
}

PowerLaw::PowerLaw(std::size_t n, double exponent) {
  if (n == 0) throw ContractError("power law over an empty range");
  cdf_.resize(n);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    total += 1.0 / std::pow(static_cast<double>(k + 1), exponent);
    cdf_[k] = total;
  }
  for (double& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

std::size_t PowerLaw::sample(Rng& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
}

double PowerLaw::probability(std::size_t k) const { return k == 0 ? cdf_[0] : cdf_.at(k) - cdf_[k - 1]; }

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

struct Triple {
  const char* src_type;
  const char* src_prefix;
  const char* edge_type;
  const char* dst_type;
  const char* dst_prefix;
};

// social schema, most frequent first
const Triple kSocial[] = {
    {"user", "u", "likes", "post", "p"},        {"user", "u", "follows", "user", "u"},
    {"post", "p", "hasTag", "tag", "t"},        {"user", "u", "posts", "post", "p"},
    {"user", "u", "friendOf", "user", "u"},     {"user", "u", "checkin", "location", "l"},
    {"post", "p", "locatedIn", "location", "l"},
};

// article facets, most frequent first
const Triple kFacets[] = {
    {"article", "a", "has-topic", "topic", "top"},
    {"article", "a", "has-person", "person", "per"},
    {"article", "a", "has-organization", "organization", "org"},
    {"article", "a", "has-location", "location", "loc"},
};

constexpr std::size_t kFacetsPerArticle = 4;

}  // namespace

std::string to_string(GenModel m) {
  switch (m) {
    case GenModel::Social: return "social";
    case GenModel::KPartite: return "kpartite";
    case GenModel::Netflow: return "netflow";
  }
  return "?";
}

GenModel parse_gen_model(std::string_view name) {
  const auto s = lower(name);
  if (s == "social") return GenModel::Social;
  if (s == "kpartite") return GenModel::KPartite;
  if (s == "netflow") return GenModel::Netflow;
  throw ContractError("unknown generator model '" + std::string(name) + "'");
}

const std::vector<std::string>& netflow_protocols() {
  static const std::vector<std::string> p{"TCP", "UDP", "ICMP", "IPv6", "GRE", "ESP", "AH"};
  return p;
}

std::vector<StreamEdge> generate_stream(const GeneratorConfig& cfg) {
  if (cfg.vertices < 2) throw ContractError("generator needs at least 2 vertices per type");
  if (cfg.rate == 0) throw ContractError("generator rate must be positive");
  Rng rng(cfg.seed);
  const PowerLaw popularity(cfg.vertices, cfg.vertex_skew);
  std::vector<StreamEdge> out;
  out.reserve(cfg.edges);

  auto name = [](const char* prefix, std::size_t k) { return std::string(prefix) + std::to_string(k); };

  switch (cfg.model) {
    case GenModel::Netflow: {
      const PowerLaw proto(netflow_protocols().size(), cfg.skew);
      for (std::size_t i = 0; i < cfg.edges; ++i) {
        const std::size_t s = popularity.sample(rng);
        std::size_t d = popularity.sample(rng);
        while (d == s) d = popularity.sample(rng);
        const auto& label = netflow_protocols()[proto.sample(rng)];
        out.push_back({static_cast<Timestamp>(i / cfg.rate), name("ip", s), "ip", label, name("ip", d), "ip"});
      }
      break;
    }
    case GenModel::Social: {
      const PowerLaw kind(std::size(kSocial), cfg.skew);
      for (std::size_t i = 0; i < cfg.edges; ++i) {
        const Triple& t = kSocial[kind.sample(rng)];
        const std::size_t s = popularity.sample(rng);
        std::size_t d = popularity.sample(rng);
        while (std::string_view(t.src_prefix) == t.dst_prefix && d == s) d = popularity.sample(rng);
        out.push_back({static_cast<Timestamp>(i / cfg.rate), name(t.src_prefix, s), t.src_type, t.edge_type,
                       name(t.dst_prefix, d), t.dst_type});
      }
      break;
    }
    case GenModel::KPartite: {
      const PowerLaw kind(std::size(kFacets), cfg.skew);
      for (std::size_t i = 0; i < cfg.edges; ++i) {
        const Triple& t = kFacets[kind.sample(rng)];
        out.push_back({static_cast<Timestamp>(i / cfg.rate), name(t.src_prefix, i / kFacetsPerArticle),
                       t.src_type, t.edge_type, name(t.dst_prefix, popularity.sample(rng)), t.dst_type});
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// queries
// ---------------------------------------------------------------------------

std::string to_string(QueryKind k) {
  switch (k) {
    case QueryKind::Path: return "path";
    case QueryKind::Tree: return "tree";
    case QueryKind::KPartite: return "kpartite";
  }
  return "?";
}

QueryKind parse_query_kind(std::string_view name) {
  const auto s = lower(name);
  if (s == "path") return QueryKind::Path;
  if (s == "tree") return QueryKind::Tree;
  if (s == "kpartite") return QueryKind::KPartite;
  throw ContractError("unknown query kind '" + std::string(name) + "'");
}

bool paths_seen(const QueryGraph& q, const SelectivityTable& stats) {
  for (QEdgeId a = 0; a < q.edge_count(); ++a) {
    for (QEdgeId b = a + 1; b < q.edge_count(); ++b) {
      const QueryEdge& x = q.edge(a);
      const QueryEdge& y = q.edge(b);
      if (x.src != y.src && x.src != y.dst && x.dst != y.src && x.dst != y.dst) continue;
      if (stats.count(path_key(q, a, b)) == 0) return false;
    }
  }
  return true;
}

namespace {

struct Step {
  const EdgeTypeKey* triple;
  bool forward;  // the anchor vertex is the source
};

std::vector<Step> steps_from(const std::vector<const EdgeTypeKey*>& triples, const std::string& label) {
  std::vector<Step> out;
  for (const EdgeTypeKey* t : triples) {
    if (t->src_type == label) out.push_back({t, true});
    if (t->dst_type == label) out.push_back({t, false});
  }
  return out;
}

// Adds an edge from existing vertex v to a new vertex along a random step.
bool grow(QueryGraph& q, QVertexId v, const std::vector<const EdgeTypeKey*>& triples, Rng& rng) {
  const auto steps = steps_from(triples, q.vertex_label(v));
  if (steps.empty()) return false;
  const Step& s = steps[rng.below(steps.size())];
  if (s.forward) {
    const QVertexId w = q.add_vertex(s.triple->dst_type);
    q.add_edge(v, w, s.triple->edge_type);
  } else {
    const QVertexId w = q.add_vertex(s.triple->src_type);
    q.add_edge(w, v, s.triple->edge_type);
  }
  return true;
}

std::optional<QueryGraph> draw(const QueryGenConfig& cfg, const std::vector<const EdgeTypeKey*>& triples, Rng& rng) {
  QueryGraph q;
  if (cfg.kind == QueryKind::KPartite) {
    std::vector<std::string> sources;
    for (const auto* t : triples) {
      if (std::find(sources.begin(), sources.end(), t->src_type) == sources.end()) sources.push_back(t->src_type);
    }
    const std::string& art = sources[rng.below(sources.size())];
    std::vector<const EdgeTypeKey*> facets;
    for (const auto* t : triples) {
      if (t->src_type == art && t->dst_type != art) facets.push_back(t);
    }
    if (facets.empty()) return std::nullopt;
    const EdgeTypeKey* fa = facets[rng.below(facets.size())];
    const EdgeTypeKey* fb = facets[rng.below(facets.size())];
    q.add_vertex(art);
    q.add_vertex(art);
    q.add_vertex(fa->dst_type);
    q.add_vertex(fb->dst_type);
    for (QVertexId a : {0u, 1u}) {
      q.add_edge(a, 2, fa->edge_type);
      q.add_edge(a, 3, fb->edge_type);
    }
    return q;
  }

  const EdgeTypeKey* first = triples[rng.below(triples.size())];
  q.add_vertex(first->src_type);
  q.add_vertex(first->dst_type);
  q.add_edge(0, 1, first->edge_type);
  QVertexId tail = 1;
  while (q.edge_count() < cfg.edges) {
    if (cfg.kind == QueryKind::Path) {
      if (!grow(q, tail, triples, rng)) return std::nullopt;
      tail = static_cast<QVertexId>(q.vertex_count() - 1);
    } else {
      const auto v = static_cast<QVertexId>(rng.below(q.vertex_count()));
      if (!grow(q, v, triples, rng)) return std::nullopt;
    }
  }
  return q;
}

}  // namespace

QueryGraph generate_query(const QueryGenConfig& cfg, const SelectivityTable& stats) {
  if (cfg.edges == 0) throw ContractError("queries need at least one edge");
  std::vector<const EdgeTypeKey*> triples;
  for (const auto& [key, n] : stats.edge_types()) triples.push_back(&key);
  if (triples.empty()) throw ContractError("query generation needs edge-type statistics");

  Rng rng(cfg.seed);
  for (std::size_t attempt = 0; attempt < cfg.max_attempts; ++attempt) {
    auto q = draw(cfg, triples, rng);
    if (q && paths_seen(*q, stats)) return *q;
  }
  throw Error("no " + to_string(cfg.kind) + " query with " + std::to_string(cfg.edges) +
              " edges and only known 2-edge paths found in " + std::to_string(cfg.max_attempts) + " attempts");
}

}  // namespace dgq
