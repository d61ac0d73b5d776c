#include "dgq/stats.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace dgq {

using nlohmann::json;

EdgeDescriptor describe_incidence(const EdgeRecord& e, Direction role) {
  return role == Direction::In ? EdgeDescriptor{e.edge_type, e.src_type, Direction::In}
                               : EdgeDescriptor{e.edge_type, e.dst_type, Direction::Out};
}

EdgeDescriptor map_edge(const EdgeRecord& e, VertexId center, const DescriptorMap& map) {
  Direction role;
  if (center == e.src) {
    role = Direction::Out;
  } else if (center == e.dst) {
    role = Direction::In;
  } else {
    throw ContractError("map_edge: center is not an endpoint of edge " + std::to_string(e.id));
  }
  return map ? map(e, role) : describe_incidence(e, role);
}

DescriptorMap collapse_vertex_labels(LabelId star) {
  return [star](const EdgeRecord& e, Direction role) {
    auto d = describe_incidence(e, role);
    d.far_label = star;
    return d;
  };
}

// ---------------------------------------------------------------------------
// keys
// ---------------------------------------------------------------------------

namespace {

const char* dir_name(Direction d) { return d == Direction::In ? "in" : "out"; }

Direction parse_dir(const std::string& s) {
  if (s == "out") return Direction::Out;
  if (s == "in") return Direction::In;
  throw ParseError("bad direction '" + s + "'");
}

}  // namespace

std::string EdgeTypeKey::to_string() const { return src_type + "-[" + edge_type + "]->" + dst_type; }

PathKey PathKey::make(std::string center_type, PathDescriptor a, PathDescriptor b) {
  if (b < a) std::swap(a, b);
  return PathKey{std::move(center_type), std::move(a), std::move(b)};
}

std::string PathKey::to_string() const {
  auto one = [](const PathDescriptor& d) {
    return std::string(dir_name(d.dir)) + ":" + d.edge_type + ":" + d.far_type;
  };
  return center_type + "{" + one(first) + "," + one(second) + "}";
}

// ---------------------------------------------------------------------------
// SelectivityTable
// ---------------------------------------------------------------------------

void SelectivityTable::add(const EdgeTypeKey& key, std::uint64_t n) {
  if (n == 0) return;
  arity1_[key] += n;
  total1_ += n;
}

void SelectivityTable::add(const PathKey& key, std::uint64_t n) {
  if (n == 0) return;
  arity2_[key] += n;
  total2_ += n;
}

void SelectivityTable::merge(const SelectivityTable& other) {
  for (const auto& [k, n] : other.arity1_) add(k, n);
  for (const auto& [k, n] : other.arity2_) add(k, n);
  n_ = std::max(n_, other.n_);
}

std::uint64_t SelectivityTable::count(const EdgeTypeKey& key) const {
  auto it = arity1_.find(key);
  return it == arity1_.end() ? 0 : it->second;
}

std::uint64_t SelectivityTable::count(const PathKey& key) const {
  auto it = arity2_.find(key);
  return it == arity2_.end() ? 0 : it->second;
}

double SelectivityTable::selectivity(const EdgeTypeKey& key) const {
  return total1_ ? static_cast<double>(count(key)) / static_cast<double>(total1_) : 0.0;
}

double SelectivityTable::selectivity(const PathKey& key) const {
  return total2_ ? static_cast<double>(count(key)) / static_cast<double>(total2_) : 0.0;
}

std::string SelectivityTable::to_json() const {
  json doc;
  doc["version"] = kVersion;
  doc["N"] = n_;
  doc["arity1"] = json::array();
  for (const auto& [k, n] : arity1_) {
    doc["arity1"].push_back(
        {{"src_type", k.src_type}, {"edge_type", k.edge_type}, {"dst_type", k.dst_type}, {"count", n}});
  }
  doc["arity2"] = json::array();
  auto desc = [](const PathDescriptor& d) {
    return json{{"edge_type", d.edge_type}, {"far_type", d.far_type}, {"dir", dir_name(d.dir)}};
  };
  for (const auto& [k, n] : arity2_) {
    doc["arity2"].push_back(
        {{"center_type", k.center_type}, {"d1", desc(k.first)}, {"d2", desc(k.second)}, {"count", n}});
  }
  doc["totals"] = {{"arity1", total1_}, {"arity2", total2_}};
  return doc.dump(2) + "\n";
}

SelectivityTable SelectivityTable::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("stats file is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.contains("version")) throw ParseError("stats file has no version");
    if (doc.at("version").get<int>() != kVersion) {
      throw ParseError("unsupported stats version " + doc.at("version").dump());
    }
    if (!doc.contains("totals")) throw ParseError("stats file has no totals");
    SelectivityTable t;
    t.n_ = doc.at("N").get<std::uint64_t>();
    for (const auto& r : doc.at("arity1")) {
      t.add(EdgeTypeKey{r.at("src_type"), r.at("edge_type"), r.at("dst_type")},
            r.at("count").get<std::uint64_t>());
    }
    auto desc = [](const json& d) {
      return PathDescriptor{d.at("edge_type"), d.at("far_type"), parse_dir(d.at("dir"))};
    };
    for (const auto& r : doc.at("arity2")) {
      t.add(PathKey::make(r.at("center_type"), desc(r.at("d1")), desc(r.at("d2"))),
            r.at("count").get<std::uint64_t>());
    }
    const auto& totals = doc.at("totals");
    if (totals.at("arity1").get<std::uint64_t>() != t.total1_ ||
        totals.at("arity2").get<std::uint64_t>() != t.total2_) {
      throw ParseError("stats totals disagree with the listed counts");
    }
    return t;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed stats file: ") + e.what());
  }
}

void SelectivityTable::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write stats file '" + path + "'");
  out << to_json();
}

SelectivityTable SelectivityTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open stats file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

// ---------------------------------------------------------------------------
// counting
// ---------------------------------------------------------------------------

SelectivityTable count_edge_types(std::span<const StreamEdge> stream) {
  SelectivityTable t;
  for (const auto& e : stream) t.add(EdgeTypeKey{e.src_type, e.edge_type, e.dst_type}, 1);
  t.set_sample_size(stream.size());
  return t;
}

SelectivityTable count_edge_types(const DynamicGraph& graph) {
  std::map<std::tuple<LabelId, LabelId, LabelId>, std::uint64_t> counts;
  for (const auto& e : graph.edges()) ++counts[{e.src_type, e.edge_type, e.dst_type}];
  SelectivityTable t;
  const auto& L = graph.labels();
  for (const auto& [k, n] : counts) {
    const auto& [s, et, d] = k;
    t.add(EdgeTypeKey{L.name(s), L.name(et), L.name(d)}, n);
  }
  t.set_sample_size(graph.edge_count());
  return t;
}

namespace {

// (edge label, far label, dir) packed for cheap sorting; labels stay < 2^31.
std::uint64_t pack(const EdgeDescriptor& d) {
  return (static_cast<std::uint64_t>(d.edge_label) << 32) |
         (static_cast<std::uint64_t>(d.far_label) << 1) | (d.dir == Direction::In ? 1u : 0u);
}

EdgeDescriptor unpack(std::uint64_t x) {
  return EdgeDescriptor{static_cast<LabelId>(x >> 32), static_cast<LabelId>((x >> 1) & 0x7fffffffu),
                        (x & 1u) ? Direction::In : Direction::Out};
}

struct RawPathKey {
  LabelId center;
  std::uint64_t d1;
  std::uint64_t d2;
  bool operator==(const RawPathKey&) const = default;
};

struct RawPathKeyHash {
  std::size_t operator()(const RawPathKey& k) const noexcept {
    std::size_t h = std::hash<std::uint64_t>{}(k.d1);
    h ^= std::hash<std::uint64_t>{}(k.d2) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= std::hash<std::uint32_t>{}(k.center) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace

SelectivityTable count_2edge_paths(const DynamicGraph& graph, const DescriptorMap& map) {
  std::unordered_map<RawPathKey, std::uint64_t, RawPathKeyHash> counts;
  std::vector<std::uint64_t> incidences;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> per_type;  // descriptor, multiplicity

  auto describe = [&](const EdgeRecord& e, Direction role) {
    return pack(map ? map(e, role) : describe_incidence(e, role));
  };

  for (VertexId v = 0; v < graph.vertex_id_bound(); ++v) {
    if (!graph.has_vertex(v)) continue;
    incidences.clear();
    for (EdgeId id : graph.out_edges(v)) incidences.push_back(describe(graph.edge(id), Direction::Out));
    for (EdgeId id : graph.in_edges(v)) incidences.push_back(describe(graph.edge(id), Direction::In));
    if (incidences.size() < 2) continue;
    std::sort(incidences.begin(), incidences.end());
    per_type.clear();
    for (std::uint64_t d : incidences) {
      if (!per_type.empty() && per_type.back().first == d) {
        ++per_type.back().second;
      } else {
        per_type.emplace_back(d, 1);
      }
    }
    const LabelId center = graph.vertex_label(v);
    // per_type is sorted, so pairs (i, j > i) visit each unordered pair once
    for (std::size_t i = 0; i < per_type.size(); ++i) {
      const auto [d1, n1] = per_type[i];
      if (n1 > 1) counts[{center, d1, d1}] += n1 * (n1 - 1) / 2;
      for (std::size_t j = i + 1; j < per_type.size(); ++j) {
        counts[{center, d1, per_type[j].first}] += n1 * per_type[j].second;
      }
    }
  }

  SelectivityTable t;
  const auto& L = graph.labels();
  auto to_desc = [&](std::uint64_t x) {
    const auto d = unpack(x);
    return PathDescriptor{L.name(d.edge_label), L.name(d.far_label), d.dir};
  };
  for (const auto& [k, n] : counts) t.add(PathKey::make(L.name(k.center), to_desc(k.d1), to_desc(k.d2)), n);
  t.set_sample_size(graph.edge_count());
  return t;
}

SelectivityTable collect_stats(std::span<const StreamEdge> prefix) {
  DynamicGraph g;
  for (const auto& e : prefix) g.add_edge(e);
  SelectivityTable t = count_edge_types(g);
  t.merge(count_2edge_paths(g));
  t.set_sample_size(prefix.size());
  return t;
}

std::size_t stats_prefix_length(std::size_t n, double frac, std::size_t cap) {
  if (n == 0) return 0;
  auto k = static_cast<std::size_t>(static_cast<double>(n) * frac);
  k = std::min(std::max<std::size_t>(k, 1), cap);
  return std::min(k, n);
}

// ---------------------------------------------------------------------------
// query primitives
// ---------------------------------------------------------------------------

EdgeTypeKey edge_key(const QueryGraph& q, QEdgeId e) {
  const QueryEdge& x = q.edge(e);
  return EdgeTypeKey{q.vertex_label(x.src), x.label, q.vertex_label(x.dst)};
}

PathKey path_key(const QueryGraph& q, QEdgeId a, QEdgeId b) {
  const QueryEdge& x = q.edge(a);
  const QueryEdge& y = q.edge(b);
  std::optional<QVertexId> center;
  for (QVertexId c : {x.src, x.dst}) {
    if ((c == y.src || c == y.dst) && (!center || c < *center)) center = c;
  }
  if (a == b || !center) {
    throw UnsupportedPrimitive("query edges " + std::to_string(a) + " and " + std::to_string(b) +
                               " do not form a 2-edge path");
  }
  auto desc = [&](const QueryEdge& e) {
    return e.src == *center ? PathDescriptor{e.label, q.vertex_label(e.dst), Direction::Out}
                            : PathDescriptor{e.label, q.vertex_label(e.src), Direction::In};
  };
  return PathKey::make(q.vertex_label(*center), desc(x), desc(y));
}

namespace {

template <class F>
auto with_primitive(const QueryGraph& q, const Subgraph& g, F&& f) {
  if (g.edges.size() == 1) return f(edge_key(q, g.edges[0]));
  if (g.edges.size() == 2) return f(path_key(q, g.edges[0], g.edges[1]));
  throw UnsupportedPrimitive("selectivity is only defined for 1-edge and 2-edge-path subgraphs, got " +
                             std::to_string(g.edges.size()) + " edges");
}

}  // namespace

double selectivity(const SelectivityTable& table, const QueryGraph& q, const Subgraph& g) {
  return with_primitive(q, g, [&](const auto& key) { return table.selectivity(key); });
}

std::uint64_t frequency(const SelectivityTable& table, const QueryGraph& q, const Subgraph& g) {
  return with_primitive(q, g, [&](const auto& key) { return table.count(key); });
}

}  // namespace dgq
