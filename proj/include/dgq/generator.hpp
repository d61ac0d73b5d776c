#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dgq/graph.hpp"
#include "dgq/query.hpp"
#include "dgq/stats.hpp"

namespace dgq {

/// mt19937_64 with hand-written sampling so output does not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  bool coin(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

/// Sampler over {0..n-1} with weight 1/(k+1)^exponent for rank k.
class PowerLaw {
 public:
  PowerLaw(std::size_t n, double exponent);
  std::size_t sample(Rng& rng) const;
  double probability(std::size_t k) const;
  std::size_t size() const { return cdf_.size(); }

 private:
  std::vector<double> cdf_;
};

enum class GenModel { Social, KPartite, Netflow };

std::string to_string(GenModel m);
GenModel parse_gen_model(std::string_view name);

struct GeneratorConfig {
  GenModel model = GenModel::Netflow;
  std::size_t edges = 1000;
  std::size_t vertices = 1000;  // per vertex type
  double skew = 1.5;            // edge-type power-law exponent
  double vertex_skew = 1.0;     // popularity exponent of vertices within a type
  std::size_t rate = 10;        // edges per time unit
  std::uint64_t seed = 1;
};

/// The netflow model's edge labels, most frequent first under the skew.
const std::vector<std::string>& netflow_protocols();

std::vector<StreamEdge> generate_stream(const GeneratorConfig& cfg);

enum class QueryKind { Path, Tree, KPartite };

std::string to_string(QueryKind k);
QueryKind parse_query_kind(std::string_view name);

struct QueryGenConfig {
  QueryKind kind = QueryKind::Path;
  std::size_t edges = 3;
  std::uint64_t seed = 1;
  std::size_t max_attempts = 1000;
};

/// Random query over the typed edges (triples) seen in `stats`. Paths follow
/// edges in either direction; trees attach each new edge to a random existing
/// vertex; kpartite builds the 2x2 article/facet template. A query containing
/// a 2-edge path the statistics never saw is rejected and redrawn.
QueryGraph generate_query(const QueryGenConfig& cfg, const SelectivityTable& stats);

/// True when every 2-edge path of q has a nonzero count in stats.
bool paths_seen(const QueryGraph& q, const SelectivityTable& stats);

}  // namespace dgq
