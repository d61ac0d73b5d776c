#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>

#include "dgq/graph.hpp"
#include "dgq/query.hpp"

namespace dgq {

/// An edge seen from one of its endpoints (the center of a 2-edge path).
struct EdgeDescriptor {
  LabelId edge_label = kNoLabel;
  LabelId far_label = kNoLabel;
  Direction dir = Direction::Out;  // Out: center is the source

  friend bool operator==(const EdgeDescriptor&, const EdgeDescriptor&) = default;
};

/// Hook mapping an incidence (edge, role of the center) to its descriptor.
/// The default describes the edge by its own labels.
using DescriptorMap = std::function<EdgeDescriptor(const EdgeRecord&, Direction role)>;

EdgeDescriptor describe_incidence(const EdgeRecord& e, Direction role);

/// Descriptor of e relative to `center`. A self-loop is seen as outgoing.
/// Throws ContractError when center is not an endpoint of e.
EdgeDescriptor map_edge(const EdgeRecord& e, VertexId center, const DescriptorMap& map = {});

/// Replaces the far vertex label with `star`; edge label and direction stay.
DescriptorMap collapse_vertex_labels(LabelId star);

// ---------------------------------------------------------------------------
// label-level primitive keys
// ---------------------------------------------------------------------------

struct EdgeTypeKey {
  std::string src_type;
  std::string edge_type;
  std::string dst_type;

  auto operator<=>(const EdgeTypeKey&) const = default;
  std::string to_string() const;
};

struct PathDescriptor {
  std::string edge_type;
  std::string far_type;
  Direction dir = Direction::Out;

  auto operator<=>(const PathDescriptor&) const = default;
};

/// Unordered pair of descriptors around a center label; `first <= second`.
struct PathKey {
  std::string center_type;
  PathDescriptor first;
  PathDescriptor second;

  static PathKey make(std::string center_type, PathDescriptor a, PathDescriptor b);
  auto operator<=>(const PathKey&) const = default;
  std::string to_string() const;
};

/// Primitive frequencies sampled from a stream prefix.
class SelectivityTable {
 public:
  static constexpr int kVersion = 1;

  void add(const EdgeTypeKey& key, std::uint64_t n);
  void add(const PathKey& key, std::uint64_t n);
  void merge(const SelectivityTable& other);

  std::uint64_t count(const EdgeTypeKey& key) const;
  std::uint64_t count(const PathKey& key) const;
  /// count / total of the same arity; 0 when the total is 0 or the key unseen.
  double selectivity(const EdgeTypeKey& key) const;
  double selectivity(const PathKey& key) const;

  const std::map<EdgeTypeKey, std::uint64_t>& edge_types() const { return arity1_; }
  const std::map<PathKey, std::uint64_t>& paths() const { return arity2_; }
  std::uint64_t total_edge_types() const { return total1_; }
  std::uint64_t total_paths() const { return total2_; }

  std::uint64_t sample_size() const { return n_; }
  void set_sample_size(std::uint64_t n) { n_ = n; }

  std::string to_json() const;
  static SelectivityTable from_json(const std::string& text);
  void save(const std::string& path) const;
  static SelectivityTable load(const std::string& path);

  friend bool operator==(const SelectivityTable&, const SelectivityTable&) = default;

 private:
  std::map<EdgeTypeKey, std::uint64_t> arity1_;
  std::map<PathKey, std::uint64_t> arity2_;
  std::uint64_t total1_ = 0;
  std::uint64_t total2_ = 0;
  std::uint64_t n_ = 0;
};

/// Edge-type histogram of a stream prefix.
SelectivityTable count_edge_types(std::span<const StreamEdge> stream);
/// Edge-type histogram of the live window.
SelectivityTable count_edge_types(const DynamicGraph& graph);

/// 2-edge path distribution of the live window: for each vertex and each
/// unordered pair of incidence descriptors {d1, d2}, adds n1(n1-1)/2 when
/// d1 == d2 and n1*n2 otherwise. Parallel edges count with multiplicity.
SelectivityTable count_2edge_paths(const DynamicGraph& graph, const DescriptorMap& map = {});

/// Both histograms over `prefix`, with N = prefix.size().
SelectivityTable collect_stats(std::span<const StreamEdge> prefix);

/// Number of edges sampled for statistics: min(frac * n, cap), at least 1 when
/// n > 0.
std::size_t stats_prefix_length(std::size_t n, double frac = 0.1, std::size_t cap = 1'000'000);

// ---------------------------------------------------------------------------
// query primitives
// ---------------------------------------------------------------------------

EdgeTypeKey edge_key(const QueryGraph& q, QEdgeId e);
/// Key of the 2-edge path {a, b}; the center is their shared vertex (the lower
/// id when they share both). Throws UnsupportedPrimitive if they share none.
PathKey path_key(const QueryGraph& q, QEdgeId a, QEdgeId b);

/// Selectivity of a 1-edge or connected 2-edge query subgraph.
double selectivity(const SelectivityTable& table, const QueryGraph& q, const Subgraph& g);
/// Raw frequency of the same primitive.
std::uint64_t frequency(const SelectivityTable& table, const QueryGraph& q, const Subgraph& g);

}  // namespace dgq
