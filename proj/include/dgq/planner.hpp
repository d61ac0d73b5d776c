#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgq/engine.hpp"
#include "dgq/sjtree.hpp"
#include "dgq/stats.hpp"

namespace dgq {

enum class CatalogMode { Single, Path, Auto };

std::string to_string(CatalogMode m);
CatalogMode parse_catalog_mode(std::string_view name);

/// One occurrence of a primitive inside the query.
struct PrimitiveInstance {
  std::vector<QEdgeId> edges;  // ascending
  std::string key;             // canonical label-level key
  double selectivity = 0.0;
  std::uint64_t frequency = 0;
};

/// Primitive templates found in the query, most selective first. Ties break
/// on the canonical key, then on the lowest query edge ids.
class PrimitiveCatalog {
 public:
  static PrimitiveCatalog build(const QueryGraph& q, const SelectivityTable& table, CatalogMode mode);

  CatalogMode mode() const { return mode_; }
  /// Instances ordered by (selectivity, key, edges).
  const std::vector<PrimitiveInstance>& instances() const { return instances_; }
  /// Distinct template keys in catalog order.
  std::vector<std::string> templates() const;

 private:
  CatalogMode mode_ = CatalogMode::Single;
  std::vector<PrimitiveInstance> instances_;
};

/// Greedy decomposition into a left-deep SJ-Tree. Single mode uses 1-edge
/// primitives; path mode prefers 2-edge paths and falls back to single edges.
/// Edge types absent from the statistics are reported through `warnings`.
SJTree build_sj_tree(const QueryGraph& q, const SelectivityTable& table, CatalogMode mode,
                     std::vector<std::string>* warnings = nullptr);

/// The leaf edge sets chosen by build_sj_tree, in leaf order.
std::vector<std::vector<QEdgeId>> decompose(const QueryGraph& q, const SelectivityTable& table, CatalogMode mode);

/// Product of the leaf selectivities.
double expected_selectivity(const SJTree& tree, const SelectivityTable& table);
/// expected(t_k) / expected(t_1); throws ContractError when expected(t_1) = 0.
double relative_selectivity(const SJTree& t_k, const SJTree& t_1, const SelectivityTable& table);

inline constexpr double kPathLazyThreshold = 0.001;
Strategy choose_strategy(double xi, double threshold = kPathLazyThreshold);

struct CandidateMetrics {
  CatalogMode mode;
  double expected_selectivity;
  std::size_t leaves;
};

struct Plan {
  SJTree tree;
  Strategy strategy = Strategy::SingleLazy;
  CatalogMode catalog_mode = CatalogMode::Single;
  double expected_selectivity = 0.0;
  std::optional<double> relative_selectivity;  // unset when the 1-edge product is 0
  std::vector<CandidateMetrics> candidates;
  std::vector<std::string> warnings;
  std::vector<std::string> advice;

  std::string sidecar_json() const;
};

/// Leaves worth splitting further: a leaf g_k with a proper sub-primitive g
/// whose frequency exceeds frequency(g_k) / (mean_degree * |V(g_k)|).
std::vector<std::string> decomposition_advice(const SJTree& tree, const SelectivityTable& table, double mean_degree);

/// Builds the plan for `mode`. Auto builds both the 1-edge and the path tree,
/// and keeps the one choose_strategy picks from their relative selectivity.
Plan plan_query(const QueryGraph& q, const SelectivityTable& table, CatalogMode mode,
                std::optional<double> mean_degree = std::nullopt);

}  // namespace dgq
