#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dgq/engine.hpp"
#include "dgq/planner.hpp"
#include "dgq/stats.hpp"

namespace dgq {

/// Strategies disagreed on the number of emitted matches.
class MismatchError : public Error {
 public:
  using Error::Error;
};

struct RunResult {
  std::string strategy;
  std::uint64_t edges = 0;
  double wall_ms = 0.0;
  std::size_t peak_stored = 0;
  std::uint64_t primitive_calls = 0;  // VF2: search states explored
  std::uint64_t emitted = 0;
};

/// Runs one strategy over the stream. Planning happens before the clock
/// starts. `on_match` sees each emission with its 1-based sequence number.
RunResult run_strategy(std::span<const StreamEdge> stream, const QueryGraph& q, const SelectivityTable& stats,
                       Strategy strategy, Window window,
                       const std::function<void(std::uint64_t, const Match&)>& on_match = {});

/// Same, with a ready-made tree (Single/Path strategies only use its lazy flag).
RunResult run_tree(std::span<const StreamEdge> stream, const SJTree& tree, Strategy strategy, Window window,
                   const std::function<void(std::uint64_t, const Match&)>& on_match = {});

struct BenchRow {
  std::string query;
  RunResult run;
  double expected_selectivity = 0.0;
  std::optional<double> relative_selectivity;
};

struct NamedQuery {
  std::string name;
  QueryGraph query;
};

/// Custom runner used alongside the built-in strategies (test fixtures).
using StrategyRunner = std::function<RunResult(std::span<const StreamEdge>, const QueryGraph&, Window)>;

struct BenchOptions {
  std::vector<Strategy> strategies{Strategy::Single, Strategy::SingleLazy, Strategy::Path, Strategy::PathLazy,
                                   Strategy::VF2};
  std::vector<std::pair<std::string, StrategyRunner>> extra;
  Window window = Window::infinite();
};

/// Every (query, strategy) cell. Throws MismatchError naming the query and
/// the per-strategy counts when emitted-match counts differ.
std::vector<BenchRow> run_bench(std::span<const StreamEdge> stream, const std::vector<NamedQuery>& queries,
                                const SelectivityTable& stats, const BenchOptions& opts);

inline constexpr const char* kBenchCsvHeader =
    "query,strategy,edges,wall_ms,edges_per_sec,peak_stored_matches,primitive_calls,emitted,expected_selectivity,"
    "relative_selectivity";
std::string bench_csv(const std::vector<BenchRow>& rows);

/// Picks up to `per_bin` queries from each of `bins` equal-width bins over
/// log10 expected selectivity (per_bin = 0 keeps all). Queries with expected
/// selectivity 0 go to the lowest bin. Order within a bin is preserved.
std::vector<NamedQuery> sample_by_selectivity(const std::vector<NamedQuery>& queries, const SelectivityTable& stats,
                                              std::size_t bins, std::size_t per_bin);

}  // namespace dgq
