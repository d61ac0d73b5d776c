#include "dgq/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "dgq/vf2.hpp"

namespace dgq {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

RunResult run_tree(std::span<const StreamEdge> stream, const SJTree& tree, Strategy strategy, Window window,
                   const std::function<void(std::uint64_t, const Match&)>& on_match) {
  if (strategy == Strategy::VF2) throw ContractError("run_tree: VF2 does not use a tree");
  RunResult r;
  r.strategy = to_string(strategy);
  Engine engine(tree, window, is_lazy(strategy), /*keep_matches=*/false);
  std::uint64_t seq = 0;
  const auto start = Clock::now();
  for (const auto& e : stream) {
    const auto& delta = engine.process(e);
    if (on_match) {
      for (const Match& m : delta) on_match(++seq, m);
    }
  }
  r.wall_ms = elapsed_ms(start);
  r.edges = stream.size();
  r.peak_stored = engine.metrics().peak_stored;
  r.primitive_calls = engine.metrics().primitive_calls;
  r.emitted = engine.metrics().emitted;
  return r;
}

RunResult run_strategy(std::span<const StreamEdge> stream, const QueryGraph& q, const SelectivityTable& stats,
                       Strategy strategy, Window window,
                       const std::function<void(std::uint64_t, const Match&)>& on_match) {
  if (strategy != Strategy::VF2) {
    const bool path = strategy == Strategy::Path || strategy == Strategy::PathLazy;
    const SJTree tree = build_sj_tree(q, stats, path ? CatalogMode::Path : CatalogMode::Single);
    return run_tree(stream, tree, strategy, window, on_match);
  }
  RunResult r;
  r.strategy = to_string(strategy);
  Vf2Engine engine(q, window, /*keep_matches=*/false);
  std::uint64_t seq = 0;
  const auto start = Clock::now();
  for (const auto& e : stream) {
    const auto& delta = engine.process(e);
    if (on_match) {
      for (const Match& m : delta) on_match(++seq, m);
    }
  }
  r.wall_ms = elapsed_ms(start);
  r.edges = stream.size();
  r.primitive_calls = engine.states();
  r.emitted = engine.results().size();
  return r;
}

std::vector<BenchRow> run_bench(std::span<const StreamEdge> stream, const std::vector<NamedQuery>& queries,
                                const SelectivityTable& stats, const BenchOptions& opts) {
  std::vector<BenchRow> rows;
  for (const auto& nq : queries) {
    const Plan plan = plan_query(nq.query, stats, CatalogMode::Auto);
    std::vector<BenchRow> cells;
    for (Strategy s : opts.strategies) {
      cells.push_back({nq.name, run_strategy(stream, nq.query, stats, s, opts.window), plan.expected_selectivity,
                       plan.relative_selectivity});
    }
    for (const auto& [name, runner] : opts.extra) {
      RunResult r = runner(stream, nq.query, opts.window);
      r.strategy = name;
      cells.push_back({nq.name, r, plan.expected_selectivity, plan.relative_selectivity});
    }
    const bool agree = std::all_of(cells.begin(), cells.end(),
                                   [&](const BenchRow& c) { return c.run.emitted == cells.front().run.emitted; });
    if (!agree) {
      std::string report = "emitted-match counts differ on query '" + nq.name + "':";
      for (const auto& c : cells) report += " " + c.run.strategy + "=" + std::to_string(c.run.emitted);
      throw MismatchError(report);
    }
    rows.insert(rows.end(), cells.begin(), cells.end());
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << kBenchCsvHeader << '\n';
  out << std::setprecision(6);
  for (const auto& r : rows) {
    const double eps = r.run.wall_ms > 0 ? static_cast<double>(r.run.edges) / (r.run.wall_ms / 1000.0) : 0.0;
    out << r.query << ',' << r.run.strategy << ',' << r.run.edges << ',' << std::fixed << std::setprecision(3)
        << r.run.wall_ms << ',' << std::setprecision(1) << eps << std::defaultfloat << std::setprecision(6) << ','
        << r.run.peak_stored << ',' << r.run.primitive_calls << ',' << r.run.emitted << ','
        << r.expected_selectivity << ',';
    if (r.relative_selectivity) out << *r.relative_selectivity;
    out << '\n';
  }
  return out.str();
}

std::vector<NamedQuery> sample_by_selectivity(const std::vector<NamedQuery>& queries, const SelectivityTable& stats,
                                              std::size_t bins, std::size_t per_bin) {
  if (bins == 0) throw ContractError("selectivity bins must be positive");
  if (per_bin == 0 || queries.empty()) return queries;

  std::vector<double> logs;
  for (const auto& nq : queries) {
    const double s = plan_query(nq.query, stats, CatalogMode::Auto).expected_selectivity;
    logs.push_back(s > 0 ? std::log10(s) : -std::numeric_limits<double>::infinity());
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double l : logs) {
    if (std::isfinite(l)) {
      lo = std::min(lo, l);
      hi = std::max(hi, l);
    }
  }
  std::vector<std::size_t> taken(bins, 0);
  std::vector<NamedQuery> out;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    std::size_t b = 0;
    if (std::isfinite(logs[i]) && hi > lo) {
      b = std::min(bins - 1, static_cast<std::size_t>((logs[i] - lo) / (hi - lo) * static_cast<double>(bins)));
    }
    if (taken[b] < per_bin) {
      ++taken[b];
      out.push_back(queries[i]);
    }
  }
  return out;
}

}  // namespace dgq
