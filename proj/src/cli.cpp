#include "dgq/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dgq/bench.hpp"
#include "dgq/generator.hpp"
#include "dgq/planner.hpp"
#include "dgq/stats.hpp"
#include "dgq/stream_io.hpp"

namespace dgq {

namespace {

namespace fs = std::filesystem;

std::uint64_t effective_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("DGQ_SEED"); env && *env) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw ContractError(std::string("DGQ_SEED is not an integer: ") + env);
    return v;
  }
  return flag;
}

Window window_from(const std::optional<std::int64_t>& seconds) {
  return seconds ? Window(*seconds) : Window::infinite();
}

SelectivityTable stats_for(const std::string& stats_path, const std::vector<StreamEdge>& stream) {
  if (!stats_path.empty()) return SelectivityTable::load(stats_path);
  const auto n = stats_prefix_length(stream.size());
  return collect_stats(std::span(stream).first(n));
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::vector<NamedQuery> load_query_dir(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<NamedQuery> out;
  for (const auto& f : files) out.push_back({f.stem().string(), QueryGraph::load(f.string())});
  if (out.empty()) throw Error("no query files in '" + dir + "'");
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continuous subgraph queries over typed edge streams"};
  app.name("dgq");
  app.require_subcommand(1);

  // stats
  std::string input, out_path, query_path, stats_path, plan_path, emit_path, metrics_path, query_dir;
  double sample_frac = 0.1;
  std::size_t max_edges = 1'000'000;
  auto* stats_cmd = app.add_subcommand("stats", "Edge-type and 2-edge-path statistics of a stream prefix");
  stats_cmd->add_option("--input", input, "Edge stream TSV")->required();
  stats_cmd->add_option("--sample-frac", sample_frac, "Fraction of the stream to sample")->capture_default_str();
  stats_cmd->add_option("--max-edges", max_edges, "Upper bound on sampled edges")->capture_default_str();
  stats_cmd->add_option("--out", out_path, "Stats JSON output")->required();

  // plan
  std::string mode = "auto";
  std::optional<double> mean_degree;
  auto* plan_cmd = app.add_subcommand("plan", "Decompose a query into an SJ-Tree");
  plan_cmd->add_option("--query", query_path, "Query file")->required();
  plan_cmd->add_option("--stats", stats_path, "Stats JSON")->required();
  plan_cmd->add_option("--mode", mode, "single|path|auto")->capture_default_str();
  plan_cmd->add_option("--out", out_path, "Plan output; metrics go to <out>.json")->required();
  plan_cmd->add_option("--mean-degree", mean_degree, "Average data degree, enables decomposition advice");

  // run
  std::optional<std::int64_t> window;
  std::string strategy = "singlelazy";
  auto* run_cmd = app.add_subcommand("run", "Stream edges through one strategy");
  run_cmd->add_option("--input", input, "Edge stream TSV")->required();
  run_cmd->add_option("--query", query_path, "Query file")->required();
  run_cmd->add_option("--plan", plan_path, "Plan file (default: plan from --stats or the stream prefix)");
  run_cmd->add_option("--stats", stats_path, "Stats JSON used when no plan is given");
  run_cmd->add_option("--window", window, "Window length in seconds (default: unbounded)");
  run_cmd->add_option("--strategy", strategy, "single|singlelazy|path|pathlazy|vf2")->capture_default_str();
  run_cmd->add_option("--emit", emit_path, "Match TSV output ('-' for stdout)");
  run_cmd->add_option("--metrics", metrics_path, "Metrics JSON output");

  // gen
  GeneratorConfig gcfg;
  std::string model = "netflow";
  std::uint64_t seed = 1;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic edge stream");
  gen_cmd->add_option("--model", model, "social|kpartite|netflow")->capture_default_str();
  gen_cmd->add_option("--edges", gcfg.edges, "Number of edges")->capture_default_str();
  gen_cmd->add_option("--vertices", gcfg.vertices, "Vertices per vertex type")->capture_default_str();
  gen_cmd->add_option("--skew", gcfg.skew, "Edge-type power-law exponent")->capture_default_str();
  gen_cmd->add_option("--vertex-skew", gcfg.vertex_skew, "Vertex popularity exponent")->capture_default_str();
  gen_cmd->add_option("--rate", gcfg.rate, "Edges per time unit")->capture_default_str();
  gen_cmd->add_option("--seed", seed, "Random seed (DGQ_SEED overrides)")->capture_default_str();
  gen_cmd->add_option("--out", out_path, "Stream TSV output ('-' for stdout)");

  // gen-query
  QueryGenConfig qcfg;
  std::string kind = "path";
  std::size_t count = 1;
  auto* genq_cmd = app.add_subcommand("gen-query", "Generate random queries over a stream's edge types");
  genq_cmd->add_option("--kind", kind, "path|tree|kpartite")->capture_default_str();
  genq_cmd->add_option("--edges", qcfg.edges, "Edges per query (kpartite is always 4)")->capture_default_str();
  genq_cmd->add_option("--stats", stats_path, "Stats JSON supplying edge types and known 2-edge paths")->required();
  genq_cmd->add_option("--seed", seed, "Random seed (DGQ_SEED overrides)")->capture_default_str();
  genq_cmd->add_option("--count", count, "Number of queries")->capture_default_str();
  genq_cmd->add_option("--out", out_path, "Query file, or a directory when --count > 1");

  // bench
  std::vector<std::string> strategies{"single", "singlelazy", "path", "pathlazy", "vf2"};
  std::size_t bins = 5;
  std::size_t per_bin = 0;
  auto* bench_cmd = app.add_subcommand("bench", "Run every strategy on every query and compare");
  bench_cmd->add_option("--input", input, "Edge stream TSV")->required();
  bench_cmd->add_option("--query-dir", query_dir, "Directory of query files")->required();
  bench_cmd->add_option("--strategies", strategies, "Strategies to run")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--window", window, "Window length in seconds (default: unbounded)");
  bench_cmd->add_option("--stats", stats_path, "Stats JSON (default: computed from the stream prefix)");
  bench_cmd->add_option("--selectivity-bins", bins, "Bins over log expected selectivity")->capture_default_str();
  bench_cmd->add_option("--per-bin", per_bin, "Queries kept per bin (0 keeps all)")->capture_default_str();
  bench_cmd->add_option("--out", out_path, "CSV output ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*stats_cmd) {
      if (sample_frac <= 0.0 || sample_frac > 1.0) throw ContractError("--sample-frac must be in (0, 1]");
      const auto stream = read_stream_file(input);
      const auto n = stats_prefix_length(stream.size(), sample_frac, max_edges);
      collect_stats(std::span(stream).first(n)).save(out_path);
    } else if (*plan_cmd) {
      const auto q = QueryGraph::load(query_path);
      const auto table = SelectivityTable::load(stats_path);
      const Plan p = plan_query(q, table, parse_catalog_mode(mode), mean_degree);
      for (const auto& w : p.warnings) err << "warning: " << w << '\n';
      for (const auto& a : p.advice) err << "advice: " << a << '\n';
      write_text_file(out_path, p.tree.serialize());
      write_text_file(out_path + ".json", p.sidecar_json());
    } else if (*run_cmd) {
      const auto q = QueryGraph::load(query_path);
      const auto stream = read_stream_file(input);
      const Strategy s = parse_strategy(strategy);
      std::ostringstream lines;
      auto on_match = [&](std::uint64_t seq, const Match& m) { lines << format_match_line(seq, m) << '\n'; };
      RunResult r;
      if (s == Strategy::VF2) {
        r = run_strategy(stream, q, SelectivityTable{}, s, window_from(window), on_match);
      } else if (!plan_path.empty()) {
        const SJTree tree = SJTree::deserialize(read_text_file(plan_path), q);
        r = run_tree(stream, tree, s, window_from(window), on_match);
      } else {
        r = run_strategy(stream, q, stats_for(stats_path, stream), s, window_from(window), on_match);
      }
      if (!emit_path.empty()) write_or_print(emit_path, lines.str(), out);
      if (!metrics_path.empty()) {
        nlohmann::json m{{"strategy", r.strategy},
                         {"edges", r.edges},
                         {"wall_ms", r.wall_ms},
                         {"edges_per_sec", r.wall_ms > 0 ? static_cast<double>(r.edges) / (r.wall_ms / 1000.0) : 0.0},
                         {"primitive_calls", r.primitive_calls},
                         {"peak_stored_matches", r.peak_stored},
                         {"emitted", r.emitted}};
        write_text_file(metrics_path, m.dump(2) + "\n");
      }
    } else if (*gen_cmd) {
      gcfg.model = parse_gen_model(model);
      gcfg.seed = effective_seed(seed);
      std::ostringstream text;
      write_stream(text, generate_stream(gcfg));
      write_or_print(out_path, text.str(), out);
    } else if (*genq_cmd) {
      qcfg.kind = parse_query_kind(kind);
      qcfg.seed = effective_seed(seed);
      if (qcfg.kind == QueryKind::KPartite) qcfg.edges = 4;
      const auto table = SelectivityTable::load(stats_path);
      if (count <= 1) {
        write_or_print(out_path, generate_query(qcfg, table).to_text(), out);
      } else {
        if (out_path.empty()) throw ContractError("--out directory is required with --count > 1");
        fs::create_directories(out_path);
        for (std::size_t i = 0; i < count; ++i) {
          QueryGenConfig c = qcfg;
          c.seed = qcfg.seed + i;
          std::ostringstream name;
          name << to_string(qcfg.kind) << qcfg.edges << "_" << std::setw(3) << std::setfill('0') << i << ".q";
          write_text_file((fs::path(out_path) / name.str()).string(), generate_query(c, table).to_text());
        }
      }
    } else if (*bench_cmd) {
      const auto stream = read_stream_file(input);
      const auto table = stats_for(stats_path, stream);
      BenchOptions opts;
      opts.window = window_from(window);
      opts.strategies.clear();
      for (const auto& s : strategies) opts.strategies.push_back(parse_strategy(s));
      const auto queries = sample_by_selectivity(load_query_dir(query_dir), table, bins, per_bin);
      write_or_print(out_path, bench_csv(run_bench(stream, queries, table, opts)), out);
    }
  } catch (const MismatchError& e) {
    err << "error: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace dgq
