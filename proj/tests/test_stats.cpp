#include <doctest.h>

#include <json.hpp>

#include "dgq/stats.hpp"
#include "support.hpp"

using namespace dgq;
using dgq::test::edge;

namespace {

DynamicGraph star(int a_edges, int b_edges) {
  DynamicGraph g;
  for (int i = 0; i < a_edges; ++i) g.add_edge(edge(0, "c", "C", "A", "x" + std::to_string(i), "X"));
  for (int i = 0; i < b_edges; ++i) g.add_edge(edge(0, "c", "C", "B", "y" + std::to_string(i), "X"));
  return g;
}

PathKey out_pair(const std::string& e1, const std::string& e2) {
  return PathKey::make("C", {e1, "X", Direction::Out}, {e2, "X", Direction::Out});
}

}  // namespace

TEST_CASE("map_edge") {
  DynamicGraph g;
  const auto& e = g.edge(g.add_edge(edge(0, "a", "A", "T", "b", "B")));
  const LabelId T = *g.labels().find("T");
  const LabelId A = *g.labels().find("A");
  const LabelId B = *g.labels().find("B");
  const VertexId a = *g.find_vertex("a");
  const VertexId b = *g.find_vertex("b");
  CHECK(map_edge(e, a) == EdgeDescriptor{T, B, Direction::Out});
  CHECK(map_edge(e, b) == EdgeDescriptor{T, A, Direction::In});
  const LabelId star_label = g.labels().intern("*");
  CHECK(map_edge(e, a, collapse_vertex_labels(star_label)) == EdgeDescriptor{T, star_label, Direction::Out});
  CHECK_THROWS_AS(map_edge(e, 999), ContractError);
}

TEST_CASE("count_edge_types small cases") {
  std::vector<StreamEdge> s;
  for (int i = 0; i < 3; ++i) s.push_back(edge(i, "a", "A", "T", "b", "B"));
  s.push_back(edge(3, "a", "A", "U", "b", "B"));
  const auto t = count_edge_types(s);
  CHECK(t.count(EdgeTypeKey{"A", "T", "B"}) == 3);
  CHECK(t.count(EdgeTypeKey{"A", "U", "B"}) == 1);
  CHECK(t.selectivity(EdgeTypeKey{"A", "T", "B"}) == 0.75);
  CHECK(t.selectivity(EdgeTypeKey{"A", "U", "B"}) == 0.25);
  CHECK(t.selectivity(EdgeTypeKey{"A", "V", "B"}) == 0.0);

  const auto empty = count_edge_types(std::span<const StreamEdge>{});
  CHECK(empty.edge_types().empty());
  CHECK(empty.total_edge_types() == 0);
}

TEST_CASE("count_edge_types equals an independent tally") {
  Rng rng(5);
  const auto s = test::random_stream(rng, 1000, 50, 4, 6, 1.2);
  std::map<std::string, std::uint64_t> tally;
  for (const auto& e : s) tally[e.src_type + "|" + e.edge_type + "|" + e.dst_type] += 1;
  const auto t = count_edge_types(s);
  CHECK(t.total_edge_types() == 1000);
  REQUIRE(t.edge_types().size() == tally.size());
  for (const auto& [k, n] : t.edge_types()) CHECK(tally.at(k.src_type + "|" + k.edge_type + "|" + k.dst_type) == n);
}

TEST_CASE("2-edge paths around a star") {
  SUBCASE("three identical descriptors") {
    const auto t = count_2edge_paths(star(3, 0));
    CHECK(t.count(out_pair("A", "A")) == 3);
    CHECK(t.total_paths() == 3);
  }
  SUBCASE("3A + 2B") {
    const auto t = count_2edge_paths(star(3, 2));
    CHECK(t.count(out_pair("A", "A")) == 3);
    CHECK(t.count(out_pair("B", "B")) == 1);
    CHECK(t.count(out_pair("A", "B")) == 6);
    CHECK(t.count(out_pair("B", "A")) == 6);
    CHECK(t.total_paths() == 10);
    CHECK(t.selectivity(out_pair("A", "B")) == doctest::Approx(0.6).epsilon(1e-12));
    // the explicit enumeration agrees
    const auto oracle = test::enumerate_2edge_paths(star(3, 2));
    CHECK(oracle.at(out_pair("A", "B").to_string()) == 6);
  }
  SUBCASE("single edge") {
    CHECK(count_2edge_paths(star(1, 0)).paths().empty());
  }
}

TEST_CASE("selectivity of query primitives") {
  auto t = count_2edge_paths(star(3, 2));
  t.merge(count_edge_types(std::vector<StreamEdge>{edge(0, "c", "C", "A", "x", "X")}));

  const auto q = QueryGraph::parse_string(
      "node 0 C\nnode 1 X\nnode 2 X\nnode 3 X\n"
      "edge 0 0 1 A\nedge 1 0 2 B\nedge 2 0 3 Z\n");
  CHECK(selectivity(t, q, q.subgraph_of({0})) == 1.0);
  CHECK(selectivity(t, q, q.subgraph_of({0, 1})) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(frequency(t, q, q.subgraph_of({0, 1})) == 6);
  CHECK(selectivity(t, q, q.subgraph_of({0, 2})) == 0.0);
  CHECK_THROWS_AS(selectivity(t, q, q.whole()), UnsupportedPrimitive);

  const auto apart = QueryGraph::parse_string(
      "node 0 C\nnode 1 X\nnode 2 C\nnode 3 X\nedge 0 0 1 A\nedge 1 1 2 B\nedge 2 2 3 A\n");
  CHECK_THROWS_AS(selectivity(t, apart, apart.subgraph_of({0, 2})), UnsupportedPrimitive);
}

TEST_CASE("stats JSON round trip and errors") {
  Rng rng(9);
  const auto s = test::random_stream(rng, 300, 40, 3, 4, 1.0, true);
  const auto t = collect_stats(s);
  CHECK(t.sample_size() == 300);
  CHECK(SelectivityTable::from_json(t.to_json()) == t);
  CHECK(SelectivityTable::from_json(t.to_json()).to_json() == t.to_json());

  auto j = nlohmann::json::parse(t.to_json());
  auto no_totals = j;
  no_totals.erase("totals");
  CHECK_THROWS_AS(SelectivityTable::from_json(no_totals.dump()), ParseError);

  auto wrong_version = j;
  wrong_version["version"] = 2;
  CHECK_THROWS_AS(SelectivityTable::from_json(wrong_version.dump()), ParseError);

  auto wrong_total = j;
  wrong_total["totals"]["arity1"] = 1;
  CHECK_THROWS_AS(SelectivityTable::from_json(wrong_total.dump()), ParseError);

  CHECK_THROWS_AS(SelectivityTable::from_json("{not json"), ParseError);
}

TEST_CASE("count_2edge_paths equals pairwise enumeration on random windows") {
  Rng rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    const auto s = test::random_stream(rng, 200, 20, 3, 3, trial % 2 ? 1.5 : 0.0, true);
    DynamicGraph g(Window(60));
    for (const auto& e : s) g.add_edge(e);
    const auto t = count_2edge_paths(g);
    const auto oracle = test::enumerate_2edge_paths(g);
    std::map<std::string, std::uint64_t> got;
    for (const auto& [k, n] : t.paths()) got[k.to_string()] = n;
    CHECK(got == oracle);
  }
}

TEST_CASE("stats_prefix_length") {
  CHECK(stats_prefix_length(0) == 0);
  CHECK(stats_prefix_length(5) == 1);
  CHECK(stats_prefix_length(1000) == 100);
  CHECK(stats_prefix_length(1000, 0.5, 300) == 300);
  CHECK(stats_prefix_length(1000, 1.0) == 1000);
}
