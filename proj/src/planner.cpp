#include "dgq/planner.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

namespace dgq {

std::string to_string(CatalogMode m) {
  switch (m) {
    case CatalogMode::Single: return "single";
    case CatalogMode::Path: return "path";
    case CatalogMode::Auto: return "auto";
  }
  return "?";
}

CatalogMode parse_catalog_mode(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "single") return CatalogMode::Single;
  if (s == "path") return CatalogMode::Path;
  if (s == "auto") return CatalogMode::Auto;
  throw ContractError("unknown catalog mode '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

namespace {

bool instance_less(const PrimitiveInstance& a, const PrimitiveInstance& b) {
  if (a.selectivity != b.selectivity) return a.selectivity < b.selectivity;
  if (a.key != b.key) return a.key < b.key;
  return a.edges < b.edges;
}

std::vector<PrimitiveInstance> single_instances(const QueryGraph& q, const SelectivityTable& table) {
  std::vector<PrimitiveInstance> out;
  for (QEdgeId e = 0; e < q.edge_count(); ++e) {
    const auto key = edge_key(q, e);
    out.push_back({{e}, key.to_string(), table.selectivity(key), table.count(key)});
  }
  std::sort(out.begin(), out.end(), instance_less);
  return out;
}

std::vector<PrimitiveInstance> path_instances(const QueryGraph& q, const SelectivityTable& table) {
  std::vector<PrimitiveInstance> out;
  for (QEdgeId a = 0; a < q.edge_count(); ++a) {
    for (QEdgeId b = a + 1; b < q.edge_count(); ++b) {
      const QueryEdge& x = q.edge(a);
      const QueryEdge& y = q.edge(b);
      if (x.src != y.src && x.src != y.dst && x.dst != y.src && x.dst != y.dst) continue;
      const auto key = path_key(q, a, b);
      out.push_back({{a, b}, key.to_string(), table.selectivity(key), table.count(key)});
    }
  }
  std::sort(out.begin(), out.end(), instance_less);
  return out;
}

}  // namespace

PrimitiveCatalog PrimitiveCatalog::build(const QueryGraph& q, const SelectivityTable& table, CatalogMode mode) {
  PrimitiveCatalog c;
  c.mode_ = mode;
  if (mode != CatalogMode::Single) c.instances_ = path_instances(q, table);
  auto singles = single_instances(q, table);
  c.instances_.insert(c.instances_.end(), singles.begin(), singles.end());
  return c;
}

std::vector<std::string> PrimitiveCatalog::templates() const {
  std::vector<std::string> out;
  for (const auto& inst : instances_) {
    if (std::find(out.begin(), out.end(), inst.key) == out.end()) out.push_back(inst.key);
  }
  return out;
}

// ---------------------------------------------------------------------------
// decomposition
// ---------------------------------------------------------------------------

std::vector<std::vector<QEdgeId>> decompose(const QueryGraph& q, const SelectivityTable& table, CatalogMode mode) {
  if (q.edge_count() == 0) throw ValidationError("cannot plan an empty query");
  if (!q.is_connected()) throw ValidationError("cannot plan a disconnected query");
  const auto catalog = PrimitiveCatalog::build(q, table, mode == CatalogMode::Single ? CatalogMode::Single
                                                                                   : CatalogMode::Path);
  const auto& inst = catalog.instances();

  std::vector<bool> removed(q.edge_count(), false);
  std::vector<QVertexId> frontier;
  std::vector<std::vector<QEdgeId>> leaves;

  auto available = [&](const PrimitiveInstance& p) {
    return std::none_of(p.edges.begin(), p.edges.end(), [&](QEdgeId e) { return removed[e]; });
  };
  auto touches = [&](const PrimitiveInstance& p, QVertexId v) {
    return std::any_of(p.edges.begin(), p.edges.end(),
                       [&](QEdgeId e) { return q.edge(e).src == v || q.edge(e).dst == v; });
  };

  std::size_t left = q.edge_count();
  while (left > 0) {
    const PrimitiveInstance* pick = nullptr;
    // templates in catalog order; within one, the earliest frontier vertex
    for (std::size_t lo = 0; lo < inst.size() && !pick && !frontier.empty();) {
      std::size_t hi = lo;
      while (hi < inst.size() && inst[hi].key == inst[lo].key && inst[hi].edges.size() == inst[lo].edges.size()) ++hi;
      for (QVertexId v : frontier) {
        for (std::size_t i = lo; i < hi && !pick; ++i) {
          if (available(inst[i]) && touches(inst[i], v)) pick = &inst[i];
        }
        if (pick) break;
      }
      lo = hi;
    }
    if (!pick) {
      for (const auto& p : inst) {
        if (available(p)) {
          pick = &p;
          break;
        }
      }
    }
    if (!pick) throw ValidationError("decomposition stalled");  // unreachable: single edges always remain
    for (QEdgeId e : pick->edges) {
      removed[e] = true;
      --left;
      for (QVertexId v : {q.edge(e).src, q.edge(e).dst}) {
        if (std::find(frontier.begin(), frontier.end(), v) == frontier.end()) frontier.push_back(v);
      }
    }
    leaves.push_back(pick->edges);
  }
  return leaves;
}

SJTree build_sj_tree(const QueryGraph& q, const SelectivityTable& table, CatalogMode mode,
                     std::vector<std::string>* warnings) {
  if (warnings) {
    for (QEdgeId e = 0; e < q.edge_count(); ++e) {
      const auto key = edge_key(q, e);
      if (table.count(key) == 0) {
        warnings->push_back("query edge " + std::to_string(e) + " (" + key.to_string() +
                            ") has no statistics; its selectivity is taken as 0");
      }
    }
  }
  return SJTree::left_deep(q, decompose(q, table, mode));
}

double expected_selectivity(const SJTree& tree, const SelectivityTable& table) {
  double s = 1.0;
  for (NodeId leaf : tree.leaves()) s *= selectivity(table, tree.query(), tree.node(leaf).subgraph);
  return s;
}

double relative_selectivity(const SJTree& t_k, const SJTree& t_1, const SelectivityTable& table) {
  const double base = expected_selectivity(t_1, table);
  if (base == 0.0) throw ContractError("relative selectivity is undefined: the 1-edge decomposition has selectivity 0");
  return expected_selectivity(t_k, table) / base;
}

Strategy choose_strategy(double xi, double threshold) {
  if (xi < 0.0) throw ContractError("relative selectivity must be non-negative");
  return xi < threshold ? Strategy::PathLazy : Strategy::SingleLazy;
}

// ---------------------------------------------------------------------------
// plans
// ---------------------------------------------------------------------------

std::vector<std::string> decomposition_advice(const SJTree& tree, const SelectivityTable& table, double mean_degree) {
  if (mean_degree <= 0.0) throw ContractError("mean degree must be positive");
  std::vector<std::string> out;
  const QueryGraph& q = tree.query();
  for (std::size_t i = 0; i < tree.leaf_count(); ++i) {
    const Subgraph& g_k = tree.node(tree.leaves()[i]).subgraph;
    if (g_k.edges.size() < 2) continue;
    const double bound = static_cast<double>(frequency(table, q, g_k)) /
                         (mean_degree * static_cast<double>(g_k.vertices.size()));
    for (QEdgeId e : g_k.edges) {
      const auto f = frequency(table, q, q.subgraph_of({e}));
      if (static_cast<double>(f) > bound) {
        std::ostringstream msg;
        msg << "leaf " << i << " could be decomposed: edge " << e << " has frequency " << f << " > " << bound;
        out.push_back(msg.str());
      }
    }
  }
  return out;
}

Plan plan_query(const QueryGraph& q, const SelectivityTable& table, CatalogMode mode,
                std::optional<double> mean_degree) {
  std::vector<std::string> warnings;
  SJTree t1 = build_sj_tree(q, table, CatalogMode::Single, &warnings);
  const double e1 = expected_selectivity(t1, table);

  Plan p;
  p.warnings = std::move(warnings);
  p.catalog_mode = mode;
  p.candidates.push_back({CatalogMode::Single, e1, t1.leaf_count()});
  p.tree = std::move(t1);

  if (mode == CatalogMode::Single) {
    p.strategy = Strategy::SingleLazy;
    p.expected_selectivity = e1;
    if (e1 > 0.0) p.relative_selectivity = 1.0;
  } else {
    SJTree t2 = build_sj_tree(q, table, CatalogMode::Path);
    const double e2 = expected_selectivity(t2, table);
    p.candidates.push_back({CatalogMode::Path, e2, t2.leaf_count()});
    if (e1 > 0.0) p.relative_selectivity = e2 / e1;

    bool use_path = mode == CatalogMode::Path;
    if (mode == CatalogMode::Auto) {
      if (p.relative_selectivity) {
        use_path = choose_strategy(*p.relative_selectivity) == Strategy::PathLazy;
      } else {
        p.warnings.push_back("relative selectivity undefined; defaulting to SingleLazy");
      }
    }
    p.strategy = use_path ? Strategy::PathLazy : Strategy::SingleLazy;
    if (use_path) p.tree = std::move(t2);
    p.expected_selectivity = use_path ? e2 : e1;
  }
  if (mean_degree) p.advice = decomposition_advice(p.tree, table, *mean_degree);
  return p;
}

std::string Plan::sidecar_json() const {
  nlohmann::json doc;
  doc["catalog_mode"] = to_string(catalog_mode);
  doc["strategy"] = to_string(strategy);
  doc["expected_selectivity"] = expected_selectivity;
  doc["relative_selectivity"] = relative_selectivity ? nlohmann::json(*relative_selectivity) : nlohmann::json();
  doc["candidates"] = nlohmann::json::array();
  for (const auto& c : candidates) {
    doc["candidates"].push_back(
        {{"mode", to_string(c.mode)}, {"expected_selectivity", c.expected_selectivity}, {"leaves", c.leaves}});
  }
  doc["warnings"] = warnings;
  doc["advice"] = advice;
  return doc.dump(2) + "\n";
}

}  // namespace dgq
