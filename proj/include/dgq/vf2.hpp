#pragma once

#include <unordered_set>
#include <vector>

#include "dgq/engine.hpp"

namespace dgq {

using SignatureSet = std::unordered_set<std::vector<EdgeId>, SignatureHash>;

/// Vertex-at-a-time VF2-style matching of the whole query around a new edge.
/// Returns the admissible complete matches containing `new_edge` whose
/// signatures are not in `seen`, and adds them to it. `states` counts the
/// vertex-pair states explored.
std::vector<Match> vf2_baseline(const DynamicGraph& g, const QueryGraph& q, const ResolvedQuery& rq,
                                const EdgeRecord& new_edge, const Window& window, SignatureSet& seen,
                                std::uint64_t* states = nullptr);

/// Per-edge baseline: no stored partial matches, full search on every edge.
class Vf2Engine {
 public:
  Vf2Engine(QueryGraph query, Window window, bool keep_matches = true);

  const std::vector<Match>& process(const StreamEdge& e);

  const DynamicGraph& graph() const { return graph_; }
  const ResultLog& results() const { return log_; }
  std::uint64_t states() const { return states_; }
  std::uint64_t searches() const { return searches_; }

 private:
  QueryGraph query_;
  DynamicGraph graph_;
  ResolvedQuery rq_;
  ResultLog log_;
  SignatureSet seen_;
  std::vector<Match> step_;
  std::uint64_t states_ = 0;
  std::uint64_t searches_ = 0;
};

}  // namespace dgq
