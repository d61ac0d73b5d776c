#pragma once

#include <vector>

#include "dgq/graph.hpp"
#include "dgq/query.hpp"

namespace dgq {

inline constexpr std::size_t kOracleMaxQueryEdges = 6;
inline constexpr std::size_t kOracleMaxWindowEdges = 500;

/// Every admissible match of q in the live window, by exhaustive backtracking
/// over edge assignments. Works on label names rather than interned ids so it
/// shares nothing with the engines. Refuses (ContractError) beyond
/// kOracleMaxQueryEdges query edges or kOracleMaxWindowEdges live edges.
std::vector<Match> brute_force_oracle(const DynamicGraph& g, const QueryGraph& q);

}  // namespace dgq
