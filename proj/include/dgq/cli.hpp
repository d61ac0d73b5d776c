#pragma once

#include <iosfwd>

namespace dgq {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitMismatch = 3;

/// Entry point of the `dgq` tool: stats, plan, run, gen, gen-query, bench.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dgq
