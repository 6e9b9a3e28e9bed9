#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace blockrad {

inline constexpr int kExitOk = 0;
inline constexpr int kExitComputation = 1;
inline constexpr int kExitUsage = 2;

// Subcommands: kernel-bounds, osc-sweep, apply-t, tj-scaling, resolve, plemelj, riesz-map, stein-tomas.
// Each reads an optional --config file (flags override its keys) and writes CSV + SVG under --out.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_dispatch(int argc, const char* const* argv);

}  // namespace blockrad
