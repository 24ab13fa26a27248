// cli.hpp — Command-line front end.
//
//   cavityqc <subcommand> [--config file.json] [--seed n] [--out path]
//            [--format csv|json] [--force-outcome bits] [--cap-dim n] [circuit]
//
// Subcommands: dispersion, spectrum, reduce, gate, noise-sweep, compile,
// simulate, presets, selftest.
//
// Exit codes: 0 success, 1 invalid config or usage, 2 numerical failure
// (tolerance breach, non-convergence, failed self test), 3 resource cap.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cavityqc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitResource = 3;

// args excludes the program name. Reports go to `out` unless --out is given;
// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace cavityqc::cli
