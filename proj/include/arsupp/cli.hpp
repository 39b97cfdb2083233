#pragma once

// Command-line front end. Subcommands: pdet, curve, sweep, mult, probe2d,
// qdet, check, bench.
//
// Exit codes: 0 success, 2 parse or usage error, 3 arithmetic precondition,
// 4 consistency failure. Every failure writes one line
// `error: <Code>: <message>` to the error stream.

#include <iosfwd>
#include <string>
#include <vector>

#include "arsupp/error.hpp"

namespace arsupp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitArithmetic = 3;
inline constexpr int kExitConsistency = 4;

int exit_code_for(ErrorCode code) noexcept;

/// `args` excludes the program name. `in` serves `-` file arguments.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace arsupp::cli
