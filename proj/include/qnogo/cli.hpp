#pragma once

// The qnogo command line. Exit codes are a stable contract shared by all
// subcommands:
//   0  REALIZABLE / success
//   1  usage error (bad flags, unknown gate or target, malformed matrix file)
//   2  IMPOSSIBLE (a witness is reported)
//   3  .qmachine parse or compile errors
//   4  I/O error

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qnogo/algebra.hpp"

namespace qnogo::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitImpossible = 2,
    kExitDslErrors = 3,
    kExitIo = 4,
};

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 2 or 4 lines of whitespace-separated `re,im` pairs; blank lines and
/// `#` comments are skipped. Throws std::invalid_argument when malformed.
DenseOperator parse_matrix(std::string_view text);

/// "a:b:step" (inclusive of b) or a single value; values rounded to 1e-12
/// so that 0:1:0.1 yields 0.3 rather than 0.30000000000000004.
std::vector<double> parse_lambda_range(std::string_view spec);

/// "0.6", "-0.8i", "0.6+0.8i", "0.6-0.8i" or "re,im".
Complex parse_complex(std::string_view s);

}  // namespace qnogo::cli
