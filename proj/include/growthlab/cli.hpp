#pragma once

#include <iosfwd>

namespace growthlab::cli {

/// Runs one subcommand. Exit codes: 0 all checks hold, 1 a check fails,
/// 2 undecided without failures, 3 input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace growthlab::cli
