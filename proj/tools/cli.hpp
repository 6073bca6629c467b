#pragma once

#include <iosfwd>

namespace gaitxai::cli {

/// Runs the command line tool. Exit codes: 0 success, 1 runtime failure, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gaitxai::cli
