#ifndef ROWPADE_CLI_HPP
#define ROWPADE_CLI_HPP

#include <ostream>

namespace rowpade::cli {

enum ExitCode : int { ok = 0, verification_failed = 1, usage_error = 2, numeric_failure = 3 };

/// Entry point of the rowpade tool: approximate | row | verify | list-examples.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rowpade::cli

#endif
