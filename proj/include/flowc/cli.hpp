#pragma once

#include <ostream>

namespace flowc {

/// Entry point of the `flowc` tool. Exit codes: 0 success, 1 diagnostics or
/// runtime failure, 2 usage, IO or document parse error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace flowc
