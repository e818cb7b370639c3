#pragma once

#include <iosfwd>

namespace dvarma::cli {

/// Execute one `dvarma` invocation. argv[0] is the program name.
/// Returns 0 on success, 1 on a runtime failure, 2 on a usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dvarma::cli
