#pragma once

#include <iosfwd>

namespace hsign {

/// Command-line entry point. Results go to `out` (or --out), diagnostics to
/// `err`. Returns 0 on success and nonzero on any parse or module error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hsign
