#pragma once

#include <ostream>

namespace bgpa {

/// Runs one command line. Reports go to `out` as JSON (or DOT/table where
/// asked); returns 0 on success, 2 when an axiom check fails, 1 on error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bgpa
