#pragma once

#include <iosfwd>

namespace photonmol {

/// Command-line entry point. Subcommands: point, sweep, optimize, figure.
/// Returns 0 on success, 1 on a usage or configuration error, 2 on a solver error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace photonmol
