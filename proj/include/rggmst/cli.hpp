#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rggmst {

/// Entry point of the rggmst tool. Subcommands: sweep, bounds, check-lemma,
/// compare-poisson, plot-data. Returns the process exit code.
int cli_main(int argc, char** argv);

/// Same, with arguments (excluding the program name) and streams supplied by the caller.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rggmst
