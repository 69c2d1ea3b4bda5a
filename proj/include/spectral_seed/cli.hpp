#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spectral_seed {

/// Entry point of the `spectral-seed` command line tool. Subcommands:
/// generate, detect, kmeans, oracle-check. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spectral_seed
