#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fdw::cli {

/// Parses the command line (args[0] is the program name), runs the selected
/// subcommand and returns the exit status.
int run_app(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fdw::cli
