#pragma once

#include <string>
#include <vector>

namespace qdsp {

/// Runs the command-line front end. Returns 0 on success, 1 on usage
/// errors, 2 on domain or model errors. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args);

} // namespace qdsp
