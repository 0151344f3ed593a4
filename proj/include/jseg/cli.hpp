#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jseg {

/// Runs the command line `args` (without the program name). Machine-readable
/// output goes to `out` unless redirected with --out; summaries and
/// diagnostics go to `err`. Returns 0 on success, 1 on runtime failure and 2
/// on a usage error.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jseg
