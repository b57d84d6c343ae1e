#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace budgetgraph::cli {

// Runs one command. `args` excludes the program name. Reports go to `out`
// (or the --output file), error JSON to `err`. Returns the exit status:
// 0 success, 1 invalid input or usage, 2 failed self-check.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace budgetgraph::cli
