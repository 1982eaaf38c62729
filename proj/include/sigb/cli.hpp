#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sigb {

// Runs the sigma-bounds command line: args are the argv entries after the
// program name. Reports go to out, diagnostics to err. Returns the process
// exit code: 0 success, 1 usage error, 2 parse error, 3 walk lower bound
// inapplicable (Sigma(AA*) = 0), 4 internal error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sigb
