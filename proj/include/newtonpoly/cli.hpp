#pragma once

#include "newtonpoly/numeric.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace newtonpoly {

/// Runs the command line `args` (without the program name). Data goes to `out`
/// (or the --out file), diagnostics to `err`. Returns the process exit code:
/// 0 ok, 2 input error, 3 algorithmic indeterminacy, 4 internal inconsistency.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Integer points from a JSON array of arrays, a polytope JSON object with
/// "vertices", or whitespace/comma separated rows (`#` comments).
std::vector<LatticePoint> parse_point_list(std::string_view text);

}  // namespace newtonpoly
