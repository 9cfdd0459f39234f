#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tricount {

/// The tricount command line. args excludes the program name. Returns 0 on
/// success, 1 on invalid data, 2 on usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tricount
