#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace plab {

// args excludes the program name. Exit 0 when every selected check passes,
// 1 on any FAIL, 2 on a usage error. Reports go to out as JSON lines.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plab
