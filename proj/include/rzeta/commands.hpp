#pragma once

#include <string>
#include <vector>

#include "rzeta/report.hpp"

namespace rzeta {

/// Executes one CLI invocation (arguments without the program name) and
/// returns the report. Never throws: usage and input problems become failing
/// pseudo-checks with exit codes 2 and 3.
RunReport run_command(const std::vector<std::string>& args);

} // namespace rzeta
