#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mban {

// Full command dispatch; returns the process exit code.
// 0 = success / property holds; 1 = property fails (certificate printed);
// 2 = usage or parse error; 3 = budget exceeded.
int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace mban
