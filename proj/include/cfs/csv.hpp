#pragma once

#include <string>

namespace cfs::csv {

// 17 significant digits, scientific: doubles survive a write/read round
// trip. Non-finite values become the literal token NA.
std::string field(double v);
std::string field(int v);
std::string field(bool v);
inline const char* na() { return "NA"; }

}  // namespace cfs::csv
