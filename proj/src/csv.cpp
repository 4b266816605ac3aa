#include "cfs/csv.hpp"

#include <cmath>
#include <cstdio>

namespace cfs::csv {

std::string field(double v) {
    if (!std::isfinite(v)) return "NA";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::string field(int v) { return std::to_string(v); }

std::string field(bool v) { return v ? "1" : "0"; }

}  // namespace cfs::csv
