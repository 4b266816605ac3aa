#pragma once

#include <ostream>
#include <string>

#include "cfs/config.hpp"

namespace cfs {

// Executes the configured command and writes its CSV output (to
// output.path, or to `out` when the path is empty). Diagnostics and
// per-sample warnings go to `err` in sample order, so repeated runs are
// byte-identical regardless of the thread count.
//
// Exit codes: 0 success, 1 per-sample failures under strict mode or I/O
// failure, 2 invalid configuration.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Thread count resolution: config value, else CFS_THREADS, else 1.
int resolve_threads(const RunConfig& config);

}  // namespace cfs
