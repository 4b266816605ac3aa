#pragma once

namespace cfs {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cfs
