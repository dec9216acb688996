#pragma once

namespace statdiff {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace statdiff
