#pragma once

namespace bjj {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kFormatVersion = 1;

}  // namespace bjj
