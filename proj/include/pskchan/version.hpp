#pragma once

namespace pskchan {

inline constexpr const char* kToolName = "pskchan";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace pskchan
