#pragma once

namespace cohpol {

inline constexpr const char* kToolName = "cohpol";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace cohpol
