#pragma once

namespace exdep {

inline constexpr const char* kToolName = "exdep";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace exdep
