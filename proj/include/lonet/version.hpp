#pragma once

namespace lonet {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "lonet";

} // namespace lonet
