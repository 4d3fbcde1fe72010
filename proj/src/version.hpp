#pragma once

namespace leakaudit {

inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace leakaudit
