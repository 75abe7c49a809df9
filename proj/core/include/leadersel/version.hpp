#pragma once

namespace leadersel {

inline constexpr const char* kVersion = "0.1.0";

} // namespace leadersel
