#pragma once

#include <string_view>

namespace twowell {

inline constexpr std::string_view kToolName = "twowell";
inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace twowell
