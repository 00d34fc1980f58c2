#pragma once

#include <string_view>

namespace windowlens {

inline constexpr std::string_view kToolName = "windowlens";
inline constexpr std::string_view kToolVersion = "0.1.0";

}  // namespace windowlens
