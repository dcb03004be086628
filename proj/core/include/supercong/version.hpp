#pragma once

#include <string_view>

namespace supercong {

inline constexpr std::string_view engine_name = "supercong";
inline constexpr std::string_view engine_version = "0.1.0";

}  // namespace supercong
