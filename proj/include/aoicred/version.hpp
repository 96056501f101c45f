#pragma once

namespace aoicred {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace aoicred
