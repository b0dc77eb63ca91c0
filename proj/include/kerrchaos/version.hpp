#pragma once

namespace kerrchaos {

inline constexpr const char* kVersion = "0.1.0";

} // namespace kerrchaos
