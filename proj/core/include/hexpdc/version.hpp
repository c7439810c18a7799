#pragma once

namespace hexpdc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hexpdc
