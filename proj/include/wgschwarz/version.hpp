#pragma once

namespace wgs {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace wgs
