#pragma once

namespace conftorus {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace conftorus
