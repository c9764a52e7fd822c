#pragma once

namespace yamabe {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace yamabe
