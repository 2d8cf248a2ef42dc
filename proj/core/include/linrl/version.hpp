#pragma once

namespace linrl {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace linrl
