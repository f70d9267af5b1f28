#pragma once

namespace sumfree {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sumfree
