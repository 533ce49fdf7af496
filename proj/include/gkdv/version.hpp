#pragma once

namespace gkdv {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gkdv
