#pragma once

namespace confdiam {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace confdiam
