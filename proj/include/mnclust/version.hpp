#pragma once

namespace mnclust {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mnclust
