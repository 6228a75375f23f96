#pragma once

namespace mtsfm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mtsfm
