#pragma once

namespace schatten {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace schatten
