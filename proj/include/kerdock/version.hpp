#pragma once

namespace kerdock {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kerdock
