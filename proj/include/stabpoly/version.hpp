#pragma once

namespace stabpoly {
inline constexpr const char* kVersion = "0.1.0";
}
