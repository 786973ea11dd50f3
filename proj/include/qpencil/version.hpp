#pragma once

namespace qpencil {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qpencil
