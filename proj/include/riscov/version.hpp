#pragma once

namespace riscov {

inline constexpr const char* tool_version = "0.1.0";

} // namespace riscov
