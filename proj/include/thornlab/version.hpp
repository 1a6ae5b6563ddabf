#pragma once

namespace thornlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace thornlab
