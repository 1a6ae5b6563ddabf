#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace thornlab {

// All index values and formula evaluations use exact 128-bit signed integers
// with checked arithmetic: any overflow throws std::overflow_error instead of
// wrapping, so a reported delta can never be an artifact of wraparound.
using Int = boost::multiprecision::checked_int128_t;

inline std::string to_decimal(const Int& value) { return value.str(); }

// Strict decimal parse: optional leading '-', digits only.
Int parse_decimal(std::string_view text);

}  // namespace thornlab
