#include "thornlab/exact.hpp"

#include <stdexcept>

namespace thornlab {

Int parse_decimal(std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  if (digits.empty())
    throw std::invalid_argument("parse_decimal: empty value");
  for (char c : digits)
    if (c < '0' || c > '9')
      throw std::invalid_argument("parse_decimal: not a decimal integer: '" +
                                  std::string(text) + "'");
  return Int(std::string(text));
}

}  // namespace thornlab
