#include "pmc/bigcount.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pmc {

double log2_ratio(const BigCount &numerator, const BigCount &denominator) {
  if (numerator <= 0 || denominator <= 0)
    throw std::invalid_argument("log2_ratio needs positive arguments");
  auto bits = [](const BigCount &x) {
    return static_cast<long>(boost::multiprecision::msb(x));
  };
  // Shift both down to about 60 significant bits before converting.
  long shift_n = std::max(0L, bits(numerator) - 60);
  long shift_d = std::max(0L, bits(denominator) - 60);
  long double n = static_cast<long double>(
      static_cast<std::uint64_t>(numerator >> shift_n));
  long double d = static_cast<long double>(
      static_cast<std::uint64_t>(denominator >> shift_d));
  return static_cast<double>(std::log2(n) - std::log2(d) +
                             static_cast<long double>(shift_n - shift_d));
}

} // namespace pmc
