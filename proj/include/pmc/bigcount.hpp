#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace pmc {

/// Exact nonnegative model count.
using BigCount = boost::multiprecision::cpp_int;

inline BigCount pow2(std::uint64_t exponent) {
  BigCount r = 1;
  r <<= static_cast<unsigned>(exponent);
  return r;
}

inline std::string to_string(const BigCount &c) { return c.str(); }

/// log2(numerator / denominator) for positive arguments, computed through
/// long double after aligning magnitudes so huge counts do not overflow.
double log2_ratio(const BigCount &numerator, const BigCount &denominator);

} // namespace pmc
