#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace logsurf {

// Expression templates are disabled so that the types behave as plain values
// inside Eigen containers and `auto` deductions.
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

/// Parses "p/q" or "p" (optional leading '-'); throws Error(Parse) otherwise.
Rat parse_rat(std::string_view text);

/// Canonical file form, always "p/q" with q > 0 and lowest terms.
std::string to_fraction_string(const Rat& r);

/// Human form: integers print without a denominator.
std::string to_display_string(const Rat& r);

inline bool is_integer(const Rat& r) {
  return boost::multiprecision::denominator(r) == 1;
}

}  // namespace logsurf
