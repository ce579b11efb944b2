#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace acyl {

/// Exact rational arithmetic for Gromov products, delta values and metric bounds.
using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& r);

/// Parses "p/q" or an integer literal.
Rational parse_rational(const std::string& text);

inline Rational half(std::int64_t twice) { return Rational(twice, 2); }

}  // namespace acyl
