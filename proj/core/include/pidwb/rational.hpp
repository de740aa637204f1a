#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pidwb {

using Rational = mpq_class;

// Accepts "p/q", integers and plain decimals ("0.25", "1e-3" is rejected).
Rational parse_rational(std::string_view text);

// Exact binary value of a finite double.
Rational rational_from_double(double x);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace pidwb
