#pragma once

#include <gmpxx.h>

#include <string>

namespace natred {

using Rational = mpq_class;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline Rational abs_value(const Rational& r) { return abs(r); }

// "p/q", or "p" when q = 1.
std::string to_string(const Rational& r);

// Accepts "p", "-p", "p/q" with q != 0; throws SchemaError otherwise.
Rational parse_rational(const std::string& s);

}  // namespace natred
