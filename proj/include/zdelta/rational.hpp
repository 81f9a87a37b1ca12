#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace zd {

// mpq_class keeps values canonical after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace zd
