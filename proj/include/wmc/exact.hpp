#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace wmc {

using BigInt = mpz_class;
using Rational = mpq_class;

// Parses "17", "-3", "5/7". Throws ValidationError on anything else.
Rational parse_rational(std::string_view text);

// Integers print without a denominator, everything else as "p/q".
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

inline Rational pow(const Rational& base, unsigned exponent) {
    Rational out = 1;
    for (unsigned i = 0; i < exponent; ++i) out *= base;
    return out;
}

}  // namespace wmc
