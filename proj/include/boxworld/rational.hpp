#pragma once

#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace boxworld {

// Arbitrary-precision integers and gcd-normalized rationals. cpp_rational
// keeps the canonical form the library relies on: denominator > 0 and
// gcd(|num|, den) = 1 after every operation.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(long long num, long long den = 1) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

inline int sign_of(const Rational& q) { return q.sign(); }

// Exact rational square root, or nullopt when q is negative or not a square.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
    if (q.sign() < 0) return std::nullopt;
    const Int num = numerator(q);
    const Int den = denominator(q);
    const Int sn = sqrt(num);
    if (sn * sn != num) return std::nullopt;
    const Int sd = sqrt(den);
    if (sd * sd != den) return std::nullopt;
    return Rational(sn, sd);
}

inline std::string rational_to_string(const Rational& q) {
    return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace boxworld
