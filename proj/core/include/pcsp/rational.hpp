#pragma once

#include <boost/multiprecision/gmp.hpp>

namespace pcsp {

// Exact arithmetic carriers. All LP work is done over Rational and all
// integer-system work over Int; no floating point anywhere in the solvers.
using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Int rational_num(const Rational& r) { return Int(boost::multiprecision::numerator(r)); }
inline Int rational_den(const Rational& r) { return Int(boost::multiprecision::denominator(r)); }

// Floor of an exact rational as an Int (round toward minus infinity).
inline Int rational_floor(const Rational& r) {
    Int n = rational_num(r), d = rational_den(r);  // d > 0 by invariant
    Int q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
}

inline Int rational_ceil(const Rational& r) {
    Int n = rational_num(r), d = rational_den(r);
    Int q = n / d;
    if (n % d != 0 && n > 0) ++q;
    return q;
}

// Floor division for Int (truncation corrected toward minus infinity).
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Ceiling of a/b for positive b.
inline Int ceil_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) == (b < 0))) ++q;
    return q;
}

}  // namespace pcsp
