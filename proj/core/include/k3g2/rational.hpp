#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace k3g2 {

// All arithmetic in this library is exact.  Integers and rationals are
// GMP arbitrary-precision values; nothing is ever rounded to floating point.
using Integer = mpz_class;
using Rational = mpq_class;

using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;

// mpq_class built from raw numerator/denominator is not canonical until
// canonicalize() runs; every construction from parts goes through here.
inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

// Largest integer <= q.
inline Integer floor_q(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

// Smallest integer >= q.
inline Integer ceil_q(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

// Largest integer s with s*s <= n.  Requires n >= 0.
inline Integer isqrt(const Integer& n) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Common denominator of a rational vector (1 for the empty vector).
inline Integer common_denominator(const RatVec& v) {
    Integer d = 1;
    for (const Rational& q : v) d = lcm(d, q.get_den());
    return d;
}

inline RatVec to_rational(const IntVec& v) {
    RatVec r;
    r.reserve(v.size());
    for (const Integer& x : v) r.emplace_back(x);
    return r;
}

inline std::string to_string(const Integer& x) { return x.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace k3g2
