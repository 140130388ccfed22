#pragma once

#include <string>
#include <vector>

#include "k3g2/rational.hpp"

namespace k3g2 {

// Elements of the cyclotomic field Q(zeta_N), stored as rational coefficient
// vectors of length phi(N) on the power basis 1, zeta, ..., zeta^{phi(N)-1}
// and kept reduced modulo the N-th cyclotomic polynomial.  The conductor N
// is part of the value; binary operations require equal conductors and
// callers embed into a common conductor (lcm) first.
class Cyclotomic {
  public:
    Cyclotomic() : conductor_(1), coeff_(1, Rational(0)) {}
    Cyclotomic(int conductor, RatVec coeff);  // reduces if necessary

    static Cyclotomic zero(int conductor);
    static Cyclotomic one(int conductor);
    static Cyclotomic from_rational(int conductor, const Rational& q);
    // zeta_conductor^k for any integer k (negative exponents allowed)
    static Cyclotomic root_power(int conductor, long k);
    // i = zeta_4, embedded into the given conductor (4 must divide it)
    static Cyclotomic imaginary_unit(int conductor);

    int conductor() const { return conductor_; }
    const RatVec& coefficients() const { return coeff_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const;  // requires is_rational()

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    // Galois conjugation zeta -> zeta^{N-1} (complex conjugation under any
    // complex embedding).
    Cyclotomic conj() const;
    // Multiplicative inverse; throws on zero.
    Cyclotomic inverse() const;
    // Image in Q(zeta_M) for a multiple M of the conductor.
    Cyclotomic embedded(int m) const;

    // (x + conj x)/2 and (x - conj x)/(2i); both again cyclotomic values.
    Cyclotomic real_part() const;
    Cyclotomic imag_part() const;

    std::string str() const;

    // Total order on equal-conductor values, for use as container keys.
    static int compare(const Cyclotomic& a, const Cyclotomic& b);

  private:
    int conductor_;
    RatVec coeff_;
};

int euler_phi(int n);
// N-th cyclotomic polynomial, integer coefficients, constant term first.
const IntVec& cyclotomic_polynomial(int n);

}  // namespace k3g2
