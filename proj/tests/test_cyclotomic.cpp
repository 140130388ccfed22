#include <doctest.h>

#include <map>
#include <numeric>
#include <vector>

#include "k3g2/cyclotomic.hpp"

using namespace k3g2;

namespace {

// Test-side integer polynomials, constant term first.
using Poly = std::vector<Integer>;

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, Integer(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// Exact division of monic-divisor polynomials; asserts a zero remainder.
Poly poly_divide_exact(Poly num, const Poly& den) {
    REQUIRE(den.back() == 1);
    REQUIRE(num.size() >= den.size());
    Poly q(num.size() - den.size() + 1, Integer(0));
    for (size_t k = q.size(); k-- > 0;) {
        Integer c = num[k + den.size() - 1];
        q[k] = c;
        for (size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
    }
    for (const Integer& c : num) REQUIRE(c == 0);
    return q;
}

// x^n - 1 divided by the product of the proper-divisor factors, recursively.
const Poly& naive_cyclotomic(int n) {
    static std::map<int, Poly> memo;
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Poly xn(static_cast<size_t>(n) + 1, Integer(0));
    xn[0] = -1;
    xn[static_cast<size_t>(n)] = 1;
    Poly denom = {Integer(1)};
    for (int d = 1; d < n; ++d)
        if (n % d == 0) denom = poly_mul(denom, naive_cyclotomic(d));
    return memo.emplace(n, poly_divide_exact(xn, denom)).first->second;
}

int naive_phi(int n) {
    int count = 0;
    for (int k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1) ++count;
    return count;
}

}  // namespace

TEST_CASE("euler phi agrees with the coprime count") {
    for (int n = 1; n <= 30; ++n) {
        CAPTURE(n);
        CHECK(euler_phi(n) == naive_phi(n));
    }
}

TEST_CASE("cyclotomic polynomials match the recursive factorization") {
    for (int n : {1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 20, 24, 30}) {
        CAPTURE(n);
        const IntVec& lib = cyclotomic_polynomial(n);
        const Poly& ref = naive_cyclotomic(n);
        REQUIRE(lib.size() == ref.size());
        for (size_t i = 0; i < lib.size(); ++i) CHECK(lib[i] == ref[i]);
        CHECK(static_cast<int>(lib.size()) == euler_phi(n) + 1);
    }
}

TEST_CASE("root powers satisfy the cyclic relations") {
    for (int n : {1, 2, 3, 4, 5, 6, 7, 8, 12, 20}) {
        CAPTURE(n);
        Cyclotomic z = Cyclotomic::root_power(n, 1);
        CHECK(Cyclotomic::root_power(n, n) == Cyclotomic::one(n));
        CHECK(Cyclotomic::root_power(n, -3) * Cyclotomic::root_power(n, 3) == Cyclotomic::one(n));
        // Power reduction works for exponents far outside [0, n).
        CHECK(Cyclotomic::root_power(n, 7 * n + 5) == Cyclotomic::root_power(n, 5));
        // The sum over one full cycle vanishes for n > 1.
        Cyclotomic sum = Cyclotomic::zero(n);
        Cyclotomic p = Cyclotomic::one(n);
        for (int k = 0; k < n; ++k) {
            sum = sum + p;
            p = p * z;
        }
        if (n == 1) {
            CHECK(sum == Cyclotomic::one(1));
        } else {
            CHECK(sum.is_zero());
        }
    }
}

TEST_CASE("conjugation and real and imaginary parts decompose every value") {
    for (int n : {3, 4, 5, 8, 12}) {
        CAPTURE(n);
        Cyclotomic x = Cyclotomic::root_power(n, 1) + Cyclotomic::from_rational(n, Rational(1, 2)) +
                       Cyclotomic::root_power(n, 2) * Cyclotomic::from_rational(n, Rational(3));
        // conj is an involution and multiplicative.
        CHECK(x.conj().conj() == x);
        Cyclotomic y = Cyclotomic::root_power(n, 2) - Cyclotomic::one(n);
        CHECK((x * y).conj() == x.conj() * y.conj());
        // Unit roots have conjugate inverses.
        Cyclotomic z = Cyclotomic::root_power(n, 1);
        CHECK(z * z.conj() == Cyclotomic::one(n));
        // x = re + i * im, working in a conductor that contains i (the
        // split itself needs the imaginary unit for non-real values).
        int m = std::lcm(n, 4);
        Cyclotomic xm = x.embedded(m);
        Cyclotomic re = xm.real_part();
        Cyclotomic im = xm.imag_part();
        Cyclotomic i = Cyclotomic::imaginary_unit(m);
        CHECK(xm == re + i * im);
        // Real and imaginary parts are conjugation fixed.
        CHECK(re.conj() == re);
        CHECK(im.conj() == im);
    }
}

TEST_CASE("field inverse and rational detection") {
    Cyclotomic v = Cyclotomic::one(5) + Cyclotomic::root_power(5, 1);
    Cyclotomic w = v.inverse();
    CHECK(v * w == Cyclotomic::one(5));
    CHECK_THROWS(Cyclotomic::zero(5).inverse());

    CHECK(Cyclotomic::from_rational(7, Rational(22, 7)).is_rational());
    CHECK(Cyclotomic::from_rational(7, Rational(22, 7)).rational_value() == Rational(22, 7));
    CHECK(!Cyclotomic::root_power(5, 1).is_rational());
    // zeta_6 + conj(zeta_6) = 1 is rational even though zeta_6 is not.
    Cyclotomic z6 = Cyclotomic::root_power(6, 1);
    CHECK((z6 + z6.conj()).is_rational());
    CHECK((z6 + z6.conj()).rational_value() == Rational(1));
}

TEST_CASE("embedding into a larger field is a ring homomorphism") {
    Cyclotomic a = Cyclotomic::root_power(3, 1) + Cyclotomic::from_rational(3, Rational(2, 5));
    Cyclotomic b = Cyclotomic::root_power(3, 2) - Cyclotomic::one(3);
    CHECK((a + b).embedded(12) == a.embedded(12) + b.embedded(12));
    CHECK((a * b).embedded(12) == a.embedded(12) * b.embedded(12));
    // The embedded primitive root is the right power of the bigger root.
    CHECK(Cyclotomic::root_power(3, 1).embedded(12) == Cyclotomic::root_power(12, 4));
}

TEST_CASE("comparison is a strict total order on equal conductors") {
    std::vector<Cyclotomic> vals = {Cyclotomic::zero(8), Cyclotomic::one(8),
                                    Cyclotomic::root_power(8, 1), Cyclotomic::root_power(8, 3),
                                    Cyclotomic::root_power(8, 1) + Cyclotomic::one(8)};
    for (const auto& a : vals) {
        CHECK(Cyclotomic::compare(a, a) == 0);
        for (const auto& b : vals) {
            CHECK(Cyclotomic::compare(a, b) == -Cyclotomic::compare(b, a));
            CHECK((Cyclotomic::compare(a, b) == 0) == (a == b));
        }
    }
}
