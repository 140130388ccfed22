#include "k3g2/cyclotomic.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace k3g2 {

int euler_phi(int n) {
    if (n <= 0) throw std::invalid_argument("euler_phi expects a positive argument");
    int result = n;
    int m = n;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace {

// polynomials as coefficient vectors, constant term first

int poly_degree(const RatVec& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

// remainder of f modulo a monic integer polynomial g
RatVec poly_rem(RatVec f, const IntVec& g) {
    int dg = static_cast<int>(g.size()) - 1;
    for (int df = poly_degree(f); df >= dg; df = poly_degree(f)) {
        Rational lead = f[df];
        for (int i = 0; i <= dg; ++i) f[df - dg + i] -= lead * Rational(g[i]);
        f[df] = 0;
    }
    f.resize(dg, Rational(0));
    if (f.empty()) f.assign(1, Rational(0));
    return f;
}

// exact quotient of integer polynomials, g monic, g | f
IntVec poly_div_exact(IntVec f, const IntVec& g) {
    int dg = static_cast<int>(g.size()) - 1;
    int df = static_cast<int>(f.size()) - 1;
    while (df >= 0 && f[df] == 0) --df;
    if (df < dg) throw std::logic_error("cyclotomic polynomial division underflow");
    IntVec q(df - dg + 1, Integer(0));
    for (int d = df; d >= dg; --d) {
        if (f[d] == 0) continue;
        Integer c = f[d];
        q[d - dg] = c;
        for (int i = 0; i <= dg; ++i) f[d - dg + i] -= c * g[i];
    }
    for (const Integer& c : f)
        if (c != 0) throw std::logic_error("cyclotomic polynomial division not exact");
    return q;
}

}  // namespace

const IntVec& cyclotomic_polynomial(int n) {
    static std::map<int, IntVec> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    if (n <= 0) throw std::invalid_argument("cyclotomic polynomial index must be positive");
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
    IntVec f(n + 1, Integer(0));
    f[0] = -1;
    f[n] = 1;
    for (int d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        f = poly_div_exact(f, cyclotomic_polynomial(d));
    }
    return cache.emplace(n, std::move(f)).first->second;
}

Cyclotomic::Cyclotomic(int conductor, RatVec coeff) : conductor_(conductor) {
    if (conductor <= 0) throw std::invalid_argument("conductor must be positive");
    int phi = euler_phi(conductor);
    if (static_cast<int>(coeff.size()) > phi) {
        coeff_ = poly_rem(std::move(coeff), cyclotomic_polynomial(conductor));
        coeff_.resize(phi, Rational(0));
    } else {
        coeff_ = std::move(coeff);
        coeff_.resize(phi, Rational(0));
    }
}

Cyclotomic Cyclotomic::zero(int conductor) { return Cyclotomic(conductor, RatVec{}); }

Cyclotomic Cyclotomic::one(int conductor) { return from_rational(conductor, Rational(1)); }

Cyclotomic Cyclotomic::from_rational(int conductor, const Rational& q) {
    return Cyclotomic(conductor, RatVec{q});
}

Cyclotomic Cyclotomic::root_power(int conductor, long k) {
    long r = k % conductor;
    if (r < 0) r += conductor;
    RatVec f(static_cast<size_t>(r) + 1, Rational(0));
    f[static_cast<size_t>(r)] = 1;
    return Cyclotomic(conductor, std::move(f));
}

Cyclotomic Cyclotomic::imaginary_unit(int conductor) {
    if (conductor % 4 != 0) throw std::invalid_argument("imaginary unit needs 4 | conductor");
    return root_power(conductor, conductor / 4);
}

bool Cyclotomic::is_zero() const {
    for (const Rational& c : coeff_)
        if (c != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < coeff_.size(); ++i)
        if (coeff_[i] != 0) return false;
    return true;
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
    return coeff_[0];
}

static void require_same_conductor(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor() != b.conductor())
        throw std::invalid_argument("conductor mismatch; embed into a common conductor first");
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    require_same_conductor(*this, o);
    RatVec r = coeff_;
    for (size_t i = 0; i < r.size(); ++i) r[i] += o.coeff_[i];
    return Cyclotomic(conductor_, std::move(r));
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const {
    require_same_conductor(*this, o);
    RatVec r = coeff_;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= o.coeff_[i];
    return Cyclotomic(conductor_, std::move(r));
}

Cyclotomic Cyclotomic::operator-() const {
    RatVec r = coeff_;
    for (Rational& c : r) c = -c;
    return Cyclotomic(conductor_, std::move(r));
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    require_same_conductor(*this, o);
    RatVec prod(coeff_.size() + o.coeff_.size(), Rational(0));
    for (size_t i = 0; i < coeff_.size(); ++i) {
        if (coeff_[i] == 0) continue;
        for (size_t j = 0; j < o.coeff_.size(); ++j) {
            if (o.coeff_[j] == 0) continue;
            prod[i + j] += coeff_[i] * o.coeff_[j];
        }
    }
    return Cyclotomic(conductor_, std::move(prod));
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    require_same_conductor(*this, o);
    return coeff_ == o.coeff_;
}

Cyclotomic Cyclotomic::conj() const {
    RatVec raw(static_cast<size_t>(conductor_), Rational(0));
    raw[0] = coeff_[0];
    for (size_t k = 1; k < coeff_.size(); ++k) {
        if (coeff_[k] == 0) continue;
        raw[static_cast<size_t>(conductor_) - k] += coeff_[k];
    }
    return Cyclotomic(conductor_, std::move(raw));
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero cyclotomic value");
    if (is_rational()) return from_rational(conductor_, Rational(1) / coeff_[0]);
    // extended Euclid in Q[x]: s * f + t * Phi = 1, so s is the inverse
    RatVec r0;  // Phi as rationals
    for (const Integer& c : cyclotomic_polynomial(conductor_)) r0.emplace_back(c);
    RatVec r1 = coeff_;
    RatVec s0{Rational(0)}, s1{Rational(1)};
    while (true) {
        int d1 = poly_degree(r1);
        if (d1 < 0) throw std::logic_error("cyclotomic inverse: unexpected zero remainder");
        if (d1 == 0) {
            Rational scale = Rational(1) / r1[0];
            RatVec inv = s1;
            for (Rational& c : inv) c *= scale;
            return Cyclotomic(conductor_, std::move(inv));
        }
        // r0 = q * r1 + r2
        RatVec q(static_cast<size_t>(poly_degree(r0) - d1 + 1), Rational(0));
        RatVec r2 = r0;
        for (int d = poly_degree(r2); d >= d1; d = poly_degree(r2)) {
            Rational f = r2[static_cast<size_t>(d)] / r1[static_cast<size_t>(d1)];
            q[static_cast<size_t>(d - d1)] = f;
            for (int i = 0; i <= d1; ++i) r2[static_cast<size_t>(d - d1 + i)] -= f * r1[static_cast<size_t>(i)];
        }
        // s2 = s0 - q * s1
        RatVec s2(std::max(s0.size(), q.size() + s1.size()), Rational(0));
        for (size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
        for (size_t i = 0; i < q.size(); ++i) {
            if (q[i] == 0) continue;
            for (size_t j = 0; j < s1.size(); ++j) s2[i + j] -= q[i] * s1[j];
        }
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
    }
}

Cyclotomic Cyclotomic::embedded(int m) const {
    if (m % conductor_ != 0) throw std::invalid_argument("embedding target must be a conductor multiple");
    if (m == conductor_) return *this;
    int stride = m / conductor_;
    RatVec raw(coeff_.size() * static_cast<size_t>(stride) + 1, Rational(0));
    for (size_t k = 0; k < coeff_.size(); ++k) raw[k * static_cast<size_t>(stride)] = coeff_[k];
    return Cyclotomic(m, std::move(raw));
}

Cyclotomic Cyclotomic::real_part() const {
    Cyclotomic two_re = *this + conj();
    RatVec half = two_re.coeff_;
    for (Rational& c : half) c /= 2;
    return Cyclotomic(conductor_, std::move(half));
}

Cyclotomic Cyclotomic::imag_part() const {
    Cyclotomic diff = *this - conj();
    if (diff.is_zero()) return zero(conductor_);
    if (conductor_ % 4 != 0)
        throw std::domain_error("imaginary part needs 4 | conductor for a non-real value");
    Cyclotomic two_i = imaginary_unit(conductor_) * from_rational(conductor_, Rational(2));
    return diff * two_i.inverse();
}

std::string Cyclotomic::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < coeff_.size(); ++k) {
        if (coeff_[k] == 0) continue;
        if (!first) os << " + ";
        os << coeff_[k].get_str();
        if (k > 0) os << "*z" << conductor_ << "^" << k;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

int Cyclotomic::compare(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor_ != b.conductor_) return a.conductor_ < b.conductor_ ? -1 : 1;
    for (size_t i = 0; i < a.coeff_.size(); ++i) {
        int c = mpq_cmp(a.coeff_[i].get_mpq_t(), b.coeff_[i].get_mpq_t());
        if (c != 0) return c < 0 ? -1 : 1;
    }
    return 0;
}

}  // namespace k3g2
