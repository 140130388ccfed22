#include "k3g2/forms.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace k3g2 {

namespace {

// Sorts indices in place; returns the sign of the permutation, or 0 if an
// index repeats.
int sort_sign(std::vector<int>& idx) {
    int sign = 1;
    for (std::size_t i = 1; i < idx.size(); ++i) {
        for (std::size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
            std::swap(idx[j], idx[j - 1]);
            sign = -sign;
        }
    }
    for (std::size_t i = 1; i < idx.size(); ++i) {
        if (idx[i] == idx[i - 1]) return 0;
    }
    return sign;
}

}  // namespace

ExteriorForm::ExteriorForm(int dim, int degree) : dim_(dim), degree_(degree) {
    if (dim < 0 || degree < 0 || degree > dim) throw std::invalid_argument("bad form shape");
}

ExteriorForm ExteriorForm::monomial(int dim, const std::vector<int>& indices, const Rational& c) {
    ExteriorForm w(dim, static_cast<int>(indices.size()));
    w.add_term(indices, c);
    return w;
}

void ExteriorForm::add_term(std::vector<int> indices, Rational c) {
    if (static_cast<int>(indices.size()) != degree_)
        throw std::invalid_argument("term degree mismatch");
    for (int i : indices) {
        if (i < 0 || i >= dim_) throw std::invalid_argument("form index out of range");
    }
    int sign = sort_sign(indices);
    if (sign == 0 || c == 0) return;
    if (sign < 0) c = -c;
    auto it = terms_.find(indices);
    if (it == terms_.end()) {
        terms_.emplace(std::move(indices), std::move(c));
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational ExteriorForm::coefficient(const std::vector<int>& indices) const {
    std::vector<int> idx = indices;
    int sign = sort_sign(idx);
    if (sign == 0) return Rational(0);
    auto it = terms_.find(idx);
    if (it == terms_.end()) return Rational(0);
    return sign > 0 ? it->second : Rational(-it->second);
}

ExteriorForm ExteriorForm::operator+(const ExteriorForm& o) const {
    if (dim_ != o.dim_ || degree_ != o.degree_)
        throw std::invalid_argument("form shape mismatch in addition");
    ExteriorForm r = *this;
    for (const auto& [idx, c] : o.terms_) {
        auto it = r.terms_.find(idx);
        if (it == r.terms_.end()) {
            r.terms_.emplace(idx, c);
        } else {
            it->second += c;
            if (it->second == 0) r.terms_.erase(it);
        }
    }
    return r;
}

ExteriorForm ExteriorForm::operator-(const ExteriorForm& o) const { return *this + (-o); }

ExteriorForm ExteriorForm::operator-() const {
    ExteriorForm r = *this;
    for (auto& [idx, c] : r.terms_) c = -c;
    return r;
}

ExteriorForm ExteriorForm::scaled(const Rational& c) const {
    ExteriorForm r(dim_, degree_);
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& [idx, v] : r.terms_) v *= c;
    return r;
}

bool ExteriorForm::operator==(const ExteriorForm& o) const {
    return dim_ == o.dim_ && degree_ == o.degree_ && terms_ == o.terms_;
}

std::string ExteriorForm::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [idx, c] : terms_) {
        std::string cs = to_string(c);
        if (!first) os << (cs[0] == '-' ? " - " : " + ");
        if (!first && cs[0] == '-') cs = cs.substr(1);
        first = false;
        if (cs != "1" || idx.empty()) os << cs << (idx.empty() ? "" : "*");
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (k) os << "^";
            os << "e" << idx[k] + 1;
        }
    }
    return os.str();
}

ExteriorForm wedge(const ExteriorForm& x, const ExteriorForm& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("wedge dimension mismatch");
    ExteriorForm r(x.dim(), x.degree() + y.degree());
    for (const auto& [ix, cx] : x.terms()) {
        for (const auto& [iy, cy] : y.terms()) {
            std::vector<int> idx = ix;
            idx.insert(idx.end(), iy.begin(), iy.end());
            r.add_term(std::move(idx), cx * cy);
        }
    }
    return r;
}

ExteriorForm contract(int i, const ExteriorForm& w) {
    if (w.degree() == 0) return ExteriorForm(w.dim(), 0);
    ExteriorForm r(w.dim(), w.degree() - 1);
    for (const auto& [idx, c] : w.terms()) {
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (idx[k] != i) continue;
            std::vector<int> rest;
            for (std::size_t l = 0; l < idx.size(); ++l) {
                if (l != k) rest.push_back(idx[l]);
            }
            Rational cc = (k % 2 == 0) ? c : Rational(-c);
            r.add_term(std::move(rest), std::move(cc));
        }
    }
    return r;
}

ExteriorForm pullback(const RatMatrix& f, const ExteriorForm& w) {
    if (f.rows != w.dim() || f.cols != w.dim())
        throw std::invalid_argument("pullback matrix size mismatch");
    ExteriorForm r(w.dim(), w.degree());
    for (const auto& [idx, c] : w.terms()) {
        // Expand the product of pulled-back covectors.
        std::vector<std::pair<std::vector<int>, Rational>> acc{{{}, c}};
        for (int i : idx) {
            std::vector<std::pair<std::vector<int>, Rational>> next;
            for (const auto& [partial, pc] : acc) {
                for (int j = 0; j < f.cols; ++j) {
                    const Rational& fij = f.at(i, j);
                    if (fij == 0) continue;
                    auto ext = partial;
                    ext.push_back(j);
                    next.emplace_back(std::move(ext), pc * fij);
                }
            }
            acc = std::move(next);
        }
        for (auto& [full, pc] : acc) r.add_term(std::move(full), std::move(pc));
    }
    return r;
}

ExteriorForm hodge_star(const ExteriorForm& w) {
    int n = w.dim();
    ExteriorForm r(n, n - w.degree());
    for (const auto& [idx, c] : w.terms()) {
        std::vector<bool> used(n, false);
        for (int i : idx) used[i] = true;
        std::vector<int> comp;
        for (int i = 0; i < n; ++i) {
            if (!used[i]) comp.push_back(i);
        }
        // Sign of the permutation (idx, comp) relative to (0..n-1): count
        // inversions between the two sorted halves.
        long inv = 0;
        for (int i : idx) {
            for (int j : comp) {
                if (j < i) ++inv;
            }
        }
        Rational cc = (inv % 2 == 0) ? c : Rational(-c);
        r.add_term(std::move(comp), std::move(cc));
    }
    return r;
}

ExteriorForm standard_g2_form() {
    ExteriorForm phi(7, 3);
    auto t = [&phi](int a, int b, int c, int s) {
        phi.add_term({a - 1, b - 1, c - 1}, Rational(s));
    };
    t(1, 2, 3, 1);
    t(1, 4, 5, 1);
    t(1, 6, 7, 1);
    t(2, 4, 6, 1);
    t(2, 5, 7, -1);
    t(3, 4, 7, -1);
    t(3, 5, 6, -1);
    return phi;
}

std::array<ExteriorForm, 3> self_dual_basis(int dim, int offset) {
    if (offset < 0 || offset + 4 > dim) throw std::invalid_argument("self-dual offset out of range");
    auto two = [dim](int a, int b, int s) {
        return ExteriorForm::monomial(dim, {a, b}, Rational(s));
    };
    int o = offset;
    std::array<ExteriorForm, 3> w = {
        two(o + 0, o + 1, 1) + two(o + 2, o + 3, 1),
        two(o + 0, o + 2, 1) - two(o + 1, o + 3, 1),
        -(two(o + 0, o + 3, 1) + two(o + 1, o + 2, 1)),
    };
    return w;
}

ExteriorForm split_g2_form() {
    auto w = self_dual_basis(7, 3);
    ExteriorForm phi(7, 3);
    for (int i = 0; i < 3; ++i) {
        phi = phi + wedge(w[i], ExteriorForm::monomial(7, {i}));
    }
    phi = phi + ExteriorForm::monomial(7, {0, 1, 2});
    return phi;
}

RatMatrix induced_metric(const ExteriorForm& phi) {
    if (phi.dim() != 7 || phi.degree() != 3)
        throw std::invalid_argument("metric needs a 3-form on R^7");
    const std::vector<int> vol{0, 1, 2, 3, 4, 5, 6};
    RatMatrix b(7, 7);
    std::vector<ExteriorForm> contractions;
    for (int i = 0; i < 7; ++i) contractions.push_back(contract(i, phi));
    for (int i = 0; i < 7; ++i) {
        for (int j = i; j < 7; ++j) {
            ExteriorForm top = wedge(wedge(contractions[i], contractions[j]), phi);
            Rational v = top.coefficient(vol) / 6;
            b.at(i, j) = v;
            b.at(j, i) = v;
        }
    }
    return b;
}

RatMatrix real_form(const AntiUnitaryMap& x) {
    auto parts = [](const Cyclotomic& z) {
        Cyclotomic re = z.real_part();
        Cyclotomic im = z.imag_part();
        if (!re.is_rational() || !im.is_rational()) {
            throw std::domain_error("matrix entry has irrational real or imaginary part");
        }
        return std::pair<Rational, Rational>{re.rational_value(), im.rational_value()};
    };
    int n = static_cast<int>(std::lcm(x.conductor(), 4));
    AntiUnitaryMap e = x.embedded(n);
    auto [ar, ai] = parts(e.a);
    auto [br, bi] = parts(e.b);
    auto [cr, ci] = parts(e.c);
    auto [dr, di] = parts(e.d);
    RatMatrix m(4, 4);
    // z1' = a z1 + b z2, z2' = c z1 + d z2 on (x1 + i x2, x3 + i x4).
    m.at(0, 0) = ar;  m.at(0, 1) = -ai; m.at(0, 2) = br;  m.at(0, 3) = -bi;
    m.at(1, 0) = ai;  m.at(1, 1) = ar;  m.at(1, 2) = bi;  m.at(1, 3) = br;
    m.at(2, 0) = cr;  m.at(2, 1) = -ci; m.at(2, 2) = dr;  m.at(2, 3) = -di;
    m.at(3, 0) = ci;  m.at(3, 1) = cr;  m.at(3, 2) = di;  m.at(3, 3) = dr;
    if (x.conj) {
        // Conjugation first: (x1,x2,x3,x4) -> (x1,-x2,x3,-x4).
        for (int i = 0; i < 4; ++i) {
            m.at(i, 1) = -m.at(i, 1);
            m.at(i, 3) = -m.at(i, 3);
        }
    }
    return m;
}

RatMatrix action_on_self_dual(const RatMatrix& f) {
    if (f.rows != 4 || f.cols != 4) throw std::invalid_argument("self-dual action needs a 4x4 map");
    if (!mul(f, transpose(f)).is_identity()) {
        throw std::invalid_argument("self-dual action needs an orthogonal map");
    }
    auto w = self_dual_basis(4, 0);
    // Index pairs of the 2-form basis on R^4.
    const std::vector<std::vector<int>> pairs = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    // Coefficients of omega^j on those pairs.
    RatMatrix basis(3, 6);
    for (int j = 0; j < 3; ++j) {
        for (int p = 0; p < 6; ++p) basis.at(j, p) = w[j].coefficient(pairs[p]);
    }
    RatMatrix r(3, 3);
    for (int i = 0; i < 3; ++i) {
        ExteriorForm img = pullback(f, w[i]);
        // Solve img = sum_j r_ij omega^j; the omegas have disjoint supports,
        // each with two +-1 entries, so matching one coordinate per omega and
        // verifying the rest is enough.
        for (int j = 0; j < 3; ++j) {
            // Leading pair of omega^j is pairs with first nonzero coefficient.
            for (int p = 0; p < 6; ++p) {
                if (basis.at(j, p) != 0) {
                    r.at(i, j) = img.coefficient(pairs[p]) / basis.at(j, p);
                    break;
                }
            }
        }
        ExteriorForm rebuilt(4, 2);
        for (int j = 0; j < 3; ++j) rebuilt = rebuilt + w[j].scaled(r.at(i, j));
        if (!(rebuilt == img)) {
            throw std::domain_error(
                "map does not preserve the self-dual span (it mixes in anti-self-dual forms)");
        }
    }
    return r;
}

std::vector<IntMatrix> all_signed_permutations_3() {
    std::vector<IntMatrix> out;
    int perm[3] = {0, 1, 2};
    std::vector<std::array<int, 3>> perms;
    std::sort(perm, perm + 3);
    do {
        perms.push_back({perm[0], perm[1], perm[2]});
    } while (std::next_permutation(perm, perm + 3));
    for (const auto& p : perms) {
        for (int mask = 0; mask < 8; ++mask) {
            IntMatrix m(3, 3);
            for (int i = 0; i < 3; ++i) m.at(i, p[i]) = (mask >> i) & 1 ? -1 : 1;
            out.push_back(m);
        }
    }
    return out;
}

bool find_basis_alignment(const std::vector<RatMatrix>& lhs, const std::vector<RatMatrix>& rhs,
                          IntMatrix& out) {
    if (lhs.size() != rhs.size()) throw std::invalid_argument("alignment list size mismatch");
    for (const auto& p : all_signed_permutations_3()) {
        RatMatrix pq = RatMatrix::from_int(p);
        RatMatrix pt = RatMatrix::from_int(transpose(p));  // P^-1 for signed permutations
        bool ok = true;
        for (std::size_t k = 0; k < lhs.size() && ok; ++k) {
            if (!(mul(mul(pq, lhs[k]), pt) == rhs[k])) ok = false;
        }
        if (ok) {
            out = p;
            return true;
        }
    }
    return false;
}

}  // namespace k3g2
