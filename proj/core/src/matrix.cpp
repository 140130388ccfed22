#include "k3g2/matrix.hpp"

#include <stdexcept>

namespace k3g2 {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(const IntVec& d) {
    IntMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

bool IntMatrix::is_identity() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool IntMatrix::is_zero() const {
    for (const Integer& x : a)
        if (x != 0) return false;
    return true;
}

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_int(const IntMatrix& src) {
    RatMatrix m(src.rows, src.cols);
    for (size_t i = 0; i < src.a.size(); ++i) m.a[i] = Rational(src.a[i]);
    return m;
}

bool RatMatrix::is_identity() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

template <typename M>
static M mul_impl(const M& x, const M& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix product shape mismatch");
    M r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const auto& xv = x.at(i, k);
            if (xv == 0) continue;
            for (int j = 0; j < y.cols; ++j) r.at(i, j) += xv * y.at(k, j);
        }
    return r;
}

IntMatrix mul(const IntMatrix& x, const IntMatrix& y) { return mul_impl(x, y); }
RatMatrix mul(const RatMatrix& x, const RatMatrix& y) { return mul_impl(x, y); }

template <typename M>
static M transpose_impl(const M& m) {
    M r(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
    return r;
}

IntMatrix transpose(const IntMatrix& m) { return transpose_impl(m); }
RatMatrix transpose(const RatMatrix& m) { return transpose_impl(m); }

template <typename M>
static M add_impl(const M& x, const M& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw std::invalid_argument("matrix sum shape mismatch");
    M r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

IntMatrix add(const IntMatrix& x, const IntMatrix& y) { return add_impl(x, y); }
RatMatrix add(const RatMatrix& x, const RatMatrix& y) { return add_impl(x, y); }

IntMatrix negate(const IntMatrix& m) {
    IntMatrix r = m;
    for (Integer& x : r.a) x = -x;
    return r;
}

RatMatrix scale(const RatMatrix& m, const Rational& c) {
    RatMatrix r = m;
    for (Rational& x : r.a) x *= c;
    return r;
}

IntVec negate(const IntVec& v) {
    IntVec r = v;
    for (Integer& x : r) x = -x;
    return r;
}

RatVec negate(const RatVec& v) {
    RatVec r = v;
    for (Rational& x : r) x = -x;
    return r;
}

IntVec mat_apply(const IntMatrix& m, const IntVec& v) {
    if (static_cast<int>(v.size()) != m.cols) throw std::invalid_argument("matrix apply shape mismatch");
    IntVec r(m.rows, Integer(0));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r[i] += m.at(i, j) * v[j];
    return r;
}

RatVec mat_apply(const RatMatrix& m, const RatVec& v) {
    if (static_cast<int>(v.size()) != m.cols) throw std::invalid_argument("matrix apply shape mismatch");
    RatVec r(m.rows, Rational(0));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r[i] += m.at(i, j) * v[j];
    return r;
}

RatVec mat_apply(const IntMatrix& m, const RatVec& v) {
    if (static_cast<int>(v.size()) != m.cols) throw std::invalid_argument("matrix apply shape mismatch");
    RatVec r(m.rows, Rational(0));
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r[i] += Rational(m.at(i, j)) * v[j];
    return r;
}

// Bareiss fraction-free elimination keeps every intermediate value integral.
Integer det(const IntMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
    int n = m.rows;
    if (n == 0) return 1;
    IntMatrix w = m;
    Integer prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Integer num = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                mpz_divexact(w.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
        prev = w.at(k, k);
    }
    return sign > 0 ? w.at(n - 1, n - 1) : -w.at(n - 1, n - 1);
}

Rational det(const RatMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
    int n = m.rows;
    RatMatrix w = m;
    Rational d(1);
    for (int k = 0; k < n; ++k) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (w.at(i, k) != 0) { p = i; break; }
        if (p < 0) return Rational(0);
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(p, j));
            d = -d;
        }
        d *= w.at(k, k);
        Rational inv = Rational(1) / w.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            if (w.at(i, k) == 0) continue;
            Rational f = w.at(i, k) * inv;
            for (int j = k; j < n; ++j) w.at(i, j) -= f * w.at(k, j);
        }
    }
    return d;
}

// Reduced row echelon form in place; returns pivot column indices.
static std::vector<int> rref(RatMatrix& w) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < w.cols && r < w.rows; ++c) {
        int p = -1;
        for (int i = r; i < w.rows; ++i)
            if (w.at(i, c) != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r)
            for (int j = 0; j < w.cols; ++j) std::swap(w.at(r, j), w.at(p, j));
        Rational inv = Rational(1) / w.at(r, c);
        for (int j = c; j < w.cols; ++j) w.at(r, j) *= inv;
        for (int i = 0; i < w.rows; ++i) {
            if (i == r || w.at(i, c) == 0) continue;
            Rational f = w.at(i, c);
            for (int j = c; j < w.cols; ++j) w.at(i, j) -= f * w.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank(const RatMatrix& m) {
    RatMatrix w = m;
    return static_cast<int>(rref(w).size());
}

std::optional<RatMatrix> inverse(const RatMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("inverse of non-square matrix");
    int n = m.rows;
    RatMatrix w(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) w.at(i, j) = m.at(i, j);
        w.at(i, n + i) = 1;
    }
    std::vector<int> pivots = rref(w);
    if (static_cast<int>(pivots.size()) != n) return std::nullopt;
    RatMatrix r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r.at(i, j) = w.at(i, n + j);
    return r;
}

RatMatrix rational_kernel(const RatMatrix& m) {
    RatMatrix w = m;
    std::vector<int> pivots = rref(w);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < m.cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    RatMatrix basis(m.cols, static_cast<int>(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        basis.at(fc, static_cast<int>(k)) = 1;
        for (size_t r = 0; r < pivots.size(); ++r)
            basis.at(pivots[r], static_cast<int>(k)) = -w.at(static_cast<int>(r), fc);
    }
    return basis;
}

namespace {

struct SmithWorker {
    IntMatrix d, u, v;

    explicit SmithWorker(const IntMatrix& m)
        : d(m), u(IntMatrix::identity(m.rows)), v(IntMatrix::identity(m.cols)) {}

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < d.cols; ++c) std::swap(d.at(i, c), d.at(j, c));
        for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < d.rows; ++r) std::swap(d.at(r, i), d.at(r, j));
        for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
    }
    // row i -= q * row j
    void row_sub(int i, int j, const Integer& q) {
        if (q == 0) return;
        for (int c = 0; c < d.cols; ++c) d.at(i, c) -= q * d.at(j, c);
        for (int c = 0; c < u.cols; ++c) u.at(i, c) -= q * u.at(j, c);
    }
    // col i -= q * col j
    void col_sub(int i, int j, const Integer& q) {
        if (q == 0) return;
        for (int r = 0; r < d.rows; ++r) d.at(r, i) -= q * d.at(r, j);
        for (int r = 0; r < v.rows; ++r) v.at(r, i) -= q * v.at(r, j);
    }
    void negate_row(int i) {
        for (int c = 0; c < d.cols; ++c) d.at(i, c) = -d.at(i, c);
        for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
    }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
    SmithWorker w(m);
    int n = std::min(m.rows, m.cols);
    int t = 0;
    while (t < n) {
        // pick the nonzero entry of smallest magnitude in the trailing block
        int pi = -1, pj = -1;
        Integer best;
        for (int i = t; i < m.rows; ++i)
            for (int j = t; j < m.cols; ++j) {
                const Integer& x = w.d.at(i, j);
                if (x == 0) continue;
                Integer ax = abs(x);
                if (pi < 0 || ax < best) {
                    best = ax;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;  // trailing block is zero
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        bool clean = true;
        for (int i = t + 1; i < m.rows; ++i) {
            if (w.d.at(i, t) == 0) continue;
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), w.d.at(i, t).get_mpz_t(), w.d.at(t, t).get_mpz_t());
            w.row_sub(i, t, q);
            if (w.d.at(i, t) != 0) clean = false;
        }
        for (int j = t + 1; j < m.cols; ++j) {
            if (w.d.at(t, j) == 0) continue;
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), w.d.at(t, j).get_mpz_t(), w.d.at(t, t).get_mpz_t());
            w.col_sub(j, t, q);
            if (w.d.at(t, j) != 0) clean = false;
        }
        if (!clean) continue;  // smaller remainders exist, re-pivot at the same t

        // pivot must divide the whole trailing block before moving on
        bool divides = true;
        for (int i = t + 1; i < m.rows && divides; ++i)
            for (int j = t + 1; j < m.cols; ++j) {
                Integer r;
                mpz_fdiv_r(r.get_mpz_t(), w.d.at(i, j).get_mpz_t(), w.d.at(t, t).get_mpz_t());
                if (r != 0) {
                    w.row_sub(t, i, Integer(-1));  // pull the offending row in and redo
                    divides = false;
                    break;
                }
            }
        if (!divides) continue;
        ++t;
    }
    for (int i = 0; i < n; ++i)
        if (w.d.at(i, i) < 0) w.negate_row(i);
    return {w.u, w.d, w.v};
}

IntMatrix integral_kernel(const IntMatrix& m) {
    SmithDecomposition s = smith_normal_form(m);
    int n = std::min(m.rows, m.cols);
    std::vector<int> free_cols;
    for (int i = 0; i < n; ++i)
        if (s.d.at(i, i) == 0) free_cols.push_back(i);
    for (int i = n; i < m.cols; ++i) free_cols.push_back(i);
    IntMatrix basis(m.cols, static_cast<int>(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k)
        for (int r = 0; r < m.cols; ++r) basis.at(r, static_cast<int>(k)) = s.v.at(r, free_cols[k]);
    return basis;
}

std::tuple<int, int, int> signature(const RatMatrix& sym) {
    if (sym.rows != sym.cols) throw std::invalid_argument("signature of non-square matrix");
    int n = sym.rows;
    RatMatrix w = sym;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (w.at(i, j) != w.at(j, i)) throw std::invalid_argument("signature of non-symmetric matrix");
    std::vector<bool> done(n, false);
    int pos = 0, neg = 0, zero = 0;
    for (int step = 0; step < n; ++step) {
        int k = -1;
        for (int i = 0; i < n; ++i)
            if (!done[i] && w.at(i, i) != 0) { k = i; break; }
        if (k < 0) {
            // all remaining diagonal entries vanish; borrow an off-diagonal one
            int bi = -1, bj = -1;
            for (int i = 0; i < n && bi < 0; ++i) {
                if (done[i]) continue;
                for (int j = 0; j < n; ++j)
                    if (!done[j] && j != i && w.at(i, j) != 0) { bi = i; bj = j; break; }
            }
            if (bi < 0) {
                for (int i = 0; i < n; ++i)
                    if (!done[i]) ++zero;
                break;
            }
            // row/col j added into row/col i makes w(i,i) = 2 w(i,j) != 0
            for (int c = 0; c < n; ++c) w.at(bi, c) += w.at(bj, c);
            for (int r = 0; r < n; ++r) w.at(r, bi) += w.at(r, bj);
            k = bi;
        }
        Rational pivot = w.at(k, k);
        if (pivot > 0) ++pos; else ++neg;
        done[k] = true;
        for (int i = 0; i < n; ++i) {
            if (done[i] || w.at(i, k) == 0) continue;
            Rational f = w.at(i, k) / pivot;
            for (int c = 0; c < n; ++c) w.at(i, c) -= f * w.at(k, c);
            for (int r = 0; r < n; ++r) w.at(r, i) -= f * w.at(r, k);
        }
    }
    return {pos, neg, zero};
}

CongruenceSolution solve_affine_congruence(const IntMatrix& a, const RatVec& b) {
    if (a.rows != a.cols) throw std::invalid_argument("affine congruence expects a square matrix");
    if (static_cast<int>(b.size()) != a.rows) throw std::invalid_argument("affine congruence shape mismatch");
    int n = a.rows;
    // U A V = D.  With y = V^{-1} x the system A x = b + k (k integral) becomes
    // D y = U b + U k, and U k ranges over Z^n.  Rows with d_i = 0 therefore
    // require (U b)_i integral; rows with d_i != 0 fix y_i up to Z.
    SmithDecomposition s = smith_normal_form(a);
    RatVec ub = mat_apply(s.u, b);
    RatVec y(n, Rational(0));
    for (int i = 0; i < n; ++i) {
        if (s.d.at(i, i) == 0) {
            if (!is_integral(ub[i])) return {false, {}};
        } else {
            y[i] = ub[i] / Rational(s.d.at(i, i));
        }
    }
    CongruenceSolution r;
    r.solvable = true;
    r.witness = mat_apply(s.v, y);
    return r;
}

std::optional<QuadraticFormLDL> positive_definite_ldl(const RatMatrix& sym) {
    if (sym.rows != sym.cols) throw std::invalid_argument("ldl of non-square matrix");
    int n = sym.rows;
    RatMatrix w = sym;
    QuadraticFormLDL out;
    out.d.assign(n, Rational(0));
    out.l = RatMatrix::identity(n);
    for (int k = 0; k < n; ++k) {
        Rational pivot = w.at(k, k);
        if (pivot <= 0) return std::nullopt;
        out.d[k] = pivot;
        for (int j = k + 1; j < n; ++j) out.l.at(k, j) = w.at(k, j) / pivot;
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) w.at(i, j) -= w.at(k, i) * w.at(k, j) / pivot;
    }
    return out;
}

}  // namespace k3g2
