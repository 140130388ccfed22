#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "k3g2/rational.hpp"

namespace k3g2 {

// Dense matrices over Z and Q.  Row-major storage; matrices act on column
// vectors unless an operation says otherwise.

struct IntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Integer> a;

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Integer(0)) {}

    Integer& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Integer& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static IntMatrix identity(int n);
    static IntMatrix diagonal(const IntVec& d);

    bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool is_identity() const;
    bool is_zero() const;
};

struct RatMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Rational> a;

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rational(0)) {}

    Rational& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rational& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static RatMatrix identity(int n);
    static RatMatrix from_int(const IntMatrix& m);

    bool operator==(const RatMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool is_identity() const;
};

IntMatrix mul(const IntMatrix& x, const IntMatrix& y);
RatMatrix mul(const RatMatrix& x, const RatMatrix& y);
IntMatrix transpose(const IntMatrix& m);
RatMatrix transpose(const RatMatrix& m);
IntMatrix add(const IntMatrix& x, const IntMatrix& y);
RatMatrix add(const RatMatrix& x, const RatMatrix& y);
IntMatrix negate(const IntMatrix& m);
RatMatrix scale(const RatMatrix& m, const Rational& c);
IntVec negate(const IntVec& v);
RatVec negate(const RatVec& v);

IntVec mat_apply(const IntMatrix& m, const IntVec& v);
RatVec mat_apply(const RatMatrix& m, const RatVec& v);
RatVec mat_apply(const IntMatrix& m, const RatVec& v);

Integer det(const IntMatrix& m);          // Bareiss, fraction free
Rational det(const RatMatrix& m);
int rank(const RatMatrix& m);
std::optional<RatMatrix> inverse(const RatMatrix& m);

// Basis of { x : M x = 0 } over Q, returned as columns of the result.
RatMatrix rational_kernel(const RatMatrix& m);

// Basis of { x in Z^cols : M x = 0 }, saturated (a basis of the full
// solution lattice, not a finite-index sublattice).  Columns of the result.
IntMatrix integral_kernel(const IntMatrix& m);

// U * M * V = D with U, V unimodular and D diagonal, d_i | d_{i+1}, d_i >= 0.
struct SmithDecomposition {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;
};
SmithDecomposition smith_normal_form(const IntMatrix& m);

// Signature of a symmetric rational matrix: (positive, negative, zero)
// counts of an exact congruence diagonalization.
std::tuple<int, int, int> signature(const RatMatrix& sym);

// Decides whether A x == b (mod Z^n) has a real solution x, and produces one
// witness solution when it does.  A is n x n integral, b rational.
struct CongruenceSolution {
    bool solvable = false;
    RatVec witness;  // one solution when solvable
};
CongruenceSolution solve_affine_congruence(const IntMatrix& a, const RatVec& b);

// Exact LDL^T data of a positive definite symmetric matrix: q(x) =
// sum_i d_i (x_i + sum_{j>i} l_{ij} x_j)^2.  Empty result if not positive
// definite.
struct QuadraticFormLDL {
    RatVec d;
    RatMatrix l;  // strictly upper part used
};
std::optional<QuadraticFormLDL> positive_definite_ldl(const RatMatrix& sym);

}  // namespace k3g2
