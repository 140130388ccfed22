#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "k3g2/matrix.hpp"
#include "k3g2/su2.hpp"

namespace k3g2 {

// Exterior form with exact rational coefficients over a fixed-dimension
// real vector space.  Terms are kept on sorted index tuples (0-based);
// adding a term with unsorted or repeated indices normalizes the sign or
// drops it.
class ExteriorForm {
  public:
    ExteriorForm(int dim, int degree);
    static ExteriorForm monomial(int dim, const std::vector<int>& indices,
                                 const Rational& c = Rational(1));

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Rational>& terms() const { return terms_; }

    void add_term(std::vector<int> indices, Rational c);
    // Coefficient on a sorted index tuple.
    Rational coefficient(const std::vector<int>& indices) const;

    ExteriorForm operator+(const ExteriorForm& o) const;
    ExteriorForm operator-(const ExteriorForm& o) const;
    ExteriorForm operator-() const;
    ExteriorForm scaled(const Rational& c) const;
    bool operator==(const ExteriorForm& o) const;

    std::string str() const;  // e1^e2^e3 style, 1-based names

  private:
    int dim_;
    int degree_;
    std::map<std::vector<int>, Rational> terms_;
};

ExteriorForm wedge(const ExteriorForm& x, const ExteriorForm& y);
// Interior product with the i-th coordinate vector.
ExteriorForm contract(int i, const ExteriorForm& w);
// Pull-back along the linear map with f*(e^i) = sum_j f(i,j) e^j.
ExteriorForm pullback(const RatMatrix& f, const ExteriorForm& w);
// Hodge star for the standard euclidean metric and orientation e^1..e^n.
ExteriorForm hodge_star(const ExteriorForm& w);

// The standard 3-form defining the flat G2-structure on R^7:
// e123 + e145 + e167 + e246 - e257 - e347 - e356 (1-based names).
ExteriorForm standard_g2_form();

// The same form written as sum_i omega^i ^ e^i + e^123 with omega^i the
// self-dual basis on directions 4..7.
ExteriorForm split_g2_form();

// The self-dual 2-form basis on four directions starting at `offset`
// (0-based) inside a dim-dimensional space:
//   omega^1 = e45 + e67,  omega^2 = e46 - e57,  omega^3 = -(e47 + e56).
std::array<ExteriorForm, 3> self_dual_basis(int dim, int offset);

// Metric induced by a 3-form on R^7, normalized so the standard form gives
// the identity: B_ij = (1/6) * [coefficient of e^1..7 in
// (e_i . phi) ^ (e_j . phi) ^ phi].  The normalization is cubic in phi.
RatMatrix induced_metric(const ExteriorForm& phi);

// Real 4x4 matrix of a 2x2 cyclotomic (anti)unitary map under
// (x1,x2,x3,x4) -> (z1, z2) = (x1 + i x2, x3 + i x4); requires every entry
// to have rational real and imaginary parts.
RatMatrix real_form(const AntiUnitaryMap& x);

// Expansion of the pull-back action of an orthogonal 4x4 matrix on the
// self-dual basis: result rows satisfy pullback(f, omega^i) =
// sum_j R(i,j) omega^j.  Errors if f is not orthogonal or the image leaves
// the self-dual span (an orientation-reversing map does).
RatMatrix action_on_self_dual(const RatMatrix& f);

// Signed 3x3 permutation P with P * lhs_k * P^-1 = rhs_k for all k, if one
// exists among the 48 signed permutations.
std::vector<IntMatrix> all_signed_permutations_3();
bool find_basis_alignment(const std::vector<RatMatrix>& lhs, const std::vector<RatMatrix>& rhs,
                          IntMatrix& out);

}  // namespace k3g2
