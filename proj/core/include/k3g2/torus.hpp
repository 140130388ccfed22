#pragma once

#include <string>
#include <vector>

#include "k3g2/matrix.hpp"

namespace k3g2 {

// Affine isometry of the cubic 3-torus: t -> A t + v with A a signed
// permutation matrix and v reduced to [0,1)^3 componentwise.
struct AffineTorusIsometry {
    IntMatrix a;  // 3x3 signed permutation
    RatVec v;     // translation part, entries in [0,1)

    bool is_identity() const;
    std::string str() const;
};

AffineTorusIsometry make_affine(IntMatrix a, RatVec v);
AffineTorusIsometry compose(const AffineTorusIsometry& x, const AffineTorusIsometry& y);
AffineTorusIsometry inverse(const AffineTorusIsometry& x);
bool operator==(const AffineTorusIsometry& x, const AffineTorusIsometry& y);
int affine_order(const AffineTorusIsometry& x, int bound = 100);

// Closure under composition; elements[0] is the identity, words[i] spells
// elements[i] in generator indices (left factor first).
struct AffineGroupClosure {
    std::vector<AffineTorusIsometry> elements;
    std::vector<std::vector<int>> words;
};
AffineGroupClosure close_affine_group(const std::vector<AffineTorusIsometry>& gens,
                                      std::size_t size_bound = 64);
int find_element(const AffineGroupClosure& closure, const AffineTorusIsometry& x);

// A non-identity element with a fixed point on the torus makes the action
// non-free; the first offender and one of its fixed points are reported.
struct FreenessResult {
    bool free = true;
    int witness_index = -1;
    RatVec fixed_point;
};
FreenessResult is_free_action(const std::vector<AffineTorusIsometry>& elements);

// Named generators of the two standard free actions:
//   "beta"       (diag(-1,-1,1), (1/2, 0, 1/2))
//   "gamma"      (diag(-1,1,-1), (0, 1/2, 0))
//   "beta_prime" (diag(-1,-1,1), (0, 3/4, 1/2))
//   "eta"        (diag(1,-1,-1), (1/4, 1/4, 0))
AffineTorusIsometry torus_generator(const std::string& name);

// Generators of the group acting on the torus factor for the two action
// families: family 1 = <beta, gamma> (Z/2 x Z/2), family 2 =
// <beta_prime, eta> (order 8, eta of order 4).
std::vector<AffineTorusIsometry> family_torus_generators(int family);

// Pull-back representations on the cohomology of the torus, as matrices
// acting on coefficient columns:
//   one-forms:  basis dx1, dx2, dx3
//   two-forms:  basis dx1^dx2, dx1^dx3, dx2^dx3
//   volume:     dx1^dx2^dx3 (1x1)
RatMatrix representation_on_one_forms(const AffineTorusIsometry& g);
RatMatrix representation_on_two_forms(const AffineTorusIsometry& g);
RatMatrix representation_on_volume(const AffineTorusIsometry& g);

// Dimension of the common fixed subspace of a list of square matrices,
// computed two ways (rank of the averaging projector, kernel of the stacked
// difference matrices); throws on disagreement.
int invariant_dimension(const std::vector<RatMatrix>& reps);

}  // namespace k3g2
