#pragma once

#include <string>
#include <vector>

#include "k3g2/cyclotomic.hpp"

namespace k3g2 {

// A 2x2 matrix over a cyclotomic field together with a conjugation flag:
// the map v -> M * sigma^conj(v), where sigma is complex conjugation.
// conj = 0 gives a linear map, conj = 1 an antilinear one.
struct AntiUnitaryMap {
    Cyclotomic a, b, c, d;  // [[a, b], [c, d]]
    int conj = 0;

    static AntiUnitaryMap identity(int conductor = 1);
    static AntiUnitaryMap linear(Cyclotomic a, Cyclotomic b, Cyclotomic c, Cyclotomic d);

    int conductor() const { return a.conductor(); }
    bool is_identity() const;
    AntiUnitaryMap embedded(int m) const;
    std::string str() const;
};

// Composition (x then applied after y: (x*y)(v) = x(y(v))), with automatic
// embedding into the smallest common cyclotomic field.
AntiUnitaryMap compose(const AntiUnitaryMap& x, const AntiUnitaryMap& y);
AntiUnitaryMap inverse(const AntiUnitaryMap& x);
AntiUnitaryMap power(const AntiUnitaryMap& x, long k);
bool equal_maps(const AntiUnitaryMap& x, const AntiUnitaryMap& y);

Cyclotomic determinant(const AntiUnitaryMap& x);
// M * conj(M)^T == I, i.e. the matrix part lies in U(2).
bool is_unitary(const AntiUnitaryMap& x);

// Multiplicative order, or throws past the bound.
int map_order(const AntiUnitaryMap& x, int bound = 1000);

// Closure of the generators under composition.  elements[0] is the
// identity; words[i] spells elements[i] as generator indices, left factor
// first.  Throws if the closure exceeds size_bound.
struct GroupClosure {
    std::vector<AntiUnitaryMap> elements;
    std::vector<std::vector<int>> words;
};
GroupClosure close_group(const std::vector<AntiUnitaryMap>& gens, std::size_t size_bound);

// Generators of the finite subgroups of SU(2), by ADE family:
//   cyclic:            diag(z_n, z_n^-1)                  order n     (A_{n-1})
//   binary dihedral:   diag(z_2m, z_2m^-1), [[0,1],[-1,0]] order 4m   (D_{m+2})
//   binary tetrahedral                                    order 24    (E6)
//   binary octahedral                                     order 48    (E7)
//   binary icosahedral                                    order 120   (E8)
std::vector<AntiUnitaryMap> cyclic_generators(int n);
std::vector<AntiUnitaryMap> binary_dihedral_generators(int m);
std::vector<AntiUnitaryMap> binary_tetrahedral_generators();
std::vector<AntiUnitaryMap> binary_octahedral_generators();
std::vector<AntiUnitaryMap> binary_icosahedral_generators();

// Generators for the subgroup named by its ADE label ("A3", "D6", "E8").
std::vector<AntiUnitaryMap> finite_subgroup_generators(const std::string& label);

// The expected order of the subgroup named by an ADE label.
long finite_subgroup_order(const std::string& label);

// The three standard order-reversing candidates used to extend a cyclic
// group: tau_map(1) = (diag(-1,1), 0), tau_map(2) = (-Id, 1),
// tau_map(3) = ([[0,-i],[i,0]], 1).
AntiUnitaryMap tau_map(int which);

// Finds e with t * alpha * t^-1 == alpha^e, for alpha of order n; throws if
// conjugation does not normalize <alpha>.
int conjugation_exponent(const AntiUnitaryMap& t, const AntiUnitaryMap& alpha, int n);

// The permutation induced on an element list by g -> t g t^-1; perm[i] is
// the position of the image of elements[i].  Throws (naming the offending
// element) if some image is outside the list.
std::vector<int> conjugation_action(const AntiUnitaryMap& t,
                                    const std::vector<AntiUnitaryMap>& elements);

// The diagram automorphism of A_{n-1} induced by alpha -> alpha^e:
// "flip" when e = -1 mod n and the diagram has at least two nodes,
// "trivial" otherwise.  e must be +-1 mod n.
std::string induced_diagram_automorphism(int exponent, int n);

}  // namespace k3g2
