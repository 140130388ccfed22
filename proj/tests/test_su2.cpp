#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "k3g2/su2.hpp"

using namespace k3g2;

namespace {

AntiUnitaryMap minus_identity(int conductor) {
    Cyclotomic m = Cyclotomic::from_rational(conductor, Rational(-1));
    Cyclotomic z = Cyclotomic::zero(conductor);
    return AntiUnitaryMap::linear(m, z, z, m);
}

void check_special_unitary_group(const std::vector<AntiUnitaryMap>& gens, long expected_order) {
    GroupClosure cl = close_group(gens, 200);
    CHECK(static_cast<long>(cl.elements.size()) == expected_order);
    CHECK(cl.elements[0].is_identity());
    for (const auto& g : cl.elements) {
        CHECK(g.conj == 0);
        CHECK(is_unitary(g));
        CHECK(determinant(g) == Cyclotomic::one(g.conductor()));
        // Orders divide the group order.
        CHECK(expected_order % map_order(g) == 0);
    }
    // Words spell their elements, left factor first.
    for (size_t i = 0; i < cl.elements.size(); ++i) {
        AntiUnitaryMap prod = AntiUnitaryMap::identity();
        for (int gi : cl.words[i]) prod = compose(prod, gens[static_cast<size_t>(gi)]);
        CHECK(equal_maps(prod, cl.elements[i]));
    }
}

}  // namespace

TEST_CASE("cyclic fiber groups close at the requested order") {
    for (int n = 1; n <= 8; ++n) {
        CAPTURE(n);
        check_special_unitary_group(cyclic_generators(n), n);
    }
}

TEST_CASE("binary dihedral fiber groups close at four times the parameter") {
    for (int m = 2; m <= 6; ++m) {
        CAPTURE(m);
        check_special_unitary_group(binary_dihedral_generators(m), 4L * m);
    }
}

TEST_CASE("exceptional fiber groups close at their classical orders") {
    check_special_unitary_group(binary_tetrahedral_generators(), 24);
    check_special_unitary_group(binary_octahedral_generators(), 48);
}

TEST_CASE("label lookup matches the family constructors") {
    // A_k labels the cyclic group of order k + 1, D_{m+2} the binary
    // dihedral group of order 4m, and the exceptional labels the three
    // binary polyhedral groups.
    for (int k = 1; k <= 7; ++k) {
        std::string label = "A" + std::to_string(k);
        CAPTURE(label);
        CHECK(finite_subgroup_order(label) == k + 1);
        GroupClosure cl = close_group(finite_subgroup_generators(label), 200);
        CHECK(static_cast<long>(cl.elements.size()) == k + 1);
    }
    for (int d = 4; d <= 8; ++d) {
        std::string label = "D" + std::to_string(d);
        CAPTURE(label);
        CHECK(finite_subgroup_order(label) == 4L * (d - 2));
    }
    CHECK(finite_subgroup_order("E6") == 24);
    CHECK(finite_subgroup_order("E7") == 48);
    CHECK(finite_subgroup_order("E8") == 120);
    CHECK_THROWS(finite_subgroup_generators("B3"));
}

TEST_CASE("the three reversing extensions act on a cyclic generator as expected") {
    for (int n = 2; n <= 8; ++n) {
        CAPTURE(n);
        AntiUnitaryMap alpha = cyclic_generators(n)[0];
        // diag(-1, 1) commutes with diagonal matrices.
        CHECK(conjugation_exponent(tau_map(1), alpha, n) == 1 % n);
        // -Id with conjugation inverts the rotation.
        CHECK(conjugation_exponent(tau_map(2), alpha, n) == n - 1);
        // The off-diagonal antilinear map swaps the two weights twice over.
        CHECK(conjugation_exponent(tau_map(3), alpha, n) == 1 % n);
    }
    // Orders of the extension candidates themselves.
    CHECK(map_order(tau_map(1)) == 2);
    CHECK(map_order(tau_map(2)) == 2);
    CHECK(map_order(tau_map(3)) == 4);
    // The square of the swap candidate is the central element, not the
    // identity: the extension it generates is a binary group.
    CHECK(equal_maps(power(tau_map(3), 2), minus_identity(4)));
    // A conjugation that does not normalize the cyclic group is refused.
    // (The first tetrahedral generator is diagonal and does normalize every
    // cyclic group of diagonal matrices, so take the non-diagonal one.)
    AntiUnitaryMap outside = binary_tetrahedral_generators()[1];
    CHECK_THROWS(conjugation_exponent(outside, cyclic_generators(5)[0], 5));
}

TEST_CASE("conjugation permutes every fiber group and preserves element orders") {
    struct Family {
        std::string name;
        std::vector<AntiUnitaryMap> gens;
    };
    const std::vector<Family> families = {
        {"cyclic8", cyclic_generators(8)},
        {"dihedral", binary_dihedral_generators(4)},
        {"tetrahedral", binary_tetrahedral_generators()},
    };
    for (const auto& fam : families) {
        GroupClosure cl = close_group(fam.gens, 200);
        for (int t = 1; t <= 3; ++t) {
            CAPTURE(fam.name);
            CAPTURE(t);
            std::vector<int> perm = conjugation_action(tau_map(t), cl.elements);
            REQUIRE(perm.size() == cl.elements.size());
            std::set<int> image(perm.begin(), perm.end());
            CHECK(image.size() == perm.size());
            CHECK(perm[0] == 0);
            for (size_t i = 0; i < perm.size(); ++i) {
                CHECK(map_order(cl.elements[i]) ==
                      map_order(cl.elements[static_cast<size_t>(perm[static_cast<size_t>(i)])]));
            }
        }
    }
    // An element outside the normalizer is reported with a witness.
    GroupClosure c5 = close_group(cyclic_generators(5), 10);
    CHECK_THROWS(conjugation_action(binary_tetrahedral_generators()[1], c5.elements));
}

TEST_CASE("power and inverse behave as a group") {
    AntiUnitaryMap t3 = tau_map(3);
    CHECK(equal_maps(compose(t3, inverse(t3)), AntiUnitaryMap::identity(t3.conductor())));
    CHECK(equal_maps(power(t3, 5), compose(t3, power(t3, 4))));
    CHECK(equal_maps(power(t3, -1), inverse(t3)));
    AntiUnitaryMap a = cyclic_generators(6)[0];
    CHECK(equal_maps(power(a, 6), AntiUnitaryMap::identity(a.conductor())));
    CHECK(map_order(a) == 6);
    // Embedding into a larger field preserves identity and products.
    AntiUnitaryMap a12 = a.embedded(12);
    CHECK(equal_maps(compose(a12, a12), power(a, 2)));
}

TEST_CASE("exponent to diagram symmetry translation") {
    // Inversion flips a chain of two or more nodes; anything order
    // preserving, or a single node, stays put.
    CHECK(induced_diagram_automorphism(1, 2) == "trivial");
    CHECK(induced_diagram_automorphism(1, 5) == "trivial");
    for (int n = 3; n <= 8; ++n) {
        CAPTURE(n);
        CHECK(induced_diagram_automorphism(n - 1, n) == "flip");
    }
    CHECK(induced_diagram_automorphism(1, 1) == "trivial");
    // Exponents that are not an involution on the chain are rejected.
    CHECK_THROWS(induced_diagram_automorphism(2, 5));
}
