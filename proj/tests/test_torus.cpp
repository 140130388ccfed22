#include <doctest.h>

#include <algorithm>
#include <vector>

#include "k3g2/torus.hpp"

using namespace k3g2;

namespace {

RatVec grid_apply(const AffineTorusIsometry& g, const RatVec& p) {
    RatVec q = mat_apply(g.a, p);
    for (int i = 0; i < 3; ++i) {
        q[static_cast<size_t>(i)] += g.v[static_cast<size_t>(i)];
        q[static_cast<size_t>(i)] -= Rational(floor_q(q[static_cast<size_t>(i)]));
    }
    return q;
}

// Independent freeness decision by scanning the eighth-integer grid, which
// contains a representative of every fixed point of maps whose linear parts
// are signed permutations and whose translations have denominators dividing
// four: a fixed point solves (A - I) x = -v (mod 1), so its coordinates lie
// in (1/den) Z with den dividing det(A - I) restricted appropriately; all
// maps tested here stay within denominator eight.
bool grid_free(const std::vector<AffineTorusIsometry>& elements) {
    for (const auto& g : elements) {
        if (g.is_identity()) continue;
        for (int a = 0; a < 8; ++a)
            for (int b = 0; b < 8; ++b)
                for (int c = 0; c < 8; ++c) {
                    RatVec p = {Rational(a, 8), Rational(b, 8), Rational(c, 8)};
                    for (auto& q : p) q.canonicalize();
                    if (grid_apply(g, p) == p) return false;
                }
    }
    return true;
}

AffineTorusIsometry diag_map(int s1, int s2, int s3, RatVec v) {
    IntMatrix a(3, 3);
    a.at(0, 0) = s1;
    a.at(1, 1) = s2;
    a.at(2, 2) = s3;
    return make_affine(a, std::move(v));
}

}  // namespace

TEST_CASE("named generators have the advertised squares and orders") {
    AffineTorusIsometry beta = torus_generator("beta");
    AffineTorusIsometry gamma = torus_generator("gamma");
    AffineTorusIsometry beta_prime = torus_generator("beta_prime");
    AffineTorusIsometry eta = torus_generator("eta");
    CHECK(affine_order(beta) == 2);
    CHECK(affine_order(gamma) == 2);
    CHECK(affine_order(beta_prime) == 2);
    CHECK(affine_order(eta) == 4);
    // The fourth generator squares to the half shift along the first
    // coordinate, so it has order four and acts without fixed points.
    AffineTorusIsometry eta2 = compose(eta, eta);
    CHECK(eta2.a.is_identity());
    CHECK(eta2.v == RatVec{Rational(1, 2), Rational(0), Rational(0)});
    CHECK_THROWS(torus_generator("delta"));
}

TEST_CASE("the first family closes to the abelian four group") {
    AffineGroupClosure cl = close_affine_group(family_torus_generators(1));
    CHECK(cl.elements.size() == 4);
    std::vector<int> orders;
    for (const auto& g : cl.elements) orders.push_back(affine_order(g));
    std::sort(orders.begin(), orders.end());
    CHECK(orders == std::vector<int>{1, 2, 2, 2});
    for (const auto& x : cl.elements)
        for (const auto& y : cl.elements) CHECK(compose(x, y) == compose(y, x));
}

TEST_CASE("the second family closes to the nonabelian group of order eight with a four cycle") {
    AffineGroupClosure cl = close_affine_group(family_torus_generators(2));
    CHECK(cl.elements.size() == 8);
    std::vector<int> orders;
    for (const auto& g : cl.elements) orders.push_back(affine_order(g));
    std::sort(orders.begin(), orders.end());
    // One involution outside the order-four rotation subgroup rules out the
    // quaternion shape; the orders are those of the dihedral group.
    CHECK(orders == std::vector<int>{1, 2, 2, 2, 2, 2, 4, 4});
    bool abelian = true;
    for (const auto& x : cl.elements)
        for (const auto& y : cl.elements)
            if (!(compose(x, y) == compose(y, x))) abelian = false;
    CHECK(!abelian);
    // Words spell their elements, left factor first.
    auto gens = family_torus_generators(2);
    for (size_t i = 0; i < cl.elements.size(); ++i) {
        AffineTorusIsometry prod = make_affine(IntMatrix::identity(3), RatVec(3, Rational(0)));
        for (int gi : cl.words[i]) prod = compose(prod, gens[static_cast<size_t>(gi)]);
        CHECK(prod == cl.elements[i]);
    }
}

TEST_CASE("both family actions are free, by the solver and by grid scan") {
    for (int family : {1, 2}) {
        CAPTURE(family);
        AffineGroupClosure cl = close_affine_group(family_torus_generators(family));
        FreenessResult fr = is_free_action(cl.elements);
        CHECK(fr.free);
        CHECK(grid_free(cl.elements));
    }
}

TEST_CASE("a rotation with a fixed axis is reported non free with a genuine witness") {
    AffineTorusIsometry rot = diag_map(-1, -1, 1, RatVec(3, Rational(0)));
    AffineGroupClosure cl = close_affine_group({rot});
    FreenessResult fr = is_free_action(cl.elements);
    REQUIRE(!fr.free);
    REQUIRE(fr.witness_index >= 0);
    REQUIRE(fr.witness_index < static_cast<int>(cl.elements.size()));
    const AffineTorusIsometry& g = cl.elements[static_cast<size_t>(fr.witness_index)];
    CHECK(!g.is_identity());
    CHECK(grid_apply(g, fr.fixed_point) == fr.fixed_point);

    // Shifting the rotation off its axis does not make it free: the square
    // is the identity and the half-turn still fixes points.
    AffineTorusIsometry shifted = diag_map(-1, -1, 1, {Rational(1, 2), Rational(0), Rational(0)});
    AffineGroupClosure cl2 = close_affine_group({shifted});
    CHECK(!is_free_action(cl2.elements).free);
}

TEST_CASE("composition, inverse and normalization") {
    AffineTorusIsometry x = diag_map(-1, 1, -1, {Rational(1, 4), Rational(2, 3), Rational(0)});
    CHECK(compose(x, inverse(x)).is_identity());
    CHECK(compose(inverse(x), x).is_identity());
    // Translations are reduced into [0, 1).
    AffineTorusIsometry y =
        make_affine(IntMatrix::identity(3), {Rational(5, 4), Rational(-1, 3), Rational(2)});
    CHECK(y.v == RatVec{Rational(1, 4), Rational(2, 3), Rational(0)});
    // An order beyond the bound is refused rather than looped forever.
    AffineTorusIsometry tiny =
        make_affine(IntMatrix::identity(3), {Rational(1, 64), Rational(0), Rational(0)});
    CHECK(affine_order(tiny) == 64);
    CHECK_THROWS(affine_order(tiny, 10));
}

TEST_CASE("cohomology representations are functorial and have the expected fixed spaces") {
    for (int family : {1, 2}) {
        CAPTURE(family);
        AffineGroupClosure cl = close_affine_group(family_torus_generators(family));
        std::vector<RatMatrix> one, two, vol;
        for (const auto& g : cl.elements) {
            one.push_back(representation_on_one_forms(g));
            two.push_back(representation_on_two_forms(g));
            vol.push_back(representation_on_volume(g));
        }
        // No invariant one forms or two forms; the volume form survives
        // because every linear part is orientation preserving.
        CHECK(invariant_dimension(one) == 0);
        CHECK(invariant_dimension(two) == 0);
        CHECK(invariant_dimension(vol) == 1);
        for (const auto& g : cl.elements) CHECK(det(RatMatrix::from_int(g.a)) == 1);
    }
    // Contravariant functoriality on a noncommuting pair.
    auto gens = family_torus_generators(2);
    const AffineTorusIsometry& p = gens[0];
    const AffineTorusIsometry& q = gens[1];
    for (auto rep : {representation_on_one_forms, representation_on_two_forms}) {
        CHECK(rep(compose(p, q)) == mul(rep(q), rep(p)));
    }
    // The volume representation is the determinant character.
    AffineTorusIsometry flip = diag_map(1, 1, -1, RatVec(3, Rational(0)));
    RatMatrix v = representation_on_volume(flip);
    REQUIRE(v.rows == 1);
    CHECK(v.at(0, 0) == Rational(-1));
}
