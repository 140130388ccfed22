#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "k3g2/root_system.hpp"
#include "test_helpers.hpp"

using namespace k3g2;
using test_helpers::arm_swap_involution;
using test_helpers::full_root_system;
using test_helpers::make_diagram_lattice;

namespace {

// Degree multiset of a diagram from the test-side edge list.
std::multiset<int> reference_degrees(const std::string& label) {
    int n = std::stoi(label.substr(1));
    std::vector<int> deg(static_cast<size_t>(n), 0);
    for (auto [i, j] : test_helpers::diagram_edges(label)) {
        ++deg[static_cast<size_t>(i)];
        ++deg[static_cast<size_t>(j)];
    }
    return std::multiset<int>(deg.begin(), deg.end());
}

std::multiset<int> adjacency_degrees(const std::vector<std::vector<int>>& adj) {
    std::multiset<int> out;
    for (const auto& nbrs : adj) out.insert(static_cast<int>(nbrs.size()));
    return out;
}

// Coordinates of d in the extracted simple basis, solved exactly.
RatVec simple_coordinates(const RootSubsystem& sys, const IntVec& d) {
    int n = sys.lattice->rank();
    int r = static_cast<int>(sys.simple_roots.size());
    REQUIRE(r == n);
    RatMatrix s(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i)
            s.at(i, j) = Rational(sys.simple_roots[static_cast<size_t>(j)].coords[static_cast<size_t>(i)]);
    auto sinv = inverse(s);
    REQUIRE(sinv.has_value());
    RatVec rd(d.begin(), d.end());
    return mat_apply(*sinv, rd);
}

int permutation_sign(const std::vector<int>& p) {
    int sign = 1;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) sign = -sign;
    return sign;
}

}  // namespace

TEST_CASE("full root systems of the small diagrams are classified with the right sizes") {
    for (const std::string label : {"A1", "A2", "A3", "A4", "D4", "D5", "E6"}) {
        CAPTURE(label);
        auto l = make_diagram_lattice(label);
        RootSubsystem sys = full_root_system(l);
        CHECK(static_cast<int>(sys.roots.size()) == test_helpers::expected_root_count(label));
        REQUIRE(sys.components.size() == 1);
        CHECK(sys.components[0].label == label);
        CHECK(sys.components[0].node_count == l->rank());
        CHECK(static_cast<int>(sys.simple_roots.size()) == l->rank());
        // The diagram shape matches the reference adjacency.
        auto adj = component_adjacency(sys, sys.components[0]);
        CHECK(adjacency_degrees(adj) == reference_degrees(label));
        // Component roots regenerate the whole system.
        CHECK(component_roots(sys, sys.components[0]).size() == sys.roots.size());
    }
}

TEST_CASE("every root is a uniformly signed integral combination of the simples") {
    for (const std::string label : {"A3", "D4", "E6"}) {
        CAPTURE(label);
        auto l = make_diagram_lattice(label);
        RootSubsystem sys = full_root_system(l);
        int positives = 0;
        for (const auto& d : sys.roots) {
            RatVec c = simple_coordinates(sys, d.coords);
            bool nonneg = true, nonpos = true;
            for (const Rational& x : c) {
                CHECK(is_integral(x));
                if (x < 0) nonneg = false;
                if (x > 0) nonpos = false;
            }
            CHECK((nonneg || nonpos));
            if (nonneg) ++positives;
        }
        // Exactly half of the roots are positive.
        CHECK(positives * 2 == static_cast<int>(sys.roots.size()));
    }
}

TEST_CASE("a split gram matrix yields several components and the gauge summary") {
    // Disjoint A1 + A2 inside one rank 3 lattice.
    IntMatrix g(3, 3);
    g.at(0, 0) = -2;
    g.at(1, 1) = -2;
    g.at(2, 2) = -2;
    g.at(1, 2) = 1;
    g.at(2, 1) = 1;
    auto l = make_lattice(g, "split");
    RootSubsystem sys = full_root_system(l);
    CHECK(sys.roots.size() == 8);
    REQUIRE(sys.components.size() == 2);
    std::multiset<std::string> labels = {sys.components[0].label, sys.components[1].label};
    CHECK(labels == std::multiset<std::string>{"A1", "A2"});

    GaugeGroupReport rep = gauge_group(sys.components);
    CHECK(rep.total_rank == 3);
    CHECK(rep.abelian_rank == 13);
    std::multiset<std::string> factors(rep.factors.begin(), rep.factors.end());
    CHECK(factors == std::multiset<std::string>{"A1", "A2"});
    CHECK(rep.str().find("U(1)^13") == 0);

    CHECK(gauge_group({}).str() == "U(1)^16");
}

TEST_CASE("roots that are not closed under reflection are rejected") {
    auto l = make_diagram_lattice("A2");
    IntVec e1 = {Integer(1), Integer(0)};
    CHECK_THROWS(analyze_root_set(l, {lattice_vector(l, e1)}));
}

TEST_CASE("path reversal is the only nontrivial symmetry the flip helper returns") {
    for (const std::string label : {"A1", "A2", "A4", "A5"}) {
        CAPTURE(label);
        auto l = make_diagram_lattice(label);
        RootSubsystem sys = full_root_system(l);
        const auto& comp = sys.components[0];
        auto flip = a_type_flip(sys, comp);
        int n = comp.node_count;
        REQUIRE(static_cast<int>(flip.size()) == n);
        // Involution.
        for (int i = 0; i < n; ++i) CHECK(flip[static_cast<size_t>(flip[static_cast<size_t>(i)])] == i);
        // Adjacency preserving.
        auto adj = component_adjacency(sys, comp);
        for (int i = 0; i < n; ++i) {
            std::set<int> mapped;
            for (int x : adj[static_cast<size_t>(i)]) mapped.insert(flip[static_cast<size_t>(x)]);
            std::set<int> target(adj[static_cast<size_t>(flip[static_cast<size_t>(i)])].begin(),
                                 adj[static_cast<size_t>(flip[static_cast<size_t>(i)])].end());
            CHECK(mapped == target);
        }
        bool identity = true;
        for (int i = 0; i < n; ++i)
            if (flip[static_cast<size_t>(i)] != i) identity = false;
        CHECK(identity == (n == 1));
    }
    // Branched diagrams are not paths.
    auto l = make_diagram_lattice("D4");
    RootSubsystem sys = full_root_system(l);
    CHECK_THROWS(a_type_flip(sys, sys.components[0]));
}

TEST_CASE("diagram folds produce the classical non simply laced labels") {
    struct Row {
        std::string label;
        std::string folded;
    };
    for (const Row& row : {Row{"A2", "BC1"}, Row{"A3", "C2"}, Row{"A4", "BC2"}, Row{"A5", "C3"}}) {
        CAPTURE(row.label);
        auto l = make_diagram_lattice(row.label);
        RootSubsystem sys = full_root_system(l);
        const auto& comp = sys.components[0];
        CHECK(fold_by_automorphism(sys, comp, a_type_flip(sys, comp)) == row.folded);
    }
    for (const Row& row : {Row{"D4", "B3"}, Row{"D5", "B4"}, Row{"E6", "F4"}}) {
        CAPTURE(row.label);
        auto l = make_diagram_lattice(row.label);
        RootSubsystem sys = full_root_system(l);
        const auto& comp = sys.components[0];
        auto sigma = arm_swap_involution(component_adjacency(sys, comp));
        CHECK(fold_by_automorphism(sys, comp, sigma) == row.folded);
    }
    // Folding by the identity reproduces the unfolded label.
    for (const std::string label : {"A2", "D4"}) {
        auto l = make_diagram_lattice(label);
        RootSubsystem sys = full_root_system(l);
        std::vector<int> id(static_cast<size_t>(l->rank()));
        for (int i = 0; i < l->rank(); ++i) id[static_cast<size_t>(i)] = i;
        CHECK(fold_by_automorphism(sys, sys.components[0], id) == label);
    }
}

TEST_CASE("negation decomposes with the classical longest element symmetry") {
    // -identity lies in the reflection group exactly when the diagram has no
    // nontrivial symmetry carrying the dominant chamber; the residual
    // permutation is forced accordingly.
    struct Row {
        std::string label;
        bool trivial;
    };
    for (const Row& row : {Row{"A1", true}, Row{"A2", false}, Row{"A4", false}, Row{"D4", true},
                           Row{"D5", false}, Row{"E6", false}}) {
        CAPTURE(row.label);
        auto l = make_diagram_lattice(row.label);
        RootSubsystem sys = full_root_system(l);
        const auto& comp = sys.components[0];
        IntMatrix neg = negate(IntMatrix::identity(l->rank()));
        WeylDecomposition dec = weyl_decompose(sys, comp, neg);
        CHECK(dec.trivial == row.trivial);
        if (row.label[0] == 'A' && !row.trivial) {
            CHECK(dec.sigma == a_type_flip(sys, comp));
        }
        if ((row.label == "D5" || row.label == "E6") && !row.trivial) {
            CHECK(dec.sigma == arm_swap_involution(component_adjacency(sys, comp)));
        }
        // Parity bookkeeping: det(iso) = (-1)^|word| * sign(sigma).
        Integer d = det(neg);
        int expect_sign = permutation_sign(dec.sigma);
        int word_sign = (dec.word.size() % 2 == 0) ? 1 : -1;
        CHECK(d == Integer(word_sign * expect_sign));
    }
}

TEST_CASE("weyl decomposition of a plain reflection has a trivial residue") {
    auto l = make_diagram_lattice("A3");
    RootSubsystem sys = full_root_system(l);
    const auto& comp = sys.components[0];
    IntMatrix r = test_helpers::reflection_matrix(l, sys.simple_roots[0].coords);
    WeylDecomposition dec = weyl_decompose(sys, comp, r);
    CHECK(dec.trivial);
    CHECK(dec.word.size() % 2 == 1);
    // A map that rescales cannot preserve the root set.
    IntMatrix twice = IntMatrix::diagonal({Integer(2), Integer(2), Integer(2)});
    CHECK_THROWS(weyl_decompose(sys, comp, twice));
}
