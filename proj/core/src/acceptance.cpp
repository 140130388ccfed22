#include "k3g2/acceptance.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "k3g2/forms.hpp"
#include "k3g2/pipeline.hpp"
#include "k3g2/rational.hpp"

namespace k3g2 {

namespace {

bool check_passed(const std::vector<CheckResult>& checks, const std::string& name) {
    const CheckResult* c = find_check(checks, name);
    return c != nullptr && c->passed;
}

// Exhaustive scan of the eighth-integer grid for fixed points of one affine
// torus isometry; used as the independent route to freeness.
bool grid_has_fixed_point(const AffineTorusIsometry& g) {
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k) {
                RatVec x{Rational(i) / 8, Rational(j) / 8, Rational(k) / 8};
                RatVec y = mat_apply(g.a, x);
                bool fixed = true;
                for (int c = 0; c < 3; ++c) {
                    Rational w = y[static_cast<size_t>(c)] + g.v[static_cast<size_t>(c)];
                    w -= Rational(floor_q(w));
                    if (w != x[static_cast<size_t>(c)]) fixed = false;
                }
                if (fixed) return true;
            }
    return false;
}

std::vector<LatticeVector> sorted_vectors(std::vector<LatticeVector> v) {
    std::sort(v.begin(), v.end());
    return v;
}

const OrbifoldReport* entry_report(const CatalogResult& cat, const std::string& name) {
    for (const CatalogEntry& e : cat.entries)
        if (e.name == name) return &e.report;
    return nullptr;
}

std::pair<bool, std::string> criterion_block_roots() {
    LatticePtr l = make_k3_lattice();
    std::ostringstream d;
    bool ok = true;
    for (int b = 1; b <= 2; ++b) {
        std::string name = "E8_" + std::to_string(b);
        std::vector<LatticeVector> enumerated = block_roots(l, name);
        std::vector<LatticeVector> seeds;
        const LatticeBlock& blk = l->block(name);
        for (int i = 0; i < blk.size; ++i) {
            IntVec c(static_cast<size_t>(blk.size), Integer(0));
            c[static_cast<size_t>(i)] = Integer(1);
            seeds.push_back(embed_block_vector(l, name, c));
        }
        std::vector<LatticeVector> closed = reflection_closure(l, seeds);
        bool same = sorted_vectors(enumerated) == sorted_vectors(closed);
        ok = ok && enumerated.size() == 240 && same;
        d << name << ": " << enumerated.size() << " enumerated, " << closed.size()
          << " from reflection closure" << (same ? " (equal sets)" : " (DIFFERENT sets)") << "; ";
    }
    return {ok, d.str()};
}

std::pair<bool, std::string> criterion_standard_gauge(const CatalogResult& cat1,
                                                     const CatalogResult& cat2) {
    bool ok = true;
    std::ostringstream d;
    for (const CatalogResult* cat : {&cat1, &cat2}) {
        const OrbifoldReport* rep = entry_report(*cat, "standard");
        if (!rep) return {false, "missing untouched catalog entry"};
        std::vector<std::string> labels;
        for (const DynkinComponent& c : rep->singularities.system.components)
            labels.push_back(c.label);
        std::sort(labels.begin(), labels.end());
        bool here = labels == std::vector<std::string>{"E8", "E8"} &&
                    rep->singularities.gauge.factors == std::vector<std::string>{"E8", "E8"} &&
                    rep->singularities.gauge.abelian_rank == 0 &&
                    rep->singularities.gauge.total_rank == 16;
        ok = ok && here;
        d << "kind " << rep->spec.kind << ": " << rep->singularities.gauge.str() << "; ";
    }
    return {ok, d.str()};
}

std::pair<bool, std::string> criterion_betti(const CatalogResult& cat1, const CatalogResult& cat2) {
    bool ok = true;
    std::ostringstream d;
    int entries = 0;
    for (const CatalogResult* cat : {&cat1, &cat2}) {
        for (const CatalogEntry& e : cat->entries) {
            ++entries;
            const BettiNumbers& b = e.report.betti;
            int rank = e.report.singularities.total_rank;
            if (!(b.b3 == 7 && b.b1n == 0 && b.b2 == 16 - rank)) {
                ok = false;
                d << "entry " << e.name << " (kind " << e.spec.kind << ") has b2 = " << b.b2
                  << ", b3 = " << b.b3 << ", b1N = " << b.b1n << " at rank " << rank << "; ";
            }
        }
    }
    const OrbifoldReport* std1 = entry_report(cat1, "standard");
    int inter = std1 ? std1->betti.h2_first_generator_invariant : -1;
    if (inter != 19) {
        ok = false;
        d << "single-generator degree-two invariant dimension is " << inter << ", expected 19; ";
    }
    if (ok)
        d << entries << " entries with b3 = 7, b1N = 0, b2 = 16 - rank; intermediate invariant "
          << inter;
    return {ok, d.str()};
}

std::pair<bool, std::string> criterion_labels(const CatalogResult& cat1, const CatalogResult& cat2) {
    bool ok = cat1.labels_complete && cat2.labels_complete;
    std::ostringstream d;
    d << "kind 1 realizes " << cat1.realized_labels.size() << " labels, kind 2 realizes "
      << cat2.realized_labels.size() << " labels, expected " << expected_connected_labels().size()
      << " plus the empty configuration";
    if (!cat1.has_empty_entry || !cat2.has_empty_entry) {
        ok = false;
        d << "; missing empty configuration";
    }
    return {ok, d.str()};
}

std::pair<bool, std::string> criterion_cross_check(const CatalogResult& cat1,
                                                   const CatalogResult& cat2) {
    bool ok = true;
    std::ostringstream d;
    int n = 0;
    for (const CatalogResult* cat : {&cat1, &cat2})
        for (const CatalogEntry& e : cat->entries) {
            ++n;
            if (!e.report.singularities.cross_checked ||
                !check_passed(e.report.checks, "singularity_cross_check")) {
                ok = false;
                d << "entry " << e.name << " (kind " << e.spec.kind << ") fails the comparison; ";
            }
        }
    if (ok) d << "both routes agree on all " << n << " catalog entries";
    return {ok, d.str()};
}

std::pair<bool, std::string> criterion_flat_groups() {
    bool ok = true;
    std::ostringstream d;
    for (int kind = 1; kind <= 2; ++kind)
        for (int n = 2; n <= 8; ++n) {
            FlatModelReport r = flat_model_report(kind, n);
            bool here = check_passed(r.checks, "fiber_relations") &&
                        check_passed(r.checks, "fiber_cyclic_order") &&
                        check_passed(r.checks, "torus_group_structure") &&
                        check_passed(r.checks, "torus_action_free");
            if (!here) {
                ok = false;
                d << "kind " << kind << ", n = " << n << " fails a group relation; ";
            }
        }
    for (int kind = 1; kind <= 2; ++kind) {
        AffineGroupClosure base = close_affine_group(family_torus_generators(kind), 64);
        FreenessResult fr = is_free_action(base.elements);
        bool grid_free = true;
        for (const AffineTorusIsometry& g : base.elements)
            if (!g.is_identity() && grid_has_fixed_point(g)) grid_free = false;
        if (!(fr.free && grid_free)) {
            ok = false;
            d << "kind " << kind << ": freeness searches disagree (direct "
              << (fr.free ? "free" : "fixed point") << ", grid "
              << (grid_free ? "free" : "fixed point") << "); ";
        }
    }
    if (ok)
        d << "conjugation relations hold for n = 2..8 in both families; both base actions free by "
             "two independent searches";
    return {ok, d.str()};
}

std::pair<bool, std::string> criterion_forms(const CatalogResult& cat1, const CatalogResult& cat2) {
    std::ostringstream d;
    ExteriorForm phi = standard_g2_form();
    bool metric_ok = induced_metric(phi) == RatMatrix::identity(7);

    std::array<ExteriorForm, 3> w = self_dual_basis(7, 3);
    ExteriorForm expected = ExteriorForm::monomial(7, {3, 4, 5, 6});
    expected = expected + wedge(w[0], ExteriorForm::monomial(7, {1, 2}));
    expected = expected + wedge(w[1], ExteriorForm::monomial(7, {0, 2}, Rational(-1)));
    expected = expected + wedge(w[2], ExteriorForm::monomial(7, {0, 1}));
    bool star_ok = hodge_star(phi) == expected;

    bool split_ok = split_g2_form() == phi;

    bool align_ok = true;
    for (int kind = 1; kind <= 2; ++kind) {
        FlatModelReport r = flat_model_report(kind, 4);
        if (!check_passed(r.checks, "pullback_alignment")) align_ok = false;
    }

    auto span_expected = [](int kind, int gen) {
        std::array<int, 3> s;
        if (kind == 1)
            s = gen == 1 ? std::array<int, 3>{-1, -1, 1} : std::array<int, 3>{-1, 1, -1};
        else
            s = gen == 1 ? std::array<int, 3>{-1, -1, 1} : std::array<int, 3>{1, -1, -1};
        return IntMatrix::diagonal(IntVec{Integer(s[0]), Integer(s[1]), Integer(s[2])});
    };
    bool matrices_ok = true;
    for (const CatalogResult* cat : {&cat1, &cat2}) {
        const OrbifoldReport* rep = entry_report(*cat, "standard");
        if (!rep) return {false, "missing untouched catalog entry"};
        int kind = rep->spec.kind;
        if (!(rep->isometries.span1 == span_expected(kind, 1) &&
              rep->isometries.span2 == span_expected(kind, 2) &&
              check_passed(rep->checks, "pullback_alignment")))
            matrices_ok = false;
    }
    bool ok = metric_ok && star_ok && split_ok && align_ok && matrices_ok;
    d << "metric " << (metric_ok ? "is" : "IS NOT") << " the identity; dual expansion "
      << (star_ok ? "matches" : "DIFFERS") << "; split form "
      << (split_ok ? "equals" : "DIFFERS from") << " the reference form; alignment "
      << ((align_ok && matrices_ok) ? "succeeds with the expected sign matrices"
                                    : "FAILS");
    return {ok, d.str()};
}

std::pair<bool, std::string> criterion_isometries(const CatalogResult& cat1,
                                                  const CatalogResult& cat2) {
    bool ok = true;
    std::ostringstream d;
    int n = 0;
    const char* names[] = {"isometry_gram", "isometry_involutive", "isometries_commute",
                           "isometry_sign_action", "positive_cone"};
    for (const CatalogResult* cat : {&cat1, &cat2})
        for (const CatalogEntry& e : cat->entries) {
            ++n;
            for (const char* name : names)
                if (!check_passed(e.report.checks, name)) {
                    ok = false;
                    d << "entry " << e.name << " (kind " << e.spec.kind << ") fails " << name
                      << "; ";
                }
        }

    // A sign assignment with an odd number of inversions on the positive
    // three-plane preserves the pairing and squares to the identity but must
    // be rejected by the orientation test.
    LatticePtr l = make_k3_lattice();
    PeriodTriple periods = standard_periods();
    IntMatrix bad = sign_block_isometry(l, {-1, 1, 1}, {1, 1});
    const IntMatrix& g = l->gram();
    bool bad_is_isometry =
        mul(transpose(bad), mul(g, bad)) == g && mul(bad, bad).is_identity();
    std::optional<std::array<int, 3>> s = period_signs(bad, periods);
    bool bad_rejected = s.has_value() && ((*s)[0] * (*s)[1] * (*s)[2] == -1);
    if (!(bad_is_isometry && bad_rejected)) {
        ok = false;
        d << "odd-sign control map was not rejected by the orientation test; ";
    }
    if (ok)
        d << "all five properties hold on " << n
          << " entries; the odd-sign control map is an involutive pairing-preserving map that the "
             "orientation test rejects";
    return {ok, d.str()};
}

std::pair<bool, std::string> criterion_monodromy(const CatalogResult& cat1,
                                                 const CatalogResult& cat2) {
    bool ok = true;
    std::ostringstream d;
    for (const CatalogResult* cat : {&cat1, &cat2}) {
        const OrbifoldReport* rep = entry_report(*cat, "standard");
        if (!rep) return {false, "missing untouched catalog entry"};
        for (const ComponentMonodromy& m : rep->monodromy)
            if (!m.trivial) {
                ok = false;
                d << "kind " << rep->spec.kind << " untouched entry has nontrivial monodromy on "
                  << m.label << "; ";
            }
    }

    // Inversion acts through the inner Weyl group on the full definite
    // diagram but through the order-reversing automorphism on a short chain.
    {
        LatticePtr e8 = make_minus_e8();
        std::vector<LatticeVector> seeds;
        for (int i = 0; i < 8; ++i) {
            IntVec c(8, Integer(0));
            c[static_cast<size_t>(i)] = Integer(1);
            seeds.push_back(lattice_vector(e8, c));
        }
        RootSubsystem sys = analyze_root_set(e8, reflection_closure(e8, seeds));
        WeylDecomposition wd = weyl_decompose(sys, sys.components.at(0), negate(IntMatrix::identity(8)));
        if (!wd.trivial) {
            ok = false;
            d << "inversion on the rank-eight diagram is not inner; ";
        }
    }
    {
        IntMatrix gram(2, 2);
        gram.at(0, 0) = Integer(-2);
        gram.at(1, 1) = Integer(-2);
        gram.at(0, 1) = Integer(1);
        gram.at(1, 0) = Integer(1);
        LatticePtr a2 = make_lattice(gram, "A");
        std::vector<LatticeVector> seeds;
        for (int i = 0; i < 2; ++i) {
            IntVec c(2, Integer(0));
            c[static_cast<size_t>(i)] = Integer(1);
            seeds.push_back(lattice_vector(a2, c));
        }
        RootSubsystem sys = analyze_root_set(a2, reflection_closure(a2, seeds));
        WeylDecomposition wd = weyl_decompose(sys, sys.components.at(0), negate(IntMatrix::identity(2)));
        if (wd.trivial) {
            ok = false;
            d << "inversion on the two-node chain should act by the flip; ";
        }
    }

    std::string n2_value;
    for (int n = 2; n <= 8; ++n) {
        FlatModelReport r = flat_model_report(1, n);
        if (n == 2) {
            n2_value = r.automorphism;  // boundary case: reported, not asserted
            continue;
        }
        std::string expect_fold =
            (n % 2 == 0) ? "C" + std::to_string(n / 2) : "BC" + std::to_string((n - 1) / 2);
        if (!(r.automorphism == "flip" && r.folded_label == expect_fold)) {
            ok = false;
            d << "first-family flat model n = " << n << " reports " << r.automorphism << " -> "
              << r.folded_label << ", expected flip -> " << expect_fold << "; ";
        }
    }
    if (ok)
        d << "untouched entries have trivial monodromy; inversion oracles agree; first-family "
             "flips fold correctly for n = 3..8 (n = 2 reports \""
          << n2_value << "\", noted without assertion)";
    return {ok, d.str()};
}

std::pair<bool, std::string> criterion_fiber_orders() {
    bool ok = true;
    std::ostringstream d;
    std::vector<std::string> labels;
    for (int n = 2; n <= 9; ++n) labels.push_back("A" + std::to_string(n - 1));  // orders 1..8
    for (int n = 4; n <= 8; ++n) labels.push_back("D" + std::to_string(n));
    labels.push_back("E6");
    labels.push_back("E7");
    labels.push_back("E8");
    for (const std::string& label : labels) {
        long expected = finite_subgroup_order(label);
        GroupClosure closure =
            close_group(finite_subgroup_generators(label), static_cast<std::size_t>(expected) + 8);
        bool unitary = true;
        for (const AntiUnitaryMap& m : closure.elements) {
            Cyclotomic det = determinant(m);
            if (!is_unitary(m) || m.conj != 0 || !(det == Cyclotomic::one(det.conductor())))
                unitary = false;
        }
        if (static_cast<long>(closure.elements.size()) != expected || !unitary) {
            ok = false;
            d << label << ": closure order " << closure.elements.size() << " vs expected "
              << expected << (unitary ? "" : ", with a non-special element") << "; ";
        }
    }
    if (ok) d << labels.size() << " families close at their expected orders with special unitary elements";
    return {ok, d.str()};
}

}  // namespace

AcceptanceSummary run_acceptance() {
    AcceptanceSummary summary;

    std::optional<CatalogResult> cat1, cat2;
    std::string catalog_error;
    try {
        cat1 = run_catalog(1);
        cat2 = run_catalog(2);
    } catch (const std::exception& e) {
        catalog_error = e.what();
    }

    auto add = [&summary](int index, const std::string& title,
                          const std::function<std::pair<bool, std::string>()>& body) {
        CriterionResult r;
        r.index = index;
        r.title = title;
        try {
            auto [ok, detail] = body();
            r.passed = ok;
            r.detail = detail;
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        summary.criteria.push_back(std::move(r));
    };
    auto need_catalogs = [&](const std::function<std::pair<bool, std::string>(
                                 const CatalogResult&, const CatalogResult&)>& body) {
        return [&, body]() -> std::pair<bool, std::string> {
            if (!cat1 || !cat2) return {false, "catalog construction failed: " + catalog_error};
            return body(*cat1, *cat2);
        };
    };

    add(1, "definite-block root count and reflection closure", criterion_block_roots);
    add(2, "untouched configuration gauge group", need_catalogs(criterion_standard_gauge));
    add(3, "betti numbers across the catalog", need_catalogs(criterion_betti));
    add(4, "realized singularity labels", need_catalogs(criterion_labels));
    add(5, "singularity set double computation", need_catalogs(criterion_cross_check));
    add(6, "flat fiber relations, base groups and freeness", criterion_flat_groups);
    add(7, "metric, duality and alignment of the reference forms", need_catalogs(criterion_forms));
    add(8, "isometry pair properties and orientation test", need_catalogs(criterion_isometries));
    add(9, "monodromy of untouched configurations and inversion actions",
        need_catalogs(criterion_monodromy));
    add(10, "finite fiber group orders", criterion_fiber_orders);

    summary.all_passed = true;
    for (const CriterionResult& c : summary.criteria)
        if (!c.passed) summary.all_passed = false;
    return summary;
}

std::string acceptance_lines(const AcceptanceSummary& summary) {
    std::ostringstream os;
    for (const CriterionResult& c : summary.criteria)
        os << (c.passed ? "[PASS]" : "[FAIL]") << " criterion " << c.index << ": " << c.title
           << " - " << c.detail << "\n";
    os << (summary.all_passed ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << "\n";
    return os.str();
}

}  // namespace k3g2
