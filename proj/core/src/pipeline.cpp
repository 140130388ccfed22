#include "k3g2/pipeline.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "k3g2/forms.hpp"
#include "k3g2/rational.hpp"

namespace k3g2 {

namespace {

const LatticePtr& big_lattice() {
    static const LatticePtr l = make_k3_lattice();
    return l;
}

std::array<int, 3> h_sign_table(int kind, int gen) {
    if (kind == 1) return gen == 1 ? std::array<int, 3>{-1, -1, 1} : std::array<int, 3>{-1, 1, -1};
    if (kind == 2) return gen == 1 ? std::array<int, 3>{-1, -1, 1} : std::array<int, 3>{1, -1, -1};
    throw std::invalid_argument("kind must be 1 or 2");
}

std::string torus_generator_name(int kind, int gen) {
    if (kind == 1) return gen == 1 ? "beta" : "gamma";
    if (kind == 2) return gen == 1 ? "beta_prime" : "eta";
    throw std::invalid_argument("kind must be 1 or 2");
}

bool is_zero_vec(const RatVec& v) {
    for (const Rational& q : v)
        if (q != 0) return false;
    return true;
}

std::string signs_str(const std::array<int, 3>& s) {
    std::ostringstream os;
    os << "(" << s[0] << ", " << s[1] << ", " << s[2] << ")";
    return os.str();
}

RatMatrix rat_diag3(int a, int b, int c) {
    RatMatrix m(3, 3);
    m.at(0, 0) = Rational(a);
    m.at(1, 1) = Rational(b);
    m.at(2, 2) = Rational(c);
    return m;
}

RatMatrix block_diag(const RatMatrix& x, const RatMatrix& y) {
    RatMatrix out(x.rows + y.rows, x.cols + y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) out.at(i, j) = x.at(i, j);
    for (int i = 0; i < y.rows; ++i)
        for (int j = 0; j < y.cols; ++j) out.at(x.rows + i, x.cols + j) = y.at(i, j);
    return out;
}

RatMatrix kron(const RatMatrix& x, const RatMatrix& y) {
    RatMatrix out(x.rows * y.rows, x.cols * y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j)
            for (int k = 0; k < y.rows; ++k)
                for (int l = 0; l < y.cols; ++l)
                    out.at(i * y.rows + k, j * y.cols + l) = x.at(i, j) * y.at(k, l);
    return out;
}

// The definite block containing all nonzero coordinates of every root of the
// component, or "" when the support is mixed or touches a hyperbolic block.
std::string component_support_block(const RootSubsystem& sys, const DynkinComponent& comp) {
    const LatticePtr& l = sys.lattice;
    std::string found;
    for (int idx : comp.simple_indices) {
        const IntVec& c = sys.simple_roots[static_cast<size_t>(idx)].coords;
        std::string here;
        for (const LatticeBlock& blk : l->blocks()) {
            bool nonzero = false;
            for (int j = blk.offset; j < blk.offset + blk.size; ++j)
                if (c[static_cast<size_t>(j)] != 0) nonzero = true;
            if (!nonzero) continue;
            if (!here.empty()) return "";  // support crosses blocks
            here = blk.name;
        }
        if (here.rfind("E8", 0) != 0) return "";  // not inside a definite block
        if (found.empty()) found = here;
        if (here != found) return "";
    }
    return found;
}

// Composition of node permutations: (x . y)(i) = x[y[i]].
std::vector<int> compose_perm(const std::vector<int>& x, const std::vector<int>& y) {
    std::vector<int> out(y.size());
    for (size_t i = 0; i < y.size(); ++i) out[i] = x[static_cast<size_t>(y[i])];
    return out;
}

// Folded label of the order-reversing automorphism of A_{m} built from
// scratch on a fresh path lattice (used as the independent oracle for the
// flat-model fold).
std::string folded_path_label(int nodes) {
    IntMatrix gram(nodes, nodes);
    for (int i = 0; i < nodes; ++i) {
        gram.at(i, i) = Integer(-2);
        if (i + 1 < nodes) {
            gram.at(i, i + 1) = Integer(1);
            gram.at(i + 1, i) = Integer(1);
        }
    }
    LatticePtr l = make_lattice(gram, "A");
    std::vector<LatticeVector> seeds;
    for (int i = 0; i < nodes; ++i) {
        IntVec c(static_cast<size_t>(nodes), Integer(0));
        c[static_cast<size_t>(i)] = Integer(1);
        seeds.push_back(lattice_vector(l, c));
    }
    RootSubsystem sys = analyze_root_set(l, reflection_closure(l, seeds));
    if (sys.components.size() != 1 || sys.components[0].label != "A" + std::to_string(nodes))
        throw std::logic_error("folded_path_label: path lattice did not classify as expected");
    std::vector<int> sigma = a_type_flip(sys, sys.components[0]);
    return fold_by_automorphism(sys, sys.components[0], sigma);
}

}  // namespace

void record_check(std::vector<CheckResult>& out, const std::string& name, bool passed,
                  const std::string& witness) {
    out.push_back(CheckResult{name, passed, passed ? std::string() : witness});
}

bool all_checks_passed(const std::vector<CheckResult>& checks) {
    for (const CheckResult& c : checks)
        if (!c.passed) return false;
    return true;
}

const CheckResult* find_check(const std::vector<CheckResult>& checks, const std::string& name) {
    for (const CheckResult& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

PeriodTriple standard_periods() {
    const LatticePtr& l = big_lattice();
    PeriodTriple t{rational_lattice_vector(l, RatVec(static_cast<size_t>(l->rank()), Rational(0))),
                   rational_lattice_vector(l, RatVec(static_cast<size_t>(l->rank()), Rational(0))),
                   rational_lattice_vector(l, RatVec(static_cast<size_t>(l->rank()), Rational(0))),
                   Rational(1), Rational(1), Rational(4)};
    RationalLatticeVector* xs[3] = {&t.x1, &t.x2, &t.x3};
    for (int i = 0; i < 3; ++i) {
        const LatticeBlock& blk = l->block("H" + std::to_string(i + 1));
        xs[i]->coords[static_cast<size_t>(blk.offset)] = Rational(1);
        xs[i]->coords[static_cast<size_t>(blk.offset) + 1] = Rational(2);
    }
    return t;
}

PeriodTriple perturbed_periods(const KeepSet& keep1, const KeepSet& keep2) {
    const LatticePtr& l = big_lattice();
    PeriodTriple t = standard_periods();
    if (!keep1 && !keep2) return t;
    RatVec u(static_cast<size_t>(l->rank()), Rational(0));
    const KeepSet* keeps[2] = {&keep1, &keep2};
    for (int b = 0; b < 2; ++b) {
        if (!keeps[b]->has_value()) continue;
        RationalLatticeVector ub =
            generic_orthogonal_vector(l, "E8_" + std::to_string(b + 1), **keeps[b]);
        for (size_t i = 0; i < u.size(); ++i) u[i] += ub.coords[i];
    }
    Rational cross = inner_product(*l, t.x1.coords, u);
    Rational unorm = inner_product(*l, u, u);
    // The scale must do two things: keep the norm of x1 positive, and stay
    // small enough that no root of a definite block pairs integrally with
    // the scaled perturbation.  A mixed integral root off the definite
    // blocks would need an integer multiple of an isotropic hyperbolic
    // vector to compensate the pairing with the perturbation; keeping every
    // such pairing strictly between -1 and 1 rules that out exactly.
    Rational max_pairing(0);
    for (int b = 1; b <= 2; ++b) {
        for (const LatticeVector& w : block_roots(l, "E8_" + std::to_string(b))) {
            Rational p = inner_product(*l, to_rational(w.coords), u);
            if (p < 0) p = -p;
            if (p > max_pairing) max_pairing = p;
        }
    }
    Rational s(1);
    int guard = 0;
    while (t.common_norm + Rational(2) * s * cross + s * s * unorm <= 0 || s * max_pairing >= 1) {
        s /= 2;
        if (++guard > 256)
            throw std::runtime_error(
                "perturbed_periods: could not scale the perturbation into the positive cone");
    }
    for (size_t i = 0; i < u.size(); ++i) t.x1.coords[i] += s * u[i];
    t.common_norm = inner_product(*l, t.x1.coords, t.x1.coords);
    t.scale_sq2 = t.common_norm / 4;
    t.scale_sq3 = t.common_norm / 4;
    return t;
}

SingularityAnalysis analyze_singularities(const PeriodTriple& periods, bool crosscheck,
                                          std::vector<CheckResult>& checks) {
    const LatticePtr& l = periods.x1.lattice;
    std::vector<RatVec> span{periods.x1.coords, periods.x2.coords, periods.x3.coords};
    NegativeDefiniteSublattice complement = NegativeDefiniteSublattice::orthogonal_complement(l, span);
    std::vector<LatticeVector> roots = enumerate_roots(complement);

    SingularityAnalysis out{analyze_root_set(l, roots), {}, {}, 0, 0, false};

    bool blockwise = true;
    std::string bw_witness;
    for (const DynkinComponent& comp : out.system.components) {
        std::string blk = component_support_block(out.system, comp);
        if (blk.empty()) {
            blockwise = false;
            bw_witness = "component " + comp.label + " is not supported in a single definite block";
            blk = "mixed";
        }
        out.component_blocks.push_back(blk);
    }
    record_check(checks, "singularities_blockwise", blockwise, bw_witness);

    out.gauge = gauge_group(out.system.components);
    out.total_rank = out.gauge.total_rank;
    out.point_count = static_cast<int>(out.system.components.size());

    if (crosscheck) {
        std::vector<LatticeVector> predicted;
        for (int b = 1; b <= 2; ++b) {
            std::string name = "E8_" + std::to_string(b);
            RatVec part = block_part(periods.x1.coords, l->block(name));
            RationalLatticeVector u = embed_block_vector(l, name, part);
            std::vector<LatticeVector> sub = orthogonal_root_set(l, name, u);
            predicted.insert(predicted.end(), sub.begin(), sub.end());
        }
        std::vector<LatticeVector> enumerated = roots;
        std::sort(predicted.begin(), predicted.end());
        std::sort(enumerated.begin(), enumerated.end());
        bool equal = predicted == enumerated;
        std::ostringstream w;
        if (!equal)
            w << "complement enumeration found " << enumerated.size()
              << " roots, per-block orthogonality predicted " << predicted.size();
        record_check(checks, "singularity_cross_check", equal, w.str());
        out.cross_checked = true;
    }
    return out;
}

IntMatrix sign_block_isometry(const LatticePtr& l, const std::array<int, 3>& h_signs,
                              const std::array<int, 2>& def_signs) {
    IntMatrix m = IntMatrix::identity(l->rank());
    for (int i = 0; i < 3; ++i) {
        const LatticeBlock& blk = l->block("H" + std::to_string(i + 1));
        for (int j = blk.offset; j < blk.offset + blk.size; ++j) m.at(j, j) = Integer(h_signs[static_cast<size_t>(i)]);
    }
    for (int i = 0; i < 2; ++i) {
        const LatticeBlock& blk = l->block("E8_" + std::to_string(i + 1));
        for (int j = blk.offset; j < blk.offset + blk.size; ++j)
            m.at(j, j) = Integer(def_signs[static_cast<size_t>(i)]);
    }
    return m;
}

std::optional<std::array<int, 3>> period_signs(const IntMatrix& psi, const PeriodTriple& periods) {
    std::array<int, 3> out{};
    const RationalLatticeVector* xs[3] = {&periods.x1, &periods.x2, &periods.x3};
    for (int i = 0; i < 3; ++i) {
        RatVec image = mat_apply(psi, xs[i]->coords);
        if (image == xs[i]->coords)
            out[static_cast<size_t>(i)] = 1;
        else if (image == negate(xs[i]->coords))
            out[static_cast<size_t>(i)] = -1;
        else
            return std::nullopt;
    }
    return out;
}

LatticeIsometryPair construct_isometries(int kind, const PeriodTriple& periods,
                                         std::vector<CheckResult>& checks) {
    const LatticePtr& l = periods.x1.lattice;
    LatticeIsometryPair out;
    out.h_signs1 = h_sign_table(kind, 1);
    out.h_signs2 = h_sign_table(kind, 2);

    std::array<bool, 2> perturbed{};
    for (int b = 0; b < 2; ++b) {
        const LatticeBlock& blk = l->block("E8_" + std::to_string(b + 1));
        perturbed[static_cast<size_t>(b)] = !is_zero_vec(block_part(periods.x1.coords, blk));
    }
    // A perturbed definite block must follow the generator's sign on x1; an
    // untouched block is fixed pointwise.
    for (int b = 0; b < 2; ++b) {
        out.def_signs1[static_cast<size_t>(b)] = perturbed[static_cast<size_t>(b)] ? out.h_signs1[0] : 1;
        out.def_signs2[static_cast<size_t>(b)] = perturbed[static_cast<size_t>(b)] ? out.h_signs2[0] : 1;
    }
    out.psi1 = sign_block_isometry(l, out.h_signs1, out.def_signs1);
    out.psi2 = sign_block_isometry(l, out.h_signs2, out.def_signs2);
    out.span1 = IntMatrix::diagonal(
        IntVec{Integer(out.h_signs1[0]), Integer(out.h_signs1[1]), Integer(out.h_signs1[2])});
    out.span2 = IntMatrix::diagonal(
        IntVec{Integer(out.h_signs2[0]), Integer(out.h_signs2[1]), Integer(out.h_signs2[2])});

    const IntMatrix& g = l->gram();
    bool gram_ok = mul(transpose(out.psi1), mul(g, out.psi1)) == g &&
                   mul(transpose(out.psi2), mul(g, out.psi2)) == g;
    record_check(checks, "isometry_gram", gram_ok, "some generator does not preserve the pairing");

    bool invol = mul(out.psi1, out.psi1).is_identity() && mul(out.psi2, out.psi2).is_identity();
    record_check(checks, "isometry_involutive", invol, "some generator is not an involution");

    bool comm = mul(out.psi1, out.psi2) == mul(out.psi2, out.psi1);
    record_check(checks, "isometries_commute", comm, "the two generators do not commute");

    std::optional<std::array<int, 3>> s1 = period_signs(out.psi1, periods);
    std::optional<std::array<int, 3>> s2 = period_signs(out.psi2, periods);
    bool signs_ok = s1.has_value() && s2.has_value() && *s1 == out.h_signs1 && *s2 == out.h_signs2;
    std::ostringstream sw;
    if (!signs_ok) {
        sw << "expected sign actions " << signs_str(out.h_signs1) << " and " << signs_str(out.h_signs2)
           << "; got " << (s1 ? signs_str(*s1) : std::string("none")) << " and "
           << (s2 ? signs_str(*s2) : std::string("none"));
    }
    record_check(checks, "isometry_sign_action", signs_ok, sw.str());

    int det1 = out.h_signs1[0] * out.h_signs1[1] * out.h_signs1[2];
    int det2 = out.h_signs2[0] * out.h_signs2[1] * out.h_signs2[2];
    record_check(checks, "positive_cone", det1 == 1 && det2 == 1,
                 "determinant on the positive three-plane is " + std::to_string(det1) + ", " +
                     std::to_string(det2));
    return out;
}

BettiNumbers betti_numbers(int kind, const LatticePtr& l, int total_rank,
                           std::vector<CheckResult>& checks) {
    struct PairElt {
        IntMatrix s;
        IntMatrix r;
    };
    std::vector<PairElt> gens;
    for (int gi = 1; gi <= 2; ++gi) {
        IntMatrix s = sign_block_isometry(l, h_sign_table(kind, gi), {1, 1});
        IntMatrix r = torus_generator(torus_generator_name(kind, gi)).a;
        gens.push_back(PairElt{std::move(s), std::move(r)});
    }
    std::vector<PairElt> elts{PairElt{IntMatrix::identity(l->rank()), IntMatrix::identity(3)}};
    for (size_t head = 0; head < elts.size(); ++head) {
        for (const PairElt& g : gens) {
            PairElt prod{mul(elts[head].s, g.s), mul(elts[head].r, g.r)};
            bool seen = false;
            for (const PairElt& e : elts)
                if (e.s == prod.s && e.r == prod.r) seen = true;
            if (!seen) elts.push_back(prod);
            if (elts.size() > 16) throw std::logic_error("betti_numbers: closure bound exceeded");
        }
    }
    record_check(checks, "cohomology_group_closed", elts.size() == 4,
                 "paired sign/rotation closure has order " + std::to_string(elts.size()));

    std::vector<RatMatrix> h2reps, h3reps, onereps;
    RatVec zero3(3, Rational(0));
    for (const PairElt& e : elts) {
        AffineTorusIsometry rot = make_affine(e.r, zero3);
        RatMatrix one = representation_on_one_forms(rot);
        RatMatrix two = representation_on_two_forms(rot);
        RatMatrix vol = representation_on_volume(rot);
        RatMatrix s = RatMatrix::from_int(e.s);
        h2reps.push_back(block_diag(s, two));
        h3reps.push_back(block_diag(kron(s, one), vol));
        onereps.push_back(one);
    }
    BettiNumbers out;
    out.h2_invariant = invariant_dimension(h2reps);
    out.b2 = out.h2_invariant - total_rank;
    out.b3 = invariant_dimension(h3reps);
    out.b1n = invariant_dimension(onereps);

    AffineTorusIsometry rot1 = make_affine(gens[0].r, zero3);
    RatMatrix first = block_diag(RatMatrix::from_int(gens[0].s), representation_on_two_forms(rot1));
    out.h2_first_generator_invariant =
        invariant_dimension({RatMatrix::identity(first.rows), first});

    record_check(checks, "betti_rank_relation", out.b2 == 16 - total_rank,
                 "b2 = " + std::to_string(out.b2) + " does not match 16 - " +
                     std::to_string(total_rank));
    return out;
}

std::vector<ComponentMonodromy> monodromy_report(const SingularityAnalysis& sing,
                                                 const LatticeIsometryPair& isometries,
                                                 bool crosscheck,
                                                 std::vector<CheckResult>& checks) {
    std::vector<ComponentMonodromy> out;
    bool consistent = true, closed_ok = true, fiber_ok = true;
    std::string cw, clw, fw;

    for (size_t ci = 0; ci < sing.system.components.size(); ++ci) {
        const DynkinComponent& comp = sing.system.components[ci];
        ComponentMonodromy m;
        m.label = comp.label;
        m.block = sing.component_blocks[ci];
        int bidx = (m.block == "E8_2") ? 1 : 0;
        const IntMatrix* psis[2] = {&isometries.psi1, &isometries.psi2};
        int bsign[2] = {isometries.def_signs1[static_cast<size_t>(bidx)],
                        isometries.def_signs2[static_cast<size_t>(bidx)]};

        std::vector<std::vector<int>> sigmas;
        for (int gi = 0; gi < 2; ++gi) {
            WeylDecomposition wd = weyl_decompose(sing.system, comp, *psis[gi]);
            sigmas.push_back(wd.sigma);
            m.generator_automorphisms.push_back(wd.trivial ? "trivial" : "flip");
            if (!wd.trivial && m.folded_label.empty())
                m.folded_label = fold_by_automorphism(sing.system, comp, wd.sigma);
        }
        m.trivial = m.generator_automorphisms[0] == "trivial" && m.generator_automorphisms[1] == "trivial";

        if (m.generator_automorphisms[0] == "flip" && m.generator_automorphisms[1] == "flip" &&
            sigmas[0] != sigmas[1]) {
            consistent = false;
            cw = "generators induce different nontrivial automorphisms on " + comp.label;
        }

        WeylDecomposition wp = weyl_decompose(sing.system, comp, mul(*psis[0], *psis[1]));
        if (wp.sigma != compose_perm(sigmas[0], sigmas[1])) {
            closed_ok = false;
            clw = "product automorphism on " + comp.label + " does not compose";
        }

        if (crosscheck && !comp.label.empty() && comp.label[0] == 'A') {
            int n = comp.node_count + 1;
            AntiUnitaryMap alpha = cyclic_generators(n).at(0);
            bool agrees = true;
            std::string why;
            for (int gi = 0; gi < 2; ++gi) {
                AntiUnitaryMap t = tau_map(bsign[gi] < 0 ? 2 : 1);
                int e = conjugation_exponent(t, alpha, n);
                std::string expected = induced_diagram_automorphism(e, n);
                if (expected != m.generator_automorphisms[static_cast<size_t>(gi)]) {
                    agrees = false;
                    why = comp.label + ": lattice route gives " +
                          m.generator_automorphisms[static_cast<size_t>(gi)] +
                          ", cyclic conjugation gives " + expected;
                }
            }
            m.fiber_comparison = agrees ? "agrees" : why;
            if (!agrees) {
                fiber_ok = false;
                fw = why;
            }
        }
        out.push_back(std::move(m));
    }
    record_check(checks, "monodromy_generators_consistent", consistent, cw);
    record_check(checks, "monodromy_group_closed", closed_ok, clw);
    if (crosscheck) record_check(checks, "cyclic_fiber_consistency", fiber_ok, fw);
    return out;
}

OrbifoldReport run_pipeline(const OrbifoldSpec& spec) {
    if (spec.kind != 1 && spec.kind != 2) throw std::invalid_argument("kind must be 1 or 2");
    OrbifoldReport rep;
    rep.spec = spec;
    rep.periods = (!spec.keep1 && !spec.keep2) ? standard_periods()
                                               : perturbed_periods(spec.keep1, spec.keep2);
    const LatticePtr& l = rep.periods.x1.lattice;
    std::vector<CheckResult>& C = rep.checks;

    const RationalLatticeVector* xs[3] = {&rep.periods.x1, &rep.periods.x2, &rep.periods.x3};
    bool ortho = true;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (inner_product(*l, xs[i]->coords, xs[j]->coords) != 0) ortho = false;
    record_check(C, "periods_orthogonal", ortho, "some pair of periods is not orthogonal");

    Rational n1 = inner_product(*l, xs[0]->coords, xs[0]->coords);
    Rational n2 = inner_product(*l, xs[1]->coords, xs[1]->coords);
    Rational n3 = inner_product(*l, xs[2]->coords, xs[2]->coords);
    record_check(C, "periods_norms_positive",
                 n1 > 0 && n2 > 0 && n3 > 0 && n1 == rep.periods.common_norm,
                 "period norms " + to_string(n1) + ", " + to_string(n2) + ", " + to_string(n3));
    record_check(C, "periods_effective_norms_equal",
                 rep.periods.scale_sq2 * n2 == rep.periods.common_norm &&
                     rep.periods.scale_sq3 * n3 == rep.periods.common_norm,
                 "scaled norms do not agree with the common norm " + to_string(rep.periods.common_norm));

    rep.singularities = analyze_singularities(rep.periods, spec.crosscheck, C);
    rep.isometries = construct_isometries(spec.kind, rep.periods, C);

    AffineGroupClosure base = close_affine_group(family_torus_generators(spec.kind), 64);
    bool abelian = true;
    int max_order = 1;
    for (size_t i = 0; i < base.elements.size(); ++i) {
        max_order = std::max(max_order, affine_order(base.elements[i]));
        for (size_t j = i + 1; j < base.elements.size(); ++j)
            if (!(compose(base.elements[i], base.elements[j]) ==
                  compose(base.elements[j], base.elements[i])))
                abelian = false;
    }
    bool structure_ok = spec.kind == 1
                            ? (base.elements.size() == 4 && abelian && max_order == 2)
                            : (base.elements.size() == 8 && !abelian && max_order == 4);
    record_check(C, "torus_group_structure", structure_ok,
                 "order " + std::to_string(base.elements.size()) + ", abelian = " +
                     (abelian ? "yes" : "no") + ", maximal element order " + std::to_string(max_order));

    FreenessResult fr = is_free_action(base.elements);
    std::ostringstream frw;
    if (!fr.free) {
        frw << "element " << fr.witness_index << " fixes a point";
    }
    record_check(C, "torus_action_free", fr.free, frw.str());

    std::vector<IntMatrix> lifted;
    for (const std::vector<int>& word : base.words) {
        IntMatrix p = IntMatrix::identity(l->rank());
        for (int gi : word) p = mul(p, gi == 0 ? rep.isometries.psi1 : rep.isometries.psi2);
        lifted.push_back(std::move(p));
    }
    bool homo = true;
    std::string hw;
    for (size_t i = 0; i < base.elements.size() && homo; ++i)
        for (size_t j = 0; j < base.elements.size() && homo; ++j) {
            int k = find_element(base, compose(base.elements[i], base.elements[j]));
            if (k < 0 || !(mul(lifted[i], lifted[j]) == lifted[static_cast<size_t>(k)])) {
                homo = false;
                hw = "product of elements " + std::to_string(i) + ", " + std::to_string(j) +
                     " does not respect the lattice action";
            }
        }
    record_check(C, "action_homomorphism", homo, hw);

    bool aligned = true;
    std::string aw;
    for (size_t i = 0; i < base.elements.size() && aligned; ++i) {
        std::optional<std::array<int, 3>> s = period_signs(lifted[i], rep.periods);
        if (!s) {
            aligned = false;
            aw = "element " + std::to_string(i) + " does not act by signs on the periods";
            break;
        }
        IntMatrix d = IntMatrix::diagonal(IntVec{Integer((*s)[0]), Integer((*s)[1]), Integer((*s)[2])});
        if (!(d == base.elements[i].a)) {
            aligned = false;
            aw = "element " + std::to_string(i) + " acts by " + signs_str(*s) +
                 " on the periods but rotates the base differently";
        }
    }
    record_check(C, "pullback_alignment", aligned, aw);

    rep.betti = betti_numbers(spec.kind, l, rep.singularities.total_rank, C);
    rep.monodromy = monodromy_report(rep.singularities, rep.isometries, spec.crosscheck, C);
    rep.valid = all_checks_passed(C);
    return rep;
}

const std::set<std::string>& expected_connected_labels() {
    static const std::set<std::string> labels = {"A1", "A2", "A3", "A4", "A5", "A6", "A7",
                                                 "D4", "D5", "D6", "D7", "E6", "E7", "E8"};
    return labels;
}

CatalogResult run_catalog(int kind) {
    const std::set<int> none;
    auto chain_prefix = [](int count) {
        static const int chain[7] = {1, 3, 4, 5, 6, 7, 8};
        std::set<int> s;
        for (int i = 0; i < count; ++i) s.insert(chain[i]);
        return s;
    };
    auto d_nodes = [](int count) {
        std::set<int> s{2};
        for (int i = 3; i < 3 + count - 1; ++i) s.insert(i);
        return s;
    };
    auto range_1_to = [](int top) {
        std::set<int> s;
        for (int i = 1; i <= top; ++i) s.insert(i);
        return s;
    };

    std::vector<std::pair<std::string, OrbifoldSpec>> specs;
    specs.push_back({"standard", OrbifoldSpec{kind, std::nullopt, std::nullopt, true}});
    specs.push_back({"smooth", OrbifoldSpec{kind, none, none, true}});
    for (int k = 1; k <= 7; ++k)
        specs.push_back({"A" + std::to_string(k), OrbifoldSpec{kind, chain_prefix(k), none, true}});
    for (int k = 4; k <= 7; ++k)
        specs.push_back({"D" + std::to_string(k), OrbifoldSpec{kind, d_nodes(k), none, true}});
    specs.push_back({"E6", OrbifoldSpec{kind, range_1_to(6), none, true}});
    specs.push_back({"E7", OrbifoldSpec{kind, range_1_to(7), none, true}});
    specs.push_back({"E7+A1", OrbifoldSpec{kind, range_1_to(7), std::set<int>{1}, true}});

    CatalogResult out;
    out.all_valid = true;
    for (const auto& [name, ospec] : specs) {
        CatalogEntry entry{name, ospec, run_pipeline(ospec)};
        for (const DynkinComponent& comp : entry.report.singularities.system.components)
            out.realized_labels.insert(comp.label);
        if (entry.report.singularities.point_count == 0) out.has_empty_entry = true;
        out.all_valid = out.all_valid && entry.report.valid;
        out.entries.push_back(std::move(entry));
    }
    out.labels_complete = out.has_empty_entry && out.realized_labels == expected_connected_labels();
    return out;
}

RatMatrix self_dual_rotation(const AntiUnitaryMap& m) {
    if (!is_unitary(m)) throw std::domain_error("self_dual_rotation: matrix part is not unitary");
    auto is_special = [](const AntiUnitaryMap& u) {
        Cyclotomic d = determinant(u);
        return u.conj == 0 && is_unitary(u) && d == Cyclotomic::one(d.conductor());
    };
    RatMatrix out;
    bool decided = false;
    if (m.conj == 0) {
        Cyclotomic d = determinant(m);
        if (d == Cyclotomic::one(d.conductor())) {
            out = RatMatrix::identity(3);
            decided = true;
        } else if (is_special(compose(m, tau_map(1)))) {
            out = rat_diag3(1, -1, -1);
            decided = true;
        }
    } else {
        if (is_special(compose(m, inverse(tau_map(2))))) {
            out = rat_diag3(-1, 1, -1);
            decided = true;
        } else if (is_special(compose(m, inverse(compose(tau_map(1), tau_map(2)))))) {
            out = rat_diag3(-1, -1, 1);
            decided = true;
        }
    }
    if (!decided) throw std::domain_error("self_dual_rotation: map lies in no recognized coset");
    // Independent verification through the explicit real four-dimensional
    // form whenever the entries have rational real and imaginary parts.
    try {
        RatMatrix direct = action_on_self_dual(real_form(m));
        if (!(direct == out))
            throw std::logic_error("self_dual_rotation: coset route and real-form route disagree");
    } catch (const std::domain_error&) {
    }
    return out;
}

FlatGroup flat_group(int kind, int n) {
    if (kind != 1 && kind != 2) throw std::invalid_argument("kind must be 1 or 2");
    if (n < 1) throw std::invalid_argument("the fiber order must be positive");
    AntiUnitaryMap alpha = cyclic_generators(n).at(0);
    AffineTorusIsometry id3 = make_affine(IntMatrix::identity(3), RatVec(3, Rational(0)));
    std::vector<std::pair<AntiUnitaryMap, AffineTorusIsometry>> gens;
    gens.emplace_back(alpha, id3);
    if (kind == 1) {
        gens.emplace_back(tau_map(1), torus_generator("beta"));
        gens.emplace_back(tau_map(2), torus_generator("gamma"));
    } else {
        gens.emplace_back(tau_map(1), torus_generator("beta_prime"));
        gens.emplace_back(tau_map(3), torus_generator("eta"));
    }
    std::vector<std::pair<AntiUnitaryMap, AffineTorusIsometry>> elts;
    elts.emplace_back(AntiUnitaryMap::identity(1), id3);
    for (size_t head = 0; head < elts.size(); ++head) {
        for (const auto& g : gens) {
            std::pair<AntiUnitaryMap, AffineTorusIsometry> prod{
                compose(elts[head].first, g.first), compose(elts[head].second, g.second)};
            bool seen = false;
            for (const auto& e : elts)
                if (equal_maps(e.first, prod.first) && e.second == prod.second) seen = true;
            if (!seen) elts.push_back(std::move(prod));
            if (elts.size() > 256) throw std::logic_error("flat_group: closure bound exceeded");
        }
    }
    FlatGroup out;
    for (auto& e : elts) {
        out.fiber.push_back(std::move(e.first));
        out.base.push_back(std::move(e.second));
    }
    return out;
}

FlatModelReport flat_model_report(int kind, int n) {
    if (kind != 1 && kind != 2) throw std::invalid_argument("kind must be 1 or 2");
    if (n < 1 || n > 16) throw std::invalid_argument("the fiber order must lie in 1..16");
    FlatModelReport r;
    r.kind = kind;
    r.n = n;
    std::vector<CheckResult>& C = r.checks;

    AntiUnitaryMap alpha = cyclic_generators(n).at(0);
    GroupClosure fiber = close_group({alpha}, static_cast<std::size_t>(n) + 1);
    r.fiber_order = static_cast<long>(fiber.elements.size());
    record_check(C, "fiber_cyclic_order", r.fiber_order == n,
                 "cyclic closure has order " + std::to_string(r.fiber_order));
    if (n >= 2) r.unfolded_label = "A" + std::to_string(n - 1);

    if (kind == 1) {
        bool ok = equal_maps(compose(tau_map(1), alpha), compose(alpha, tau_map(1)));
        std::string w = ok ? "" : "the linear reflection does not commute with the fiber rotation";
        for (int k = 0; k < n && ok; ++k) {
            AntiUnitaryMap lhs = compose(compose(tau_map(2), power(alpha, k)), inverse(tau_map(2)));
            if (!equal_maps(lhs, power(alpha, -k))) {
                ok = false;
                w = "conjugation does not invert the power k = " + std::to_string(k);
            }
        }
        record_check(C, "fiber_relations", ok, w);
    } else {
        GroupClosure refl = close_group({tau_map(1), tau_map(3)}, 16);
        bool ok = refl.elements.size() == 8;
        std::string w = ok ? "" : "reflection group has order " + std::to_string(refl.elements.size());
        for (const AntiUnitaryMap& e : refl.elements) {
            if (!ok) break;
            if (!equal_maps(compose(e, alpha), compose(alpha, e))) {
                ok = false;
                w = "a reflection fails to commute with the fiber rotation";
            }
        }
        record_check(C, "fiber_relations", ok, w);
    }

    if (n >= 2) {
        int e1 = conjugation_exponent(tau_map(1), alpha, n);
        int e2 = conjugation_exponent(tau_map(2), alpha, n);
        int e3 = conjugation_exponent(tau_map(3), alpha, n);
        bool norm_ok = ((e1 - 1) % n == 0) && ((e2 - (n - 1)) % n == 0) && ((e3 - 1) % n == 0);
        record_check(C, "fiber_normalization", norm_ok,
                     "conjugation exponents " + std::to_string(e1) + ", " + std::to_string(e2) +
                         ", " + std::to_string(e3));
        r.exponent = (kind == 1) ? e2 : e3;
        r.automorphism = induced_diagram_automorphism(r.exponent, n);
    } else {
        r.exponent = 1;
        r.automorphism = "trivial";
        r.note = "trivial fiber group: the model is smooth along the fiber";
    }

    if (r.automorphism == "flip") {
        r.folded_label = folded_path_label(n - 1);
        record_check(C, "folded_label_defined", !r.folded_label.empty(), "fold produced no label");
    }
    if (kind == 1 && n == 2)
        r.note =
            "inversion is inner for a fiber group of order two, so the induced diagram "
            "automorphism is trivial; this boundary case is reported rather than asserted";

    AffineGroupClosure base = close_affine_group(family_torus_generators(kind), 64);
    r.torus_order = static_cast<int>(base.elements.size());
    bool abelian = true;
    int max_order = 1;
    for (size_t i = 0; i < base.elements.size(); ++i) {
        int o = affine_order(base.elements[i]);
        r.torus_element_orders.push_back(o);
        max_order = std::max(max_order, o);
        for (size_t j = i + 1; j < base.elements.size(); ++j)
            if (!(compose(base.elements[i], base.elements[j]) ==
                  compose(base.elements[j], base.elements[i])))
                abelian = false;
    }
    r.torus_abelian = abelian;
    bool structure_ok = kind == 1 ? (r.torus_order == 4 && abelian && max_order == 2)
                                  : (r.torus_order == 8 && !abelian && max_order == 4);
    record_check(C, "torus_group_structure", structure_ok,
                 "order " + std::to_string(r.torus_order) + ", abelian = " + (abelian ? "yes" : "no") +
                     ", maximal element order " + std::to_string(max_order));

    FreenessResult fr = is_free_action(base.elements);
    r.free_action = fr.free;
    record_check(C, "torus_action_free", fr.free,
                 fr.free ? "" : "element " + std::to_string(fr.witness_index) + " fixes a point");

    FlatGroup g = flat_group(kind, n);
    std::vector<RatMatrix> sd, rot;
    for (size_t i = 0; i < g.fiber.size(); ++i) {
        sd.push_back(self_dual_rotation(g.fiber[i]));
        rot.push_back(RatMatrix::from_int(g.base[i].a));
    }
    bool aligned = find_basis_alignment(sd, rot, r.alignment);
    record_check(C, "pullback_alignment", aligned,
                 "no signed permutation aligns the self-dual action with the base rotations");

    bool onto = true;
    for (const AffineTorusIsometry& b : base.elements) {
        bool found = false;
        for (const AffineTorusIsometry& gb : g.base)
            if (gb == b) found = true;
        if (!found) onto = false;
    }
    record_check(C, "base_projection_onto", onto,
                 "some base isometry is missed by the paired group");

    r.valid = all_checks_passed(C);
    return r;
}

}  // namespace k3g2
