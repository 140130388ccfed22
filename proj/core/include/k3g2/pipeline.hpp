#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "k3g2/root_system.hpp"
#include "k3g2/su2.hpp"
#include "k3g2/torus.hpp"

namespace k3g2 {

// Per-block perturbation request.  Absent means the block is left alone (its
// full root system survives); a set keeps exactly the parabolic subsystem
// spanned by the listed simple roots, 1-based Bourbaki node indices, with
// the empty set keeping nothing.  Keep sets must be proper subsets.
using KeepSet = std::optional<std::set<int>>;

struct OrbifoldSpec {
    int kind = 1;            // which pair of sign tables / torus actions (1 or 2)
    KeepSet keep1;           // first definite block
    KeepSet keep2;           // second definite block
    bool crosscheck = true;  // run the independent second-route comparisons
};

// One named verification with a witness on failure.
struct CheckResult {
    std::string name;
    bool passed = true;
    std::string witness;
};
void record_check(std::vector<CheckResult>& out, const std::string& name, bool passed,
                  const std::string& witness = "");
bool all_checks_passed(const std::vector<CheckResult>& checks);
const CheckResult* find_check(const std::vector<CheckResult>& checks, const std::string& name);

// A positive-definite triple (x1, x2, x3) in the big lattice.  Equal norms
// are tracked through squared-scale bookkeeping: the effective norm of x_i
// is scale_sq_i * (x_i . x_i), with scale_sq_1 fixed to 1, so only the
// rational rays and the scale squares are stored; no irrational scale is
// ever introduced.
struct PeriodTriple {
    RationalLatticeVector x1, x2, x3;
    Rational scale_sq2 = Rational(1);
    Rational scale_sq3 = Rational(1);
    Rational common_norm = Rational(4);  // = x1.x1 = effective norm of x2 and x3
};

// x_i = v1 + 2 v2 in the i-th hyperbolic block; all norms 4, mutually
// orthogonal.
PeriodTriple standard_periods();

// Adds to x1 a generic vector per requested definite block, orthogonal to
// exactly the kept parabolic subsystem there, scaled by a positive rational
// power of 1/2 so that the norm of x1 stays positive; x2 and x3 then carry
// squared scale (common norm)/4.  Throws if the bounded rescaling search
// fails (it cannot for these blocks, but the guard is explicit).
PeriodTriple perturbed_periods(const KeepSet& keep1, const KeepSet& keep2);

// The singular locus data computed from a period triple.  The subsystem is
// classified from the orthogonal-complement enumeration; when crosscheck is
// set the result is compared against the structured per-block filter.
struct SingularityAnalysis {
    RootSubsystem system;                       // ambient coordinates
    std::vector<std::string> component_blocks;  // parallel to system.components
    GaugeGroupReport gauge;
    int total_rank = 0;
    int point_count = 0;  // number of connected components
    bool cross_checked = false;
};
SingularityAnalysis analyze_singularities(const PeriodTriple& periods, bool crosscheck,
                                          std::vector<CheckResult>& checks);

// Block-sign isometry of the big lattice: h_signs act on the three
// hyperbolic blocks, def_signs on the two definite blocks.
IntMatrix sign_block_isometry(const LatticePtr& l, const std::array<int, 3>& h_signs,
                              const std::array<int, 2>& def_signs);

// Signs s_i with psi(x_i) = s_i x_i, or absent if some x_i is not mapped to
// a signed copy of itself.
std::optional<std::array<int, 3>> period_signs(const IntMatrix& psi, const PeriodTriple& periods);

// The commuting pair of involutive isometries attached to a kind: signs on
// the hyperbolic blocks follow the kind's sign table; a definite block
// carries the first generator-sign of x1 when the periods are perturbed
// there and the identity otherwise.
struct LatticeIsometryPair {
    IntMatrix psi1, psi2;
    std::array<int, 3> h_signs1{}, h_signs2{};
    std::array<int, 2> def_signs1{}, def_signs2{};
    IntMatrix span1, span2;  // 3x3 diagonal action on (x1, x2, x3)
};
LatticeIsometryPair construct_isometries(int kind, const PeriodTriple& periods,
                                         std::vector<CheckResult>& checks);

// Betti numbers of the quotient.  The degree-two model is (big lattice over
// Q) + (two-forms of the torus); the degree-three model is (big lattice
// tensor one-forms) + (torus volume forms).  The group acts through the
// kind's sign tables on the hyperbolic blocks, fixing the definite blocks
// (collapsed classes are monodromy-fixed in this reading; the isometries
// used for monodromy are reported separately), paired with the torus
// rotations.  b2 subtracts the rank collapsed at the singular points.
struct BettiNumbers {
    int b2 = 0;
    int b3 = 0;
    int b1n = 0;
    int h2_invariant = 0;                  // invariant dimension before the rank subtraction
    int h2_first_generator_invariant = 0;  // under the first generator pair alone
};
BettiNumbers betti_numbers(int kind, const LatticePtr& l, int total_rank,
                           std::vector<CheckResult>& checks);

// Diagram-automorphism content of the isometry pair on one singular
// component, plus the optional cyclic-fiber comparison for A-type
// components (the lattice route and the fiber-conjugation route must induce
// the same automorphism).
struct ComponentMonodromy {
    std::string label;
    std::string block;
    std::vector<std::string> generator_automorphisms;  // "trivial" / "flip" per generator
    bool trivial = true;
    std::string folded_label;      // set when some generator acts by a flip
    std::string fiber_comparison;  // "", "agrees", or a mismatch description
};
std::vector<ComponentMonodromy> monodromy_report(const SingularityAnalysis& sing,
                                                 const LatticeIsometryPair& isometries,
                                                 bool crosscheck,
                                                 std::vector<CheckResult>& checks);

struct OrbifoldReport {
    OrbifoldSpec spec;
    PeriodTriple periods;
    SingularityAnalysis singularities;
    LatticeIsometryPair isometries;
    BettiNumbers betti;
    std::vector<ComponentMonodromy> monodromy;
    std::vector<CheckResult> checks;
    bool valid = false;  // all checks passed
};
OrbifoldReport run_pipeline(const OrbifoldSpec& spec);

// Representative keep-set choices realizing every connected singularity
// label once, plus the untouched and the fully smoothed configurations.
struct CatalogEntry {
    std::string name;
    OrbifoldSpec spec;
    OrbifoldReport report;
};
struct CatalogResult {
    std::vector<CatalogEntry> entries;
    std::set<std::string> realized_labels;  // connected labels over all entries
    bool has_empty_entry = false;           // some entry has no singular point
    bool labels_complete = false;           // realized labels match the expected list
    bool all_valid = false;
};
CatalogResult run_catalog(int kind);
// The connected labels a catalog must realize.
const std::set<std::string>& expected_connected_labels();

// The action matrix on the self-dual two-form triple of the fiber factor
// induced by a (possibly conjugate-linear) unitary map, computed exactly
// from its coset with respect to the reference involutions; unitary
// determinant-one maps act trivially.  Cross-validated against the explicit
// four-dimensional real form whenever that form is rational.
RatMatrix self_dual_rotation(const AntiUnitaryMap& m);

// Closure of the paired fiber/base generators of a flat model: the cyclic
// fiber generator paired with the identity on the base, and the kind's two
// reflections paired with their base isometries.
struct FlatGroup {
    std::vector<AntiUnitaryMap> fiber;
    std::vector<AffineTorusIsometry> base;
};
FlatGroup flat_group(int kind, int n);

// Exact verification of one flat model: fiber normalization and
// conjugation relations, base group structure, freeness, the self-dual /
// rotation alignment, and the induced monodromy with its folded label.
struct FlatModelReport {
    int kind = 1;
    int n = 1;
    long fiber_order = 0;
    std::string unfolded_label;  // "A{n-1}" for n >= 2
    int torus_order = 0;
    bool torus_abelian = true;
    std::vector<int> torus_element_orders;
    bool free_action = false;
    int exponent = 1;             // conjugation exponent of the kind's reflection, +-1 mod n
    std::string automorphism;     // "trivial" or "flip"
    std::string folded_label;     // set when the automorphism is a flip
    std::string note;             // boundary-case remarks
    IntMatrix alignment;          // basis change realizing the alignment
    std::vector<CheckResult> checks;
    bool valid = false;
};
FlatModelReport flat_model_report(int kind, int n);

}  // namespace k3g2
