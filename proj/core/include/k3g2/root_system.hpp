#pragma once

#include <string>
#include <vector>

#include "k3g2/lattice.hpp"

namespace k3g2 {

// A connected piece of a Dynkin diagram, referring to simple roots by index.
struct DynkinComponent {
    std::string label;  // "A1".."A7", "D4".."D7", "E6", "E7", "E8", ...
    int node_count = 0;
    std::vector<int> simple_indices;
};

// A root subsystem of norm -2 vectors: the full root list, an extracted
// simple system, and its Dynkin classification.
struct RootSubsystem {
    LatticePtr lattice;
    std::vector<LatticeVector> roots;         // canonical order
    std::vector<LatticeVector> simple_roots;  // canonical order
    std::vector<DynkinComponent> components;
};

// Closure of the seed vectors under reflection in every member; seeds must
// have norm -2.  Canonical order.
std::vector<LatticeVector> reflection_closure(const LatticePtr& l,
                                              const std::vector<LatticeVector>& seeds);

// Extracts the simple system of a finite root set (norm -2 vectors, closed
// under negation and reflection; both are validated, with a witness in the
// error message).  A deterministic sequence of generic linear functionals
// picks the positive half; indecomposable positives form the simple system.
RootSubsystem extract_simple_roots(const LatticePtr& l, std::vector<LatticeVector> roots);

// Splits the simple system into connected components and names each one.
// Distinct simple roots must pair to 0 or +1 (the norm -2 convention);
// anything that is not a simply laced Dynkin tree is an error.
std::vector<DynkinComponent> classify_components(const RootSubsystem& sys);

// extract_simple_roots + classify_components, components stored in place.
RootSubsystem analyze_root_set(const LatticePtr& l, std::vector<LatticeVector> roots);

// Full root set of one component (reflection closure of its simple roots).
std::vector<LatticeVector> component_roots(const RootSubsystem& sys, const DynkinComponent& comp);

// Adjacency lists of a component's diagram in component-local positions.
std::vector<std::vector<int>> component_adjacency(const RootSubsystem& sys,
                                                  const DynkinComponent& comp);

// The order-reversing diagram automorphism of an A-type component, in
// component-local positions (the identity for A1).  Errors if the component
// is not a path.
std::vector<int> a_type_flip(const RootSubsystem& sys, const DynkinComponent& comp);

struct GaugeGroupReport {
    std::vector<std::string> factors;  // nonabelian factors, component order
    int total_rank = 0;
    int abelian_rank = 0;  // 16 - total_rank
    std::string str() const;           // e.g. "U(1)^2 x E7 x A1"
};
GaugeGroupReport gauge_group(const std::vector<DynkinComponent>& components);

// Folds a component by a diagram automorphism sigma (a permutation of the
// component's nodes, given in component-local positions).  The label is
// computed from scratch every time: project the component's roots onto the
// sigma-fixed subspace, collect distinct nonzero projections and classify
// the resulting (possibly non-reduced) system by rank, cardinality and norm
// ratios.  Returns the folded label ("C2", "BC1", "F4", ...).
std::string fold_by_automorphism(const RootSubsystem& sys, const DynkinComponent& comp,
                                 const std::vector<int>& sigma);

// Writes an isometry preserving a component's root set as w * sigma with w
// in the Weyl group (a word in component-local simple reflections) and
// sigma a diagram automorphism (component-local node permutation).
struct WeylDecomposition {
    std::vector<int> word;   // simple reflection indices, applied left to right
    std::vector<int> sigma;  // node permutation
    bool trivial = false;    // sigma is the identity
};
WeylDecomposition weyl_decompose(const RootSubsystem& sys, const DynkinComponent& comp,
                                 const IntMatrix& iso);

}  // namespace k3g2
