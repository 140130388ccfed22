#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "k3g2/matrix.hpp"

namespace k3g2 {

struct LatticeBlock {
    std::string name;
    int offset = 0;
    int size = 0;
};

// An even integral lattice given by a symmetric Gram matrix together with a
// named block decomposition (the Gram matrix is block diagonal across the
// declared blocks).  Instances are immutable and shared.
class IntegerLattice {
  public:
    IntegerLattice(IntMatrix gram, std::vector<LatticeBlock> blocks);

    int rank() const { return gram_.rows; }
    const IntMatrix& gram() const { return gram_; }
    const std::vector<LatticeBlock>& blocks() const { return blocks_; }
    const LatticeBlock& block(const std::string& name) const;

    std::tuple<int, int, int> signature() const;  // (positive, negative, zero)
    Integer determinant() const;

  private:
    IntMatrix gram_;
    std::vector<LatticeBlock> blocks_;
};

using LatticePtr = std::shared_ptr<const IntegerLattice>;

// The hyperbolic plane H: Gram [[0,1],[1,0]].
LatticePtr make_hyperbolic();
// -E8: the negated E8 Cartan matrix in Bourbaki numbering (nodes 1..8 with
// chain 1-3-4-5-6-7-8 and node 2 attached to node 4).
LatticePtr make_minus_e8();
// The K3 lattice 3H + 2(-E8), rank 22, blocks H1 H2 H3 E8_1 E8_2.
LatticePtr make_k3_lattice();
// Arbitrary lattice with a single block covering everything.
LatticePtr make_lattice(IntMatrix gram, const std::string& block_name);

bool same_lattice(const LatticePtr& a, const LatticePtr& b);

struct LatticeVector {
    LatticePtr lattice;
    IntVec coords;

    bool operator==(const LatticeVector& o) const { return coords == o.coords; }
    bool operator<(const LatticeVector& o) const { return coords < o.coords; }
};

struct RationalLatticeVector {
    LatticePtr lattice;
    RatVec coords;

    bool operator==(const RationalLatticeVector& o) const { return coords == o.coords; }
};

LatticeVector lattice_vector(const LatticePtr& l, IntVec coords);
RationalLatticeVector rational_lattice_vector(const LatticePtr& l, RatVec coords);
RationalLatticeVector to_rational(const LatticeVector& v);

Integer inner_product(const LatticeVector& a, const LatticeVector& b);
Rational inner_product(const RationalLatticeVector& a, const RationalLatticeVector& b);
Rational inner_product(const LatticeVector& a, const RationalLatticeVector& b);
// Raw coordinate variants against an explicit lattice.
Integer inner_product(const IntegerLattice& l, const IntVec& a, const IntVec& b);
Rational inner_product(const IntegerLattice& l, const RatVec& a, const RatVec& b);

// Vector supported in one named block, from block-local coordinates.
LatticeVector embed_block_vector(const LatticePtr& l, const std::string& block, const IntVec& local);
RationalLatticeVector embed_block_vector(const LatticePtr& l, const std::string& block, const RatVec& local);
RatVec block_part(const RatVec& ambient, const LatticeBlock& b);

// A negative definite sublattice of an ambient lattice, stored through a
// saturated integral basis (a basis of rational span intersected with the
// ambient lattice, so root enumeration sees every ambient vector in the
// span).  Construction fails unless the restricted form is negative
// definite.
class NegativeDefiniteSublattice {
  public:
    static NegativeDefiniteSublattice from_span(const LatticePtr& ambient,
                                                const std::vector<RatVec>& spanning);
    static NegativeDefiniteSublattice orthogonal_complement(const LatticePtr& ambient,
                                                            const std::vector<RatVec>& xs);

    const LatticePtr& ambient() const { return ambient_; }
    int rank() const { return static_cast<int>(basis_.size()); }
    const std::vector<IntVec>& basis() const { return basis_; }
    const IntMatrix& gram() const { return gram_; }
    const QuadraticFormLDL& ldl() const { return ldl_; }

  private:
    NegativeDefiniteSublattice(LatticePtr ambient, std::vector<IntVec> basis);

    LatticePtr ambient_;
    std::vector<IntVec> basis_;
    IntMatrix gram_;
    QuadraticFormLDL ldl_;
};

// All ambient vectors of norm -2 in the sublattice's rational span, in
// canonical (lexicographic) order.  Exact bounded enumeration through the
// LDL data of the negated restricted Gram matrix.
std::vector<LatticeVector> enumerate_roots(const NegativeDefiniteSublattice& sub);

// The 240 norm -2 vectors of a named -E8 block, cached per block.
const std::vector<LatticeVector>& block_roots(const LatticePtr& l, const std::string& block);

// Block roots orthogonal to u (u supported in the block, ambient coords).
std::vector<LatticeVector> orthogonal_root_set(const LatticePtr& l, const std::string& block,
                                               const RationalLatticeVector& u);

// Rational vector supported in the named -E8 block whose orthogonal root set
// is exactly the parabolic subsystem spanned by the kept simple roots
// (1-based node indices).  Deterministic small-height search, verified
// exactly against all 240 block roots.  keep must be a proper subset.
RationalLatticeVector generic_orthogonal_vector(const LatticePtr& l, const std::string& block,
                                                const std::set<int>& keep);

}  // namespace k3g2
