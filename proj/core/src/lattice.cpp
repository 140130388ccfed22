#include "k3g2/lattice.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace k3g2 {

IntegerLattice::IntegerLattice(IntMatrix gram, std::vector<LatticeBlock> blocks)
    : gram_(std::move(gram)), blocks_(std::move(blocks)) {
    if (gram_.rows != gram_.cols) throw std::invalid_argument("gram matrix must be square");
    for (int i = 0; i < gram_.rows; ++i)
        for (int j = 0; j < i; ++j)
            if (gram_.at(i, j) != gram_.at(j, i)) throw std::invalid_argument("gram matrix must be symmetric");
    int covered = 0;
    for (const LatticeBlock& b : blocks_) {
        if (b.offset != covered) throw std::invalid_argument("lattice blocks must tile the rank in order");
        covered += b.size;
    }
    if (covered != gram_.rows) throw std::invalid_argument("lattice blocks must cover the rank");
    // no pairing across distinct blocks
    for (const LatticeBlock& b : blocks_)
        for (int i = b.offset; i < b.offset + b.size; ++i)
            for (int j = 0; j < gram_.rows; ++j)
                if ((j < b.offset || j >= b.offset + b.size) && gram_.at(i, j) != 0)
                    throw std::invalid_argument("gram matrix pairs distinct blocks");
}

const LatticeBlock& IntegerLattice::block(const std::string& name) const {
    for (const LatticeBlock& b : blocks_)
        if (b.name == name) return b;
    throw std::invalid_argument("unknown lattice block: " + name);
}

std::tuple<int, int, int> IntegerLattice::signature() const {
    return k3g2::signature(RatMatrix::from_int(gram_));
}

Integer IntegerLattice::determinant() const { return det(gram_); }

namespace {

IntMatrix hyperbolic_gram() {
    IntMatrix g(2, 2);
    g.at(0, 1) = 1;
    g.at(1, 0) = 1;
    return g;
}

IntMatrix minus_e8_gram() {
    // Bourbaki numbering: chain 1-3-4-5-6-7-8, node 2 attached to node 4.
    static const int edges[][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
    IntMatrix g(8, 8);
    for (int i = 0; i < 8; ++i) g.at(i, i) = -2;
    for (const auto& e : edges) {
        g.at(e[0] - 1, e[1] - 1) = 1;
        g.at(e[1] - 1, e[0] - 1) = 1;
    }
    return g;
}

void paste(IntMatrix& dst, const IntMatrix& src, int offset) {
    for (int i = 0; i < src.rows; ++i)
        for (int j = 0; j < src.cols; ++j) dst.at(offset + i, offset + j) = src.at(i, j);
}

}  // namespace

LatticePtr make_hyperbolic() {
    static LatticePtr p = std::make_shared<IntegerLattice>(
        hyperbolic_gram(), std::vector<LatticeBlock>{{"H1", 0, 2}});
    return p;
}

LatticePtr make_minus_e8() {
    static LatticePtr p = std::make_shared<IntegerLattice>(
        minus_e8_gram(), std::vector<LatticeBlock>{{"E8_1", 0, 8}});
    return p;
}

LatticePtr make_k3_lattice() {
    static LatticePtr p = [] {
        IntMatrix g(22, 22);
        IntMatrix h = hyperbolic_gram();
        IntMatrix e = minus_e8_gram();
        paste(g, h, 0);
        paste(g, h, 2);
        paste(g, h, 4);
        paste(g, e, 6);
        paste(g, e, 14);
        return std::make_shared<IntegerLattice>(
            std::move(g), std::vector<LatticeBlock>{
                              {"H1", 0, 2}, {"H2", 2, 2}, {"H3", 4, 2}, {"E8_1", 6, 8}, {"E8_2", 14, 8}});
    }();
    return p;
}

LatticePtr make_lattice(IntMatrix gram, const std::string& block_name) {
    int n = gram.rows;
    return std::make_shared<IntegerLattice>(std::move(gram),
                                            std::vector<LatticeBlock>{{block_name, 0, n}});
}

bool same_lattice(const LatticePtr& a, const LatticePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->gram() == b->gram();
}

static void require_same_lattice(const LatticePtr& a, const LatticePtr& b) {
    if (!same_lattice(a, b)) throw std::invalid_argument("vectors live in different lattices");
}

LatticeVector lattice_vector(const LatticePtr& l, IntVec coords) {
    if (static_cast<int>(coords.size()) != l->rank())
        throw std::invalid_argument("lattice vector has wrong length");
    return {l, std::move(coords)};
}

RationalLatticeVector rational_lattice_vector(const LatticePtr& l, RatVec coords) {
    if (static_cast<int>(coords.size()) != l->rank())
        throw std::invalid_argument("lattice vector has wrong length");
    return {l, std::move(coords)};
}

RationalLatticeVector to_rational(const LatticeVector& v) {
    return {v.lattice, to_rational(v.coords)};
}

Integer inner_product(const LatticeVector& a, const LatticeVector& b) {
    require_same_lattice(a.lattice, b.lattice);
    const IntMatrix& g = a.lattice->gram();
    Integer r = 0;
    for (int i = 0; i < g.rows; ++i) {
        if (a.coords[i] == 0) continue;
        Integer row = 0;
        for (int j = 0; j < g.cols; ++j)
            if (g.at(i, j) != 0) row += g.at(i, j) * b.coords[j];
        r += a.coords[i] * row;
    }
    return r;
}

Rational inner_product(const RationalLatticeVector& a, const RationalLatticeVector& b) {
    require_same_lattice(a.lattice, b.lattice);
    const IntMatrix& g = a.lattice->gram();
    Rational r = 0;
    for (int i = 0; i < g.rows; ++i) {
        if (a.coords[i] == 0) continue;
        Rational row = 0;
        for (int j = 0; j < g.cols; ++j)
            if (g.at(i, j) != 0) row += Rational(g.at(i, j)) * b.coords[j];
        r += a.coords[i] * row;
    }
    return r;
}

Rational inner_product(const LatticeVector& a, const RationalLatticeVector& b) {
    return inner_product(to_rational(a), b);
}

Integer inner_product(const IntegerLattice& l, const IntVec& a, const IntVec& b) {
    const IntMatrix& g = l.gram();
    if (a.size() != static_cast<std::size_t>(g.rows) || b.size() != static_cast<std::size_t>(g.cols))
        throw std::invalid_argument("lattice vector has wrong length");
    Integer r = 0;
    for (int i = 0; i < g.rows; ++i) {
        if (a[i] == 0) continue;
        Integer row = 0;
        for (int j = 0; j < g.cols; ++j)
            if (g.at(i, j) != 0) row += g.at(i, j) * b[j];
        r += a[i] * row;
    }
    return r;
}

Rational inner_product(const IntegerLattice& l, const RatVec& a, const RatVec& b) {
    const IntMatrix& g = l.gram();
    if (a.size() != static_cast<std::size_t>(g.rows) || b.size() != static_cast<std::size_t>(g.cols))
        throw std::invalid_argument("lattice vector has wrong length");
    Rational r = 0;
    for (int i = 0; i < g.rows; ++i) {
        if (a[i] == 0) continue;
        Rational row = 0;
        for (int j = 0; j < g.cols; ++j)
            if (g.at(i, j) != 0) row += Rational(g.at(i, j)) * b[j];
        r += a[i] * row;
    }
    return r;
}

LatticeVector embed_block_vector(const LatticePtr& l, const std::string& block, const IntVec& local) {
    const LatticeBlock& b = l->block(block);
    if (static_cast<int>(local.size()) != b.size)
        throw std::invalid_argument("block vector has wrong length");
    IntVec coords(l->rank(), Integer(0));
    for (int i = 0; i < b.size; ++i) coords[b.offset + i] = local[i];
    return {l, std::move(coords)};
}

RationalLatticeVector embed_block_vector(const LatticePtr& l, const std::string& block, const RatVec& local) {
    const LatticeBlock& b = l->block(block);
    if (static_cast<int>(local.size()) != b.size)
        throw std::invalid_argument("block vector has wrong length");
    RatVec coords(l->rank(), Rational(0));
    for (int i = 0; i < b.size; ++i) coords[b.offset + i] = local[i];
    return {l, std::move(coords)};
}

RatVec block_part(const RatVec& ambient, const LatticeBlock& b) {
    RatVec r(b.size, Rational(0));
    for (int i = 0; i < b.size; ++i) r[i] = ambient[b.offset + i];
    return r;
}

NegativeDefiniteSublattice::NegativeDefiniteSublattice(LatticePtr ambient, std::vector<IntVec> basis)
    : ambient_(std::move(ambient)), basis_(std::move(basis)) {
    int m = static_cast<int>(basis_.size());
    gram_ = IntMatrix(m, m);
    const IntMatrix& g = ambient_->gram();
    for (int i = 0; i < m; ++i) {
        IntVec gi = mat_apply(g, basis_[i]);
        for (int j = 0; j < m; ++j) {
            Integer s = 0;
            for (int k = 0; k < g.rows; ++k) s += basis_[j][k] * gi[k];
            gram_.at(i, j) = s;
        }
    }
    RatMatrix q(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) q.at(i, j) = Rational(-gram_.at(i, j));
    auto ldl = positive_definite_ldl(q);
    if (!ldl) throw std::domain_error("sublattice is not negative definite");
    ldl_ = *ldl;
}

NegativeDefiniteSublattice NegativeDefiniteSublattice::from_span(const LatticePtr& ambient,
                                                                 const std::vector<RatVec>& spanning) {
    int n = ambient->rank();
    // W = kernel of the spanning rows under the standard pairing; the span is
    // then the kernel of W^T, and clearing denominators of W^T makes the
    // integral kernel computation produce a saturated basis.
    RatMatrix s(static_cast<int>(spanning.size()), n);
    for (size_t i = 0; i < spanning.size(); ++i) {
        if (static_cast<int>(spanning[i].size()) != n)
            throw std::invalid_argument("spanning vector has wrong length");
        for (int j = 0; j < n; ++j) s.at(static_cast<int>(i), j) = spanning[i][j];
    }
    RatMatrix w = rational_kernel(s);
    IntMatrix wt(w.cols, n);
    for (int r = 0; r < w.cols; ++r) {
        Integer den = 1;
        for (int c = 0; c < n; ++c) den = lcm(den, w.at(c, r).get_den());
        for (int c = 0; c < n; ++c) {
            Rational scaled = w.at(c, r) * Rational(den);
            wt.at(r, c) = scaled.get_num();
        }
    }
    IntMatrix basis = integral_kernel(wt);
    std::vector<IntVec> rows;
    for (int k = 0; k < basis.cols; ++k) {
        IntVec v(n);
        for (int r = 0; r < n; ++r) v[r] = basis.at(r, k);
        rows.push_back(std::move(v));
    }
    return NegativeDefiniteSublattice(ambient, std::move(rows));
}

NegativeDefiniteSublattice NegativeDefiniteSublattice::orthogonal_complement(
    const LatticePtr& ambient, const std::vector<RatVec>& xs) {
    int n = ambient->rank();
    const IntMatrix& g = ambient->gram();
    IntMatrix pairing(static_cast<int>(xs.size()), n);
    for (size_t i = 0; i < xs.size(); ++i) {
        if (static_cast<int>(xs[i].size()) != n)
            throw std::invalid_argument("period vector has wrong length");
        RatVec row = mat_apply(g, xs[i]);  // g symmetric, row_j = x . e_j
        Integer den = 1;
        for (const Rational& q : row) den = lcm(den, q.get_den());
        for (int j = 0; j < n; ++j) {
            Rational scaled = row[j] * Rational(den);
            pairing.at(static_cast<int>(i), j) = scaled.get_num();
        }
    }
    IntMatrix basis = integral_kernel(pairing);
    std::vector<IntVec> rows;
    for (int k = 0; k < basis.cols; ++k) {
        IntVec v(n);
        for (int r = 0; r < n; ++r) v[r] = basis.at(r, k);
        rows.push_back(std::move(v));
    }
    return NegativeDefiniteSublattice(ambient, std::move(rows));
}

namespace {

struct RootEnumerator {
    const NegativeDefiniteSublattice& sub;
    int m;
    std::vector<long> x;
    std::vector<IntVec> found;

    explicit RootEnumerator(const NegativeDefiniteSublattice& s)
        : sub(s), m(s.rank()), x(static_cast<size_t>(s.rank()), 0) {}

    // level i counts down; remaining = 2 - sum of completed square terms
    void descend(int i, const Rational& remaining) {
        if (i < 0) {
            if (remaining == 0) {
                IntVec c(m);
                for (int k = 0; k < m; ++k) c[static_cast<size_t>(k)] = x[static_cast<size_t>(k)];
                found.push_back(std::move(c));
            }
            return;
        }
        const Rational& di = sub.ldl().d[i];
        Rational t(0);
        for (int j = i + 1; j < m; ++j) {
            const Rational& lij = sub.ldl().l.at(i, j);
            if (lij != 0) t += lij * Rational(x[static_cast<size_t>(j)]);
        }
        Rational rho = remaining / di;
        Integer u = isqrt(floor_q(rho)) + 1;
        Integer lo = ceil_q(Rational(-u) - t);
        Integer hi = floor_q(Rational(u) - t);
        for (Integer xi = lo; xi <= hi; ++xi) {
            Rational s = Rational(xi) + t;
            Rational term = di * s * s;
            if (term > remaining) continue;
            x[static_cast<size_t>(i)] = xi.get_si();
            descend(i - 1, remaining - term);
        }
    }
};

}  // namespace

std::vector<LatticeVector> enumerate_roots(const NegativeDefiniteSublattice& sub) {
    std::vector<LatticeVector> out;
    if (sub.rank() == 0) return out;
    RootEnumerator e(sub);
    e.descend(sub.rank() - 1, Rational(2));
    int n = sub.ambient()->rank();
    for (const IntVec& c : e.found) {
        IntVec v(n, Integer(0));
        for (int k = 0; k < sub.rank(); ++k) {
            if (c[k] == 0) continue;
            for (int r = 0; r < n; ++r) v[r] += c[k] * sub.basis()[k][r];
        }
        out.push_back({sub.ambient(), std::move(v)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

const std::vector<LatticeVector>& block_roots(const LatticePtr& l, const std::string& block) {
    static std::map<std::pair<const IntegerLattice*, std::string>, std::vector<LatticeVector>> cache;
    auto key = std::make_pair(l.get(), block);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const LatticeBlock& b = l->block(block);
    std::vector<RatVec> spanning;
    for (int i = 0; i < b.size; ++i) {
        RatVec e(l->rank(), Rational(0));
        e[b.offset + i] = 1;
        spanning.push_back(std::move(e));
    }
    auto sub = NegativeDefiniteSublattice::from_span(l, spanning);
    return cache.emplace(key, enumerate_roots(sub)).first->second;
}

std::vector<LatticeVector> orthogonal_root_set(const LatticePtr& l, const std::string& block,
                                               const RationalLatticeVector& u) {
    std::vector<LatticeVector> out;
    for (const LatticeVector& d : block_roots(l, block))
        if (inner_product(d, u) == 0) out.push_back(d);
    return out;
}

RationalLatticeVector generic_orthogonal_vector(const LatticePtr& l, const std::string& block,
                                                const std::set<int>& keep) {
    const LatticeBlock& b = l->block(block);
    for (int i : keep)
        if (i < 1 || i > b.size) throw std::invalid_argument("keep index out of range");
    if (static_cast<int>(keep.size()) >= b.size)
        throw std::invalid_argument("keep set must be a proper subset of the block nodes");

    // The kept simple roots are standard basis vectors of the block, so the
    // parabolic subsystem they span is exactly the set of block roots
    // supported on the kept coordinates.
    const IntMatrix& g = l->gram();
    RatMatrix rows(static_cast<int>(keep.size()), b.size);
    int r = 0;
    for (int i : keep) {
        for (int j = 0; j < b.size; ++j) rows.at(r, j) = Rational(g.at(b.offset + i - 1, b.offset + j));
        ++r;
    }
    RatMatrix kernel = rational_kernel(rows);

    // primitive integer generators of the orthogonal complement
    std::vector<IntVec> w;
    for (int k = 0; k < kernel.cols; ++k) {
        Integer den = 1;
        for (int c = 0; c < b.size; ++c) den = lcm(den, kernel.at(c, k).get_den());
        IntVec v(b.size);
        Integer content = 0;
        for (int c = 0; c < b.size; ++c) {
            Rational scaled = kernel.at(c, k) * Rational(den);
            v[c] = scaled.get_num();
            content = gcd(content, v[c]);
        }
        if (content > 1)
            for (Integer& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
        w.push_back(std::move(v));
    }

    const std::vector<LatticeVector>& roots = block_roots(l, block);
    auto in_parabolic = [&](const LatticeVector& d) {
        for (int j = 0; j < b.size; ++j) {
            if (d.coords[b.offset + j] == 0) continue;
            if (keep.find(j + 1) == keep.end()) return false;
        }
        return true;
    };

    // u_t = sum_j t^j w_j; for every root outside the parabolic subsystem the
    // pairing is a nonzero polynomial in t, so small t succeeds.
    long bound = 2000;
    for (int pass = 0; pass < 2; ++pass) {
        for (long t = 1; t <= bound; ++t) {
            RatVec u(b.size, Rational(0));
            Integer tp = 1;
            for (const IntVec& wj : w) {
                for (int c = 0; c < b.size; ++c) u[c] += Rational(tp * wj[c]);
                tp *= t;
            }
            RationalLatticeVector cand = embed_block_vector(l, block, u);
            bool ok = true;
            for (const LatticeVector& d : roots) {
                bool orthogonal = inner_product(d, cand) == 0;
                if (orthogonal != in_parabolic(d)) { ok = false; break; }
            }
            if (ok) return cand;
        }
        bound *= 10;  // widen once before giving up
    }
    throw std::runtime_error("generic orthogonal vector search exhausted its bound");
}

}  // namespace k3g2
