#include "k3g2/root_system.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace k3g2 {

namespace {

// G*d for fast pairings: d1.(G*d2) is a plain dot product.
IntVec gram_image(const IntegerLattice& l, const IntVec& d) {
    return mat_apply(l.gram(), d);
}

Integer dot(const IntVec& a, const IntVec& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::string vec_str(const IntVec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    os << ")";
    return os.str();
}

void require_root_norm(const IntegerLattice& l, const IntVec& d) {
    if (inner_product(l, d, d) != -2) {
        throw std::invalid_argument("root vector " + vec_str(d) + " does not have norm -2");
    }
}

// s_a(b) = b + (a.b) a  for a of norm -2 (ga = G*a precomputed).
IntVec reflect(const IntVec& ga, const IntVec& a, const IntVec& b) {
    Integer c = dot(ga, b);
    IntVec out = b;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * a[i];
    return out;
}

std::vector<LatticeVector> to_lattice_vectors(const LatticePtr& l, const std::set<IntVec>& coords) {
    std::vector<LatticeVector> out;
    out.reserve(coords.size());
    for (const auto& c : coords) out.push_back(LatticeVector{l, c});
    return out;
}

}  // namespace

std::vector<LatticeVector> reflection_closure(const LatticePtr& l,
                                              const std::vector<LatticeVector>& seeds) {
    std::vector<IntVec> list;
    std::vector<IntVec> glist;
    std::set<IntVec> seen;
    for (const auto& s : seeds) {
        if (!same_lattice(s.lattice, l)) throw std::invalid_argument("seed from a different lattice");
        require_root_norm(*l, s.coords);
        if (seen.insert(s.coords).second) {
            list.push_back(s.coords);
            glist.push_back(gram_image(*l, s.coords));
        }
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
        for (std::size_t j = 0; j <= i && j < list.size(); ++j) {
            for (int dir = 0; dir < 2; ++dir) {
                std::size_t p = dir ? j : i;
                std::size_t q = dir ? i : j;
                IntVec r = reflect(glist[p], list[p], list[q]);
                if (seen.insert(r).second) {
                    list.push_back(r);
                    glist.push_back(gram_image(*l, r));
                    if (list.size() > 5000) {
                        throw std::runtime_error(
                            "reflection closure exceeded 5000 vectors; "
                            "the seeds do not span a definite subspace");
                    }
                }
            }
        }
    }
    return to_lattice_vectors(l, seen);
}

RootSubsystem extract_simple_roots(const LatticePtr& l, std::vector<LatticeVector> roots) {
    RootSubsystem sys;
    sys.lattice = l;
    std::set<IntVec> seen;
    std::vector<IntVec> list;
    std::vector<IntVec> glist;
    for (const auto& r : roots) {
        if (!same_lattice(r.lattice, l)) throw std::invalid_argument("root from a different lattice");
        require_root_norm(*l, r.coords);
        if (seen.insert(r.coords).second) list.push_back(r.coords);
    }
    sys.roots = to_lattice_vectors(l, seen);
    if (list.empty()) return sys;

    glist.reserve(list.size());
    for (const auto& d : list) glist.push_back(gram_image(*l, d));

    for (const auto& d : list) {
        IntVec neg = negate(d);
        if (!seen.count(neg)) {
            throw std::invalid_argument("root set is not closed under negation: missing " +
                                        vec_str(neg));
        }
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
        for (std::size_t j = 0; j < list.size(); ++j) {
            IntVec r = reflect(glist[i], list[i], list[j]);
            if (!seen.count(r)) {
                throw std::invalid_argument("root set is not reflection closed: s_" +
                                            vec_str(list[i]) + "(" + vec_str(list[j]) + ") = " +
                                            vec_str(r) + " is missing");
            }
        }
    }

    // Generic functional: weights 1, t, t^2, ... must give every root a
    // nonzero value.  t runs through 10, 11, 12, ...; some t below
    // 10 + 2 * |roots| * dim always works since each root kills at most
    // dim - 1 values of t.
    std::size_t n = l->rank();
    std::vector<IntVec> positives;
    bool found = false;
    long t_limit = 10 + 2 * static_cast<long>(list.size()) * static_cast<long>(n) + 10;
    for (long t = 10; t <= t_limit && !found; ++t) {
        IntVec w(n);
        Integer p = 1;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = p;
            p *= t;
        }
        positives.clear();
        bool ok = true;
        for (const auto& d : list) {
            Integer v = dot(w, d);
            if (v == 0) {
                ok = false;
                break;
            }
            if (v > 0) positives.push_back(d);
        }
        if (ok) found = true;
    }
    if (!found) throw std::runtime_error("no generic functional found for root set");

    std::set<IntVec> pos_set(positives.begin(), positives.end());
    std::vector<IntVec> simples;
    for (const auto& d : positives) {
        bool decomposable = false;
        for (const auto& a : positives) {
            if (a == d) continue;
            IntVec diff(d.size());
            for (std::size_t i = 0; i < d.size(); ++i) diff[i] = d[i] - a[i];
            if (pos_set.count(diff)) {
                decomposable = true;
                break;
            }
        }
        if (!decomposable) simples.push_back(d);
    }
    std::sort(simples.begin(), simples.end());
    for (const auto& s : simples) sys.simple_roots.push_back(LatticeVector{l, s});
    return sys;
}

std::vector<DynkinComponent> classify_components(const RootSubsystem& sys) {
    const auto& simples = sys.simple_roots;
    std::size_t m = simples.size();
    std::vector<std::vector<int>> adj(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            Integer p = inner_product(*sys.lattice, simples[i].coords, simples[j].coords);
            if (p == 1) {
                adj[i].push_back(static_cast<int>(j));
                adj[j].push_back(static_cast<int>(i));
            } else if (p != 0) {
                throw std::invalid_argument(
                    "simple roots " + vec_str(simples[i].coords) + " and " +
                    vec_str(simples[j].coords) + " pair to " + p.get_str() +
                    "; a simple system pairs to 0 or 1");
            }
        }
    }

    std::vector<int> comp_of(m, -1);
    std::vector<DynkinComponent> comps;
    for (std::size_t start = 0; start < m; ++start) {
        if (comp_of[start] != -1) continue;
        DynkinComponent c;
        std::vector<int> stack{static_cast<int>(start)};
        comp_of[start] = static_cast<int>(comps.size());
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            c.simple_indices.push_back(v);
            for (int w : adj[v]) {
                if (comp_of[w] == -1) {
                    comp_of[w] = static_cast<int>(comps.size());
                    stack.push_back(w);
                }
            }
        }
        std::sort(c.simple_indices.begin(), c.simple_indices.end());
        c.node_count = static_cast<int>(c.simple_indices.size());

        int edges = 0;
        std::vector<int> degree(c.simple_indices.size(), 0);
        for (std::size_t a = 0; a < c.simple_indices.size(); ++a) {
            degree[a] = static_cast<int>(adj[c.simple_indices[a]].size());
            edges += degree[a];
        }
        edges /= 2;
        if (edges != c.node_count - 1) {
            throw std::invalid_argument("simple system component contains a cycle");
        }

        int branch = -1;
        int max_deg = 0;
        for (std::size_t a = 0; a < degree.size(); ++a) {
            max_deg = std::max(max_deg, degree[a]);
            if (degree[a] == 3) branch = static_cast<int>(a);
        }
        if (max_deg <= 2) {
            c.label = "A" + std::to_string(c.node_count);
        } else if (max_deg == 3 &&
                   std::count(degree.begin(), degree.end(), 3) == 1) {
            // Arm lengths from the unique branch node.
            std::vector<int> arms;
            int bnode = c.simple_indices[branch];
            for (int w : adj[bnode]) {
                int len = 1;
                int prev = bnode;
                int cur = w;
                while (true) {
                    int next = -1;
                    for (int x : adj[cur]) {
                        if (x != prev) next = x;
                    }
                    if (next == -1) break;
                    prev = cur;
                    cur = next;
                    ++len;
                }
                arms.push_back(len);
            }
            std::sort(arms.begin(), arms.end());
            if (arms[0] == 1 && arms[1] == 1) {
                c.label = "D" + std::to_string(c.node_count);
            } else if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) {
                c.label = "E" + std::to_string(c.node_count);
            } else {
                throw std::invalid_argument("simple system component is not an ADE diagram");
            }
        } else {
            throw std::invalid_argument("simple system component is not an ADE diagram");
        }
        comps.push_back(std::move(c));
    }
    return comps;
}

RootSubsystem analyze_root_set(const LatticePtr& l, std::vector<LatticeVector> roots) {
    RootSubsystem sys = extract_simple_roots(l, std::move(roots));
    sys.components = classify_components(sys);
    return sys;
}

std::vector<LatticeVector> component_roots(const RootSubsystem& sys, const DynkinComponent& comp) {
    std::vector<LatticeVector> seeds;
    for (int i : comp.simple_indices) seeds.push_back(sys.simple_roots[i]);
    return reflection_closure(sys.lattice, seeds);
}

std::vector<std::vector<int>> component_adjacency(const RootSubsystem& sys,
                                                  const DynkinComponent& comp) {
    std::size_t r = comp.simple_indices.size();
    std::vector<std::vector<int>> adj(r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i + 1; j < r; ++j) {
            Integer p = inner_product(*sys.lattice, sys.simple_roots[comp.simple_indices[i]].coords,
                                      sys.simple_roots[comp.simple_indices[j]].coords);
            if (p == 1) {
                adj[i].push_back(static_cast<int>(j));
                adj[j].push_back(static_cast<int>(i));
            }
        }
    }
    return adj;
}

std::vector<int> a_type_flip(const RootSubsystem& sys, const DynkinComponent& comp) {
    auto adj = component_adjacency(sys, comp);
    std::size_t r = adj.size();
    if (r == 1) return {0};
    for (const auto& nb : adj) {
        if (nb.size() > 2) throw std::invalid_argument("component is not a path");
    }
    int start = -1;
    for (std::size_t i = 0; i < r; ++i) {
        if (adj[i].size() == 1) {
            start = static_cast<int>(i);
            break;
        }
    }
    if (start == -1) throw std::invalid_argument("component is not a path");
    std::vector<int> order{start};
    int prev = -1;
    int cur = start;
    while (order.size() < r) {
        int next = -1;
        for (int x : adj[cur]) {
            if (x != prev) next = x;
        }
        if (next == -1) throw std::invalid_argument("component is not a path");
        prev = cur;
        cur = next;
        order.push_back(cur);
    }
    std::vector<int> flip(r);
    for (std::size_t k = 0; k < r; ++k) flip[order[k]] = order[r - 1 - k];
    return flip;
}

std::string GaugeGroupReport::str() const {
    std::ostringstream os;
    if (abelian_rank > 0) os << "U(1)^" << abelian_rank;
    for (const auto& f : factors) {
        if (os.tellp() > 0) os << " x ";
        os << f;
    }
    if (os.tellp() == 0) os << "trivial";
    return os.str();
}

GaugeGroupReport gauge_group(const std::vector<DynkinComponent>& components) {
    GaugeGroupReport rep;
    for (const auto& c : components) {
        rep.factors.push_back(c.label);
        rep.total_rank += c.node_count;
    }
    if (rep.total_rank > 16) {
        throw std::invalid_argument("gauge rank " + std::to_string(rep.total_rank) +
                                    " exceeds 16, the rank of the frame lattice");
    }
    rep.abelian_rank = 16 - rep.total_rank;
    return rep;
}

namespace {

// Coordinates of d in the basis of component simple roots, via the pairing
// with the simples and the inverse component Gram matrix.
RatVec simple_coordinates(const RootSubsystem& sys, const std::vector<IntVec>& simples,
                          const RatMatrix& gram_inv, const IntVec& d) {
    std::size_t r = simples.size();
    RatVec p(r);
    for (std::size_t i = 0; i < r; ++i) {
        p[i] = Rational(inner_product(*sys.lattice, simples[i], d));
    }
    return mat_apply(gram_inv, p);
}

struct FoldData {
    std::vector<RatVec> projections;  // distinct nonzero projected roots
    std::vector<Rational> norms;      // |projection norm|, parallel
};

}  // namespace

std::string fold_by_automorphism(const RootSubsystem& sys, const DynkinComponent& comp,
                                 const std::vector<int>& sigma) {
    std::size_t r = comp.simple_indices.size();
    if (sigma.size() != r) throw std::invalid_argument("automorphism size does not match component");
    std::vector<bool> hit(r, false);
    for (int s : sigma) {
        if (s < 0 || static_cast<std::size_t>(s) >= r || hit[s]) {
            throw std::invalid_argument("automorphism is not a permutation of the nodes");
        }
        hit[s] = true;
    }

    std::vector<IntVec> simples;
    for (int i : comp.simple_indices) simples.push_back(sys.simple_roots[i].coords);

    // sigma must preserve the diagram: pairings are permuted along with nodes.
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            Integer a = inner_product(*sys.lattice, simples[i], simples[j]);
            Integer b = inner_product(*sys.lattice, simples[sigma[i]], simples[sigma[j]]);
            if (a != b) throw std::invalid_argument("permutation is not a diagram automorphism");
        }
    }

    int order = 1;
    {
        std::vector<int> p(r);
        for (std::size_t i = 0; i < r; ++i) p[i] = static_cast<int>(i);
        for (int k = 1; k <= static_cast<int>(r) + 1; ++k) {
            std::vector<int> q(r);
            for (std::size_t i = 0; i < r; ++i) q[i] = sigma[p[i]];
            p = q;
            bool ident = true;
            for (std::size_t i = 0; i < r; ++i) {
                if (p[i] != static_cast<int>(i)) ident = false;
            }
            if (ident) {
                order = k;
                break;
            }
        }
    }

    RatMatrix gram(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            gram.at(i, j) = Rational(inner_product(*sys.lattice, simples[i], simples[j]));
        }
    }
    auto gram_inv = inverse(gram);
    if (!gram_inv) throw std::logic_error("component Gram matrix is singular");

    // T: span -> span sends simple i to simple sigma(i); the projection onto
    // the fixed subspace is the average of T^0..T^(order-1).
    auto apply_T = [&](const RatVec& coords) {
        RatVec out(coords.size(), Rational(0));
        for (std::size_t i = 0; i < r; ++i) out[sigma[i]] = coords[i];
        return out;
    };

    std::vector<LatticeVector> roots = component_roots(sys, comp);
    std::set<RatVec> seen;
    FoldData fold;
    std::size_t n = sys.lattice->rank();
    for (const auto& root : roots) {
        RatVec c = simple_coordinates(sys, simples, *gram_inv, root.coords);
        RatVec sum(r, Rational(0));
        RatVec cur = c;
        for (int k = 0; k < order; ++k) {
            for (std::size_t i = 0; i < r; ++i) sum[i] += cur[i];
            cur = apply_T(cur);
        }
        // Back to ambient coordinates: pi(root) = (1/order) sum_i sum[i] alpha_i.
        RatVec amb(n, Rational(0));
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                amb[j] += sum[i] * Rational(simples[i][j]) / Rational(order);
            }
        }
        bool zero = true;
        for (const auto& x : amb) {
            if (x != 0) zero = false;
        }
        if (zero) continue;
        if (!seen.insert(amb).second) continue;
        Rational norm = inner_product(*sys.lattice, amb, amb);
        if (norm >= 0) throw std::logic_error("projected root with non-negative norm");
        fold.projections.push_back(amb);
        fold.norms.push_back(-norm);
    }

    if (fold.projections.empty()) throw std::logic_error("folding produced an empty root set");

    RatMatrix span(fold.projections.size(), n);
    for (std::size_t i = 0; i < fold.projections.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) span.at(i, j) = fold.projections[i][j];
    }
    std::size_t rk = rank(span);
    std::size_t count = fold.projections.size();

    std::vector<Rational> lengths = fold.norms;
    std::sort(lengths.begin(), lengths.end());
    lengths.erase(std::unique(lengths.begin(), lengths.end()), lengths.end());

    auto count_norm = [&](const Rational& v) {
        std::size_t c = 0;
        for (const auto& x : fold.norms) {
            if (x == v) ++c;
        }
        return c;
    };

    std::string rs = std::to_string(rk);
    if (lengths.size() == 1) {
        if (count == rk * (rk + 1)) return "A" + rs;
        if (rk >= 4 && count == 2 * rk * (rk - 1)) return "D" + rs;
        if (rk == 6 && count == 72) return "E6";
        if (rk == 7 && count == 126) return "E7";
        if (rk == 8 && count == 240) return "E8";
        throw std::logic_error("unrecognized simply laced folded system");
    }
    if (lengths.size() == 2) {
        Rational ratio = lengths[1] / lengths[0];
        if (ratio == 2) {
            if (rk == 4 && count == 48) return "F4";
            if (rk == 2 && count == 8) return "C2";
            if (count == 2 * rk * rk) {
                if (count_norm(lengths[1]) == 2 * rk) return "C" + rs;
                if (count_norm(lengths[0]) == 2 * rk) return "B" + rs;
            }
            throw std::logic_error("unrecognized folded system with norm ratio 2");
        }
        if (ratio == 3 && rk == 2 && count == 12) return "G2";
        if (ratio == 4 && rk == 1 && count == 4) return "BC1";
        throw std::logic_error("unrecognized folded system with two root lengths");
    }
    if (lengths.size() == 3) {
        if (lengths[1] == 2 * lengths[0] && lengths[2] == 4 * lengths[0] &&
            count == 2 * rk * rk + 2 * rk) {
            return "BC" + rs;
        }
    }
    throw std::logic_error("unrecognized folded root system");
}

WeylDecomposition weyl_decompose(const RootSubsystem& sys, const DynkinComponent& comp,
                                 const IntMatrix& iso) {
    std::size_t n = static_cast<std::size_t>(sys.lattice->rank());
    if (iso.rows != static_cast<int>(n) || iso.cols != static_cast<int>(n)) {
        throw std::invalid_argument("isometry has the wrong size");
    }
    std::vector<IntVec> simples;
    for (int i : comp.simple_indices) simples.push_back(sys.simple_roots[i].coords);
    std::size_t r = simples.size();

    std::vector<LatticeVector> roots = component_roots(sys, comp);
    std::set<IntVec> root_set;
    for (const auto& d : roots) root_set.insert(d.coords);
    for (const auto& d : root_set) {
        IntVec img = mat_apply(iso, d);
        if (!root_set.count(img)) {
            throw std::invalid_argument("map does not preserve the component root set: image of " +
                                        vec_str(d) + " is " + vec_str(img));
        }
    }

    RatMatrix gram(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            gram.at(i, j) = Rational(inner_product(*sys.lattice, simples[i], simples[j]));
        }
    }
    auto gram_inv = inverse(gram);
    if (!gram_inv) throw std::logic_error("component Gram matrix is singular");

    // Positive roots: all simple coordinates >= 0.  Their sum is the unique
    // dominant regular vector the reflection walk steers back to.
    IntVec rho(n, Integer(0));
    for (const auto& d : root_set) {
        RatVec c = simple_coordinates(sys, simples, *gram_inv, d);
        bool pos = true;
        for (const auto& x : c) {
            if (x < 0) pos = false;
        }
        if (pos) {
            for (std::size_t j = 0; j < n; ++j) rho[j] += d[j];
        }
    }

    std::vector<IntVec> gsimples;
    for (const auto& s : simples) gsimples.push_back(mat_apply(sys.lattice->gram(), s));

    WeylDecomposition dec;
    IntVec q = mat_apply(iso, rho);
    for (int guard = 0; guard < 100000; ++guard) {
        int found = -1;
        for (std::size_t i = 0; i < r; ++i) {
            Integer p = dot(gsimples[i], q);
            if (p > 0) {
                found = static_cast<int>(i);
                break;
            }
            if (p == 0) throw std::logic_error("dominant walk hit a wall: vector is not regular");
        }
        if (found == -1) break;
        q = reflect(gsimples[found], simples[found], q);
        dec.word.push_back(found);
        if (guard == 99999) throw std::logic_error("dominant walk did not terminate");
    }
    if (q != rho) throw std::logic_error("dominant walk did not reach the positive chamber sum");

    // sigma = (word reflections, applied in order) o iso, restricted to simples.
    dec.sigma.assign(r, -1);
    for (std::size_t j = 0; j < r; ++j) {
        IntVec img = mat_apply(iso, simples[j]);
        for (int i : dec.word) img = reflect(gsimples[i], simples[i], img);
        int match = -1;
        for (std::size_t i = 0; i < r; ++i) {
            if (img == simples[i]) match = static_cast<int>(i);
        }
        if (match == -1) {
            throw std::logic_error("residual map does not permute the simple roots");
        }
        dec.sigma[j] = match;
    }
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) {
            Integer a = inner_product(*sys.lattice, simples[i], simples[j]);
            Integer b = inner_product(*sys.lattice, simples[dec.sigma[i]], simples[dec.sigma[j]]);
            if (a != b) throw std::logic_error("residual permutation is not a diagram automorphism");
        }
    }
    dec.trivial = true;
    for (std::size_t i = 0; i < r; ++i) {
        if (dec.sigma[i] != static_cast<int>(i)) dec.trivial = false;
    }
    return dec;
}

}  // namespace k3g2
