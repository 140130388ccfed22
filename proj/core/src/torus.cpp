#include "k3g2/torus.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

namespace k3g2 {

namespace {

Rational frac(const Rational& q) { return q - Rational(floor_q(q)); }

void require_signed_permutation(const IntMatrix& a) {
    if (a.rows != 3 || a.cols != 3) throw std::invalid_argument("torus matrix must be 3x3");
    for (int i = 0; i < 3; ++i) {
        int row_hits = 0, col_hits = 0;
        for (int j = 0; j < 3; ++j) {
            const Integer& r = a.at(i, j);
            const Integer& c = a.at(j, i);
            if (r != 0) {
                if (r != 1 && r != -1) throw std::invalid_argument("torus matrix entries must be 0 or +-1");
                ++row_hits;
            }
            if (c != 0) ++col_hits;
        }
        if (row_hits != 1 || col_hits != 1)
            throw std::invalid_argument("torus matrix must be a signed permutation");
    }
}

}  // namespace

bool AffineTorusIsometry::is_identity() const {
    if (!a.is_identity()) return false;
    for (const auto& x : v) {
        if (x != 0) return false;
    }
    return true;
}

std::string AffineTorusIsometry::str() const {
    std::ostringstream os;
    os << "t -> A t + (";
    for (int i = 0; i < 3; ++i) {
        if (i) os << ", ";
        os << to_string(v[i]);
    }
    os << "), A rows";
    for (int i = 0; i < 3; ++i) {
        os << " (";
        for (int j = 0; j < 3; ++j) {
            if (j) os << ",";
            os << a.at(i, j).get_str();
        }
        os << ")";
    }
    return os.str();
}

AffineTorusIsometry make_affine(IntMatrix a, RatVec v) {
    require_signed_permutation(a);
    if (v.size() != 3) throw std::invalid_argument("translation must have 3 entries");
    for (auto& x : v) x = frac(x);
    return AffineTorusIsometry{std::move(a), std::move(v)};
}

AffineTorusIsometry compose(const AffineTorusIsometry& x, const AffineTorusIsometry& y) {
    IntMatrix a = mul(x.a, y.a);
    RatVec v = mat_apply(x.a, y.v);
    for (int i = 0; i < 3; ++i) v[i] = frac(v[i] + x.v[i]);
    return AffineTorusIsometry{std::move(a), std::move(v)};
}

AffineTorusIsometry inverse(const AffineTorusIsometry& x) {
    // A^-1 = A^T for signed permutations.
    IntMatrix ai = transpose(x.a);
    RatVec v = mat_apply(ai, x.v);
    for (auto& c : v) c = frac(-c);
    return AffineTorusIsometry{std::move(ai), std::move(v)};
}

bool operator==(const AffineTorusIsometry& x, const AffineTorusIsometry& y) {
    return x.a == y.a && x.v == y.v;
}

int affine_order(const AffineTorusIsometry& x, int bound) {
    AffineTorusIsometry y = x;
    for (int k = 1; k <= bound; ++k) {
        if (y.is_identity()) return k;
        y = compose(y, x);
    }
    throw std::runtime_error("torus isometry order exceeds bound");
}

AffineGroupClosure close_affine_group(const std::vector<AffineTorusIsometry>& gens,
                                      std::size_t size_bound) {
    AffineGroupClosure out;
    out.elements.push_back(make_affine(IntMatrix::identity(3), RatVec(3, Rational(0))));
    out.words.push_back({});
    auto key = [](const AffineTorusIsometry& g) {
        std::pair<std::vector<Integer>, RatVec> k{g.a.a, g.v};
        return k;
    };
    std::map<std::pair<std::vector<Integer>, RatVec>, int> index;
    index[key(out.elements[0])] = 0;
    for (std::size_t i = 0; i < out.elements.size(); ++i) {
        for (std::size_t g = 0; g < gens.size(); ++g) {
            AffineTorusIsometry next = compose(out.elements[i], gens[g]);
            auto k = key(next);
            if (index.count(k)) continue;
            if (out.elements.size() >= size_bound) {
                throw std::runtime_error("torus group closure exceeded size bound");
            }
            index[k] = static_cast<int>(out.elements.size());
            out.elements.push_back(std::move(next));
            out.words.push_back(out.words[i]);
            out.words.back().push_back(static_cast<int>(g));
        }
    }
    return out;
}

int find_element(const AffineGroupClosure& closure, const AffineTorusIsometry& x) {
    for (std::size_t i = 0; i < closure.elements.size(); ++i) {
        if (closure.elements[i] == x) return static_cast<int>(i);
    }
    return -1;
}

FreenessResult is_free_action(const std::vector<AffineTorusIsometry>& elements) {
    FreenessResult r;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const auto& g = elements[i];
        if (g.is_identity()) continue;
        // Fixed point: (A - I) t == -v  (mod Z^3).
        IntMatrix m = g.a;
        for (int k = 0; k < 3; ++k) m.at(k, k) -= 1;
        RatVec b(3);
        for (int k = 0; k < 3; ++k) b[k] = -g.v[k];
        CongruenceSolution sol = solve_affine_congruence(m, b);
        if (sol.solvable) {
            r.free = false;
            r.witness_index = static_cast<int>(i);
            r.fixed_point = sol.witness;
            for (auto& c : r.fixed_point) c = frac(c);
            return r;
        }
    }
    return r;
}

AffineTorusIsometry torus_generator(const std::string& name) {
    auto diag = [](int x, int y, int z) {
        IntMatrix m(3, 3);
        m.at(0, 0) = x;
        m.at(1, 1) = y;
        m.at(2, 2) = z;
        return m;
    };
    if (name == "beta") {
        return make_affine(diag(-1, -1, 1), {Rational(1, 2), Rational(0), Rational(1, 2)});
    }
    if (name == "gamma") {
        return make_affine(diag(-1, 1, -1), {Rational(0), Rational(1, 2), Rational(0)});
    }
    if (name == "beta_prime") {
        return make_affine(diag(-1, -1, 1), {Rational(0), Rational(3, 4), Rational(1, 2)});
    }
    if (name == "eta") {
        return make_affine(diag(1, -1, -1), {Rational(1, 4), Rational(1, 4), Rational(0)});
    }
    throw std::invalid_argument("unknown torus generator: " + name);
}

std::vector<AffineTorusIsometry> family_torus_generators(int family) {
    if (family == 1) return {torus_generator("beta"), torus_generator("gamma")};
    if (family == 2) return {torus_generator("beta_prime"), torus_generator("eta")};
    throw std::invalid_argument("action family must be 1 or 2");
}

RatMatrix representation_on_one_forms(const AffineTorusIsometry& g) {
    // Pull-back of dx_i is sum_j A_ij dx_j, so coefficient columns transform
    // by A^T.
    return RatMatrix::from_int(transpose(g.a));
}

RatMatrix representation_on_two_forms(const AffineTorusIsometry& g) {
    // Basis dx1^dx2, dx1^dx3, dx2^dx3: pairs (0,1), (0,2), (1,2).
    static const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    IntMatrix lam(3, 3);
    for (int p = 0; p < 3; ++p) {
        int i = pairs[p][0], j = pairs[p][1];
        for (int q = 0; q < 3; ++q) {
            int k = pairs[q][0], l = pairs[q][1];
            // Coefficient of dx_k^dx_l in (pullback dx_i)^(pullback dx_j).
            lam.at(p, q) = g.a.at(i, k) * g.a.at(j, l) - g.a.at(i, l) * g.a.at(j, k);
        }
    }
    return RatMatrix::from_int(transpose(lam));
}

RatMatrix representation_on_volume(const AffineTorusIsometry& g) {
    RatMatrix m(1, 1);
    m.at(0, 0) = Rational(det(g.a));
    return m;
}

int invariant_dimension(const std::vector<RatMatrix>& reps) {
    if (reps.empty()) throw std::invalid_argument("no representation matrices given");
    int n = reps[0].rows;
    for (const auto& m : reps) {
        if (m.rows != n || m.cols != n) throw std::invalid_argument("representation size mismatch");
    }
    // Averaging projector.
    RatMatrix avg(n, n);
    for (const auto& m : reps) avg = add(avg, m);
    avg = scale(avg, Rational(1, static_cast<long>(reps.size())));
    // The average over a group is idempotent; catch misuse early.
    if (!(mul(avg, avg) == avg)) {
        throw std::invalid_argument("representation list is not closed (projector not idempotent)");
    }
    int dim_avg = rank(avg);

    // Common kernel of rep(g) - I, stacked.
    RatMatrix stacked(n * static_cast<int>(reps.size()), n);
    for (std::size_t g = 0; g < reps.size(); ++g) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                Rational x = reps[g].at(i, j);
                if (i == j) x -= 1;
                stacked.at(static_cast<int>(g) * n + i, j) = x;
            }
        }
    }
    int dim_ker = rational_kernel(stacked).cols;
    if (dim_avg != dim_ker) {
        throw std::logic_error("invariant dimension methods disagree");
    }
    return dim_avg;
}

}  // namespace k3g2
