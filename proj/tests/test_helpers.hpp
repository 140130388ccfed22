#pragma once

// Test-side constructions that deliberately do not reuse library internals:
// Dynkin data is rebuilt here from explicit adjacency lists so that root
// system tests compare two independent routes.

#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "k3g2/lattice.hpp"
#include "k3g2/root_system.hpp"

namespace test_helpers {

// Edges of the simply laced diagrams on nodes 0..n-1.  A_n is a path; D_n is
// a path 0..n-3 with both n-2 and n-1 attached to n-3; E_n extends a path
// 0..n-2 by attaching node n-1 to node 2.
inline std::vector<std::pair<int, int>> diagram_edges(const std::string& label) {
    char family = label[0];
    int n = std::stoi(label.substr(1));
    std::vector<std::pair<int, int>> edges;
    if (family == 'A') {
        for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    } else if (family == 'D') {
        if (n < 4) throw std::invalid_argument("D needs at least 4 nodes");
        for (int i = 0; i + 1 <= n - 3; ++i) edges.push_back({i, i + 1});
        edges.push_back({n - 3, n - 2});
        edges.push_back({n - 3, n - 1});
    } else if (family == 'E') {
        if (n < 6 || n > 8) throw std::invalid_argument("E needs 6..8 nodes");
        for (int i = 0; i + 1 < n - 1; ++i) edges.push_back({i, i + 1});
        edges.push_back({2, n - 1});
    } else {
        throw std::invalid_argument("unknown family: " + label);
    }
    return edges;
}

// Negated Cartan matrix lattice (-2 diagonal, +1 across each edge).
inline k3g2::LatticePtr make_diagram_lattice(const std::string& label) {
    int n = std::stoi(label.substr(1));
    k3g2::IntMatrix g(n, n);
    for (int i = 0; i < n; ++i) g.at(i, i) = k3g2::Integer(-2);
    for (auto [i, j] : diagram_edges(label)) {
        g.at(i, j) = k3g2::Integer(1);
        g.at(j, i) = k3g2::Integer(1);
    }
    return k3g2::make_lattice(g, label);
}

// Reflection closure of the basis vectors: the full root system of the
// diagram lattice.
inline k3g2::RootSubsystem full_root_system(const k3g2::LatticePtr& l) {
    std::vector<k3g2::LatticeVector> seeds;
    for (int i = 0; i < l->rank(); ++i) {
        k3g2::IntVec e(l->rank(), k3g2::Integer(0));
        e[static_cast<size_t>(i)] = 1;
        seeds.push_back(k3g2::lattice_vector(l, e));
    }
    return k3g2::analyze_root_set(l, k3g2::reflection_closure(l, seeds));
}

// Number of roots of a simply laced diagram, from the classification.
inline int expected_root_count(const std::string& label) {
    char family = label[0];
    int n = std::stoi(label.substr(1));
    if (family == 'A') return n * (n + 1);
    if (family == 'D') return 2 * n * (n - 1);
    if (label == "E6") return 72;
    if (label == "E7") return 126;
    if (label == "E8") return 240;
    throw std::invalid_argument("unknown label: " + label);
}

// The matrix of the reflection in a norm -2 vector: x -> x + <x, a> a.
inline k3g2::IntMatrix reflection_matrix(const k3g2::LatticePtr& l, const k3g2::IntVec& a) {
    int n = l->rank();
    k3g2::IntMatrix m = k3g2::IntMatrix::identity(n);
    for (int j = 0; j < n; ++j) {
        k3g2::IntVec e(static_cast<size_t>(n), k3g2::Integer(0));
        e[static_cast<size_t>(j)] = 1;
        k3g2::Integer p = k3g2::inner_product(*l, e, a);
        for (int i = 0; i < n; ++i) m.at(i, j) += p * a[static_cast<size_t>(i)];
    }
    return m;
}

// An order-two diagram automorphism in component-local positions, derived
// combinatorially from the adjacency lists: locate the branch node (or use
// path reversal when there is none is not needed here), group its arms by
// length, and swap the first two arms of equal length node by node.
inline std::vector<int> arm_swap_involution(const std::vector<std::vector<int>>& adj) {
    int n = static_cast<int>(adj.size());
    int center = -1;
    for (int i = 0; i < n; ++i) {
        if (adj[static_cast<size_t>(i)].size() == 3) center = i;
    }
    if (center == -1) throw std::invalid_argument("no degree-three node");
    // Walk each arm away from the center.
    std::vector<std::vector<int>> arms;
    for (int start : adj[static_cast<size_t>(center)]) {
        std::vector<int> arm = {start};
        int prev = center;
        int cur = start;
        while (true) {
            int next = -1;
            for (int x : adj[static_cast<size_t>(cur)]) {
                if (x != prev) next = x;
            }
            if (next == -1 || adj[static_cast<size_t>(cur)].size() != 2) break;
            arm.push_back(next);
            prev = cur;
            cur = next;
        }
        arms.push_back(arm);
    }
    std::vector<int> sigma(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) sigma[static_cast<size_t>(i)] = i;
    for (size_t i = 0; i < arms.size(); ++i) {
        for (size_t j = i + 1; j < arms.size(); ++j) {
            if (arms[i].size() == arms[j].size()) {
                for (size_t k = 0; k < arms[i].size(); ++k) {
                    sigma[static_cast<size_t>(arms[i][k])] = arms[j][k];
                    sigma[static_cast<size_t>(arms[j][k])] = arms[i][k];
                }
                return sigma;
            }
        }
    }
    throw std::invalid_argument("no two arms of equal length");
}

// Deterministic small integers for randomized property checks.  The raw
// mt19937 sequence is fixed by the standard, so these values are identical
// on every platform.
class SmallRng {
  public:
    explicit SmallRng(unsigned seed) : gen_(seed) {}
    // Uniform-ish value in [lo, hi] (modulo bias is irrelevant for tests).
    int pick(int lo, int hi) {
        return lo + static_cast<int>(gen_() % static_cast<unsigned>(hi - lo + 1));
    }

  private:
    std::mt19937 gen_;
};

}  // namespace test_helpers
