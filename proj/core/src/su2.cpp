#include "k3g2/su2.hpp"

#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace k3g2 {

AntiUnitaryMap AntiUnitaryMap::identity(int conductor) {
    AntiUnitaryMap x;
    x.a = Cyclotomic::one(conductor);
    x.b = Cyclotomic::zero(conductor);
    x.c = Cyclotomic::zero(conductor);
    x.d = Cyclotomic::one(conductor);
    x.conj = 0;
    return x;
}

AntiUnitaryMap AntiUnitaryMap::linear(Cyclotomic a, Cyclotomic b, Cyclotomic c, Cyclotomic d) {
    AntiUnitaryMap x;
    x.a = std::move(a);
    x.b = std::move(b);
    x.c = std::move(c);
    x.d = std::move(d);
    x.conj = 0;
    return x;
}

bool AntiUnitaryMap::is_identity() const {
    return conj == 0 && a.is_rational() && d.is_rational() && a.rational_value() == 1 &&
           d.rational_value() == 1 && b.is_zero() && c.is_zero();
}

AntiUnitaryMap AntiUnitaryMap::embedded(int m) const {
    AntiUnitaryMap x;
    x.a = a.embedded(m);
    x.b = b.embedded(m);
    x.c = c.embedded(m);
    x.d = d.embedded(m);
    x.conj = conj;
    return x;
}

std::string AntiUnitaryMap::str() const {
    std::ostringstream os;
    os << "[[" << a.str() << ", " << b.str() << "], [" << c.str() << ", " << d.str() << "]]";
    if (conj) os << " . conj";
    return os.str();
}

namespace {

int common_conductor(const AntiUnitaryMap& x, const AntiUnitaryMap& y) {
    return static_cast<int>(std::lcm(x.conductor(), y.conductor()));
}

AntiUnitaryMap conj_matrix(const AntiUnitaryMap& x) {
    AntiUnitaryMap r = x;
    r.a = x.a.conj();
    r.b = x.b.conj();
    r.c = x.c.conj();
    r.d = x.d.conj();
    return r;
}

}  // namespace

AntiUnitaryMap compose(const AntiUnitaryMap& x0, const AntiUnitaryMap& y0) {
    int n = common_conductor(x0, y0);
    AntiUnitaryMap x = x0.embedded(n);
    AntiUnitaryMap y = y0.embedded(n);
    if (x.conj) y = conj_matrix(y);
    AntiUnitaryMap r;
    r.a = x.a * y.a + x.b * y.c;
    r.b = x.a * y.b + x.b * y.d;
    r.c = x.c * y.a + x.d * y.c;
    r.d = x.c * y.b + x.d * y.d;
    r.conj = x.conj ^ y.conj;
    return r;
}

AntiUnitaryMap inverse(const AntiUnitaryMap& x) {
    Cyclotomic det = x.a * x.d - x.b * x.c;
    if (det.is_zero()) throw std::domain_error("map is singular");
    Cyclotomic inv_det = det.inverse();
    AntiUnitaryMap m;
    m.a = x.d * inv_det;
    m.b = -x.b * inv_det;
    m.c = -x.c * inv_det;
    m.d = x.a * inv_det;
    m.conj = x.conj;
    if (x.conj) m = conj_matrix(m);
    return m;
}

AntiUnitaryMap power(const AntiUnitaryMap& x, long k) {
    if (k < 0) return power(inverse(x), -k);
    AntiUnitaryMap r = AntiUnitaryMap::identity(x.conductor());
    for (long i = 0; i < k; ++i) r = compose(r, x);
    return r;
}

bool equal_maps(const AntiUnitaryMap& x0, const AntiUnitaryMap& y0) {
    if (x0.conj != y0.conj) return false;
    int n = common_conductor(x0, y0);
    AntiUnitaryMap x = x0.embedded(n);
    AntiUnitaryMap y = y0.embedded(n);
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
}

Cyclotomic determinant(const AntiUnitaryMap& x) { return x.a * x.d - x.b * x.c; }

bool is_unitary(const AntiUnitaryMap& x) {
    // Rows of M are orthonormal under the Hermitian pairing.
    Cyclotomic one = Cyclotomic::one(x.conductor());
    return (x.a * x.a.conj() + x.b * x.b.conj()) == one &&
           (x.c * x.c.conj() + x.d * x.d.conj()) == one &&
           (x.a * x.c.conj() + x.b * x.d.conj()).is_zero();
}

int map_order(const AntiUnitaryMap& x, int bound) {
    AntiUnitaryMap y = x;
    for (int k = 1; k <= bound; ++k) {
        if (y.is_identity()) return k;
        y = compose(y, x);
    }
    throw std::runtime_error("map order exceeds bound");
}

namespace {

// Strict ordering for closure bookkeeping; operands must share a conductor.
struct MapKey {
    const AntiUnitaryMap* m;
};

bool operator<(const MapKey& x, const MapKey& y) {
    if (x.m->conj != y.m->conj) return x.m->conj < y.m->conj;
    int c;
    c = Cyclotomic::compare(x.m->a, y.m->a);
    if (c) return c < 0;
    c = Cyclotomic::compare(x.m->b, y.m->b);
    if (c) return c < 0;
    c = Cyclotomic::compare(x.m->c, y.m->c);
    if (c) return c < 0;
    c = Cyclotomic::compare(x.m->d, y.m->d);
    return c < 0;
}

}  // namespace

GroupClosure close_group(const std::vector<AntiUnitaryMap>& gens, std::size_t size_bound) {
    int n = 1;
    for (const auto& g : gens) n = static_cast<int>(std::lcm(n, g.conductor()));
    std::vector<AntiUnitaryMap> egens;
    for (const auto& g : gens) egens.push_back(g.embedded(n));

    GroupClosure out;
    // The index keys point into out.elements, so reserve up front: the
    // vector must never reallocate while keys are live.
    out.elements.reserve(size_bound);
    out.words.reserve(size_bound);
    out.elements.push_back(AntiUnitaryMap::identity(n));
    out.words.push_back({});
    std::map<MapKey, int> index;
    index[MapKey{&out.elements[0]}] = 0;

    for (std::size_t i = 0; i < out.elements.size(); ++i) {
        for (std::size_t g = 0; g < egens.size(); ++g) {
            AntiUnitaryMap next = compose(out.elements[i], egens[g]);
            MapKey key{&next};
            if (index.count(key)) continue;
            if (out.elements.size() >= size_bound) {
                throw std::runtime_error("group closure exceeded size bound");
            }
            out.elements.push_back(next);
            out.words.push_back(out.words[i]);
            out.words.back().push_back(static_cast<int>(g));
            index[MapKey{&out.elements.back()}] = static_cast<int>(out.elements.size() - 1);
        }
    }
    return out;
}

std::vector<AntiUnitaryMap> cyclic_generators(int n) {
    if (n < 1) throw std::invalid_argument("cyclic group order must be positive");
    AntiUnitaryMap g;
    g.a = Cyclotomic::root_power(n, 1);
    g.b = Cyclotomic::zero(n);
    g.c = Cyclotomic::zero(n);
    g.d = Cyclotomic::root_power(n, -1);
    g.conj = 0;
    return {g};
}

std::vector<AntiUnitaryMap> binary_dihedral_generators(int m) {
    if (m < 2) throw std::invalid_argument("binary dihedral parameter must be at least 2");
    int n = 2 * m;
    AntiUnitaryMap a;
    a.a = Cyclotomic::root_power(n, 1);
    a.b = Cyclotomic::zero(n);
    a.c = Cyclotomic::zero(n);
    a.d = Cyclotomic::root_power(n, -1);
    AntiUnitaryMap j;
    Cyclotomic z = Cyclotomic::zero(n);
    j.a = z;
    j.b = Cyclotomic::one(n);
    j.c = -Cyclotomic::one(n);
    j.d = z;
    return {a, j};
}

namespace {

// Image of the unit quaternion a + bi + cj + dk in SU(2).
AntiUnitaryMap quaternion_matrix(int conductor, const Cyclotomic& qa, const Cyclotomic& qb,
                                 const Cyclotomic& qc, const Cyclotomic& qd) {
    Cyclotomic i = Cyclotomic::imaginary_unit(conductor);
    AntiUnitaryMap m;
    m.a = qa + qb * i;
    m.b = qc + qd * i;
    m.c = -qc + qd * i;
    m.d = qa - qb * i;
    m.conj = 0;
    return m;
}

}  // namespace

std::vector<AntiUnitaryMap> binary_tetrahedral_generators() {
    const int n = 24;
    Cyclotomic h = Cyclotomic::from_rational(n, Rational(1, 2));
    Cyclotomic z = Cyclotomic::zero(n);
    // Quaternions i and (1 + i + j + k) / 2.
    AntiUnitaryMap qi = quaternion_matrix(n, z, Cyclotomic::one(n), z, z);
    AntiUnitaryMap u = quaternion_matrix(n, h, h, h, h);
    return {qi, u};
}

std::vector<AntiUnitaryMap> binary_octahedral_generators() {
    const int n = 24;
    auto gens = binary_tetrahedral_generators();
    AntiUnitaryMap s;
    s.a = Cyclotomic::root_power(n, 3);   // primitive 8th root
    s.b = Cyclotomic::zero(n);
    s.c = Cyclotomic::zero(n);
    s.d = Cyclotomic::root_power(n, -3);
    gens.push_back(s);
    return gens;
}

std::vector<AntiUnitaryMap> binary_icosahedral_generators() {
    const int n = 20;
    Cyclotomic half = Cyclotomic::from_rational(n, Rational(1, 2));
    Cyclotomic z = Cyclotomic::zero(n);
    Cyclotomic z5 = Cyclotomic::root_power(n, 4);    // primitive 5th root
    Cyclotomic z5i = Cyclotomic::root_power(n, -4);
    Cyclotomic phi = Cyclotomic::one(n) + z5 + z5i;  // golden ratio
    Cyclotomic phi_inv = z5 + z5i;                   // phi - 1
    // Quaternions (1 + i + j + k)/2 and (phi + phi^-1 i + j)/2.
    AntiUnitaryMap u = quaternion_matrix(n, half, half, half, half);
    AntiUnitaryMap v = quaternion_matrix(n, phi * half, phi_inv * half, half, z);
    return {u, v};
}

std::vector<AntiUnitaryMap> finite_subgroup_generators(const std::string& label) {
    if (label.size() < 2) throw std::invalid_argument("bad subgroup label: " + label);
    char fam = label[0];
    int k = std::stoi(label.substr(1));
    if (fam == 'A' && k >= 1) return cyclic_generators(k + 1);
    if (fam == 'D' && k >= 4) return binary_dihedral_generators(k - 2);
    if (fam == 'E' && k == 6) return binary_tetrahedral_generators();
    if (fam == 'E' && k == 7) return binary_octahedral_generators();
    if (fam == 'E' && k == 8) return binary_icosahedral_generators();
    throw std::invalid_argument("bad subgroup label: " + label);
}

long finite_subgroup_order(const std::string& label) {
    if (label.size() < 2) throw std::invalid_argument("bad subgroup label: " + label);
    char fam = label[0];
    int k = std::stoi(label.substr(1));
    if (fam == 'A' && k >= 1) return k + 1;
    if (fam == 'D' && k >= 4) return 4L * (k - 2);
    if (fam == 'E' && k == 6) return 24;
    if (fam == 'E' && k == 7) return 48;
    if (fam == 'E' && k == 8) return 120;
    throw std::invalid_argument("bad subgroup label: " + label);
}

AntiUnitaryMap tau_map(int which) {
    if (which == 1) {
        AntiUnitaryMap t = AntiUnitaryMap::identity(1);
        t.a = -t.a;
        return t;
    }
    if (which == 2) {
        AntiUnitaryMap t = AntiUnitaryMap::identity(1);
        t.a = -t.a;
        t.d = -t.d;
        t.conj = 1;
        return t;
    }
    if (which == 3) {
        Cyclotomic i = Cyclotomic::imaginary_unit(4);
        AntiUnitaryMap t;
        t.a = Cyclotomic::zero(4);
        t.b = -i;
        t.c = i;
        t.d = Cyclotomic::zero(4);
        t.conj = 1;
        return t;
    }
    throw std::invalid_argument("tau_map index must be 1, 2 or 3");
}

int conjugation_exponent(const AntiUnitaryMap& t, const AntiUnitaryMap& alpha, int n) {
    AntiUnitaryMap c = compose(compose(t, alpha), inverse(t));
    AntiUnitaryMap p = AntiUnitaryMap::identity(alpha.conductor());
    for (int e = 0; e < n; ++e) {
        if (equal_maps(c, p)) return e;
        p = compose(p, alpha);
    }
    throw std::runtime_error("conjugation does not map the generator to one of its powers");
}

std::vector<int> conjugation_action(const AntiUnitaryMap& t,
                                    const std::vector<AntiUnitaryMap>& elements) {
    AntiUnitaryMap tinv = inverse(t);
    std::vector<int> perm;
    perm.reserve(elements.size());
    for (size_t i = 0; i < elements.size(); ++i) {
        AntiUnitaryMap image = compose(compose(t, elements[i]), tinv);
        int found = -1;
        for (size_t j = 0; j < elements.size(); ++j) {
            if (equal_maps(image, elements[j])) {
                found = static_cast<int>(j);
                break;
            }
        }
        if (found < 0)
            throw std::domain_error("conjugation_action: the image of " + elements[i].str() +
                                    " is outside the group");
        perm.push_back(found);
    }
    return perm;
}

std::string induced_diagram_automorphism(int exponent, int n) {
    if (n < 1) throw std::invalid_argument("cyclic order must be positive");
    int e = ((exponent % n) + n) % n;
    if (e == 1 % n) return "trivial";
    if (e == (n - 1) % n) return n >= 3 ? "flip" : "trivial";
    throw std::invalid_argument("exponent is not +-1 modulo the cyclic order");
}

}  // namespace k3g2
