#include "qw/waring.hpp"

#include "qw/tightness.hpp"

#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qw {

namespace {

using Terms = std::vector<WaringTerm>;

Point zeros(int n) { return Point(n, AlgNum(0)); }

Point all_ones(int n) { return Point(n, AlgNum(1)); }

// The point a with a_i = value and zeros elsewhere.
Point unit_scaled(int n, int i, const AlgNum &value) {
    Point a = zeros(n);
    a[i] = value;
    return a;
}

// Expands lambda (base ± ... ± ...)^{2s}: every nonzero slot after the first
// takes both signs, the first one stays positive.
void add_sign_orbit(Terms &terms, const AlgNum &lambda, const Point &base) {
    std::vector<std::size_t> slots;
    for (std::size_t i = 0; i < base.size(); ++i)
        if (!base[i].is_zero())
            slots.push_back(i);
    if (slots.empty())
        throw Error(ErrorKind::OutOfRange, "sign orbit of the zero point");
    const std::size_t k = slots.size() - 1;
    for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
        Point a = base;
        for (std::size_t t = 0; t < k; ++t)
            if (mask & (1UL << t))
                a[slots[t + 1]] = -a[slots[t + 1]];
        terms.push_back({lambda, std::move(a)});
    }
}

// lambda sum_j x_j^{2s}
void add_coordinate_powers(Terms &terms, int n, const AlgNum &lambda) {
    for (int j = 0; j < n; ++j)
        terms.push_back({lambda, unit_scaled(n, j, AlgNum(1))});
}

// lambda sum_{j1<j2} (x_j1 ± x_j2)^{2s}
void add_pair_orbits(Terms &terms, int n, const AlgNum &lambda) {
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            Point p = zeros(n);
            p[a] = 1;
            p[b] = 1;
            add_sign_orbit(terms, lambda, p);
        }
}

// lambda sum_{j1<j2<j3} (x_j1 ± x_j2 ± x_j3)^{2s}
void add_triple_orbits(Terms &terms, int n, const AlgNum &lambda) {
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) {
                Point p = zeros(n);
                p[a] = 1;
                p[b] = 1;
                p[c] = 1;
                add_sign_orbit(terms, lambda, p);
            }
}

// Point of the linear form w u' + w^{-1} v' + h z' where u' = x1 - i x2,
// v' = x1 + i x2 and z' = x3.
Point uvz_point(const AlgNum &i, const AlgNum &w, const AlgNum &h) {
    const AlgNum wi = w.inv();
    return {w + wi, i * (wi - w), h};
}

TowerPtr golden_tower() {
    // phi^2 = phi + 1
    return adjoin(FieldTower::rationals(), "phi",
                  {AlgNum(-1), AlgNum(-1), AlgNum(1)},
                  {(1.0 + std::sqrt(5.0)) / 2.0, 0.0});
}

TowerPtr pinned(const TowerPtr &t, const std::string &name,
                const std::vector<AlgNum> &minpoly, std::complex<double> guess) {
    return adjoin(t, name, minpoly, polish_root(minpoly, guess));
}

Decomposition make(std::string name, std::string origin, int n, int s,
                   TowerPtr tower, AlgNum scale, Terms terms) {
    Decomposition d;
    d.name = std::move(name);
    d.origin = std::move(origin);
    d.n = n;
    d.s = s;
    d.tower = std::move(tower);
    d.scale = std::move(scale);
    d.terms = std::move(terms);
    return d;
}

// ---------------------------------------------------------------------------
// Fixed entries.

Decomposition lucas_q32() {
    Terms t;
    add_coordinate_powers(t, 3, AlgNum::rational(2, 3));
    add_sign_orbit(t, AlgNum::rational(1, 12), all_ones(3));
    return make("lucas_q32", "Lucas identity", 3, 2, FieldTower::rationals(),
                AlgNum(1), std::move(t));
}

Decomposition liouville_q42() {
    Terms t;
    add_pair_orbits(t, 4, AlgNum::rational(1, 6));
    return make("liouville_q42", "Liouville identity", 4, 2,
                FieldTower::rationals(), AlgNum(1), std::move(t));
}

Decomposition icosahedron_q32() {
    auto tower = golden_tower();
    const AlgNum phi = generator(tower, "phi");
    const AlgNum lambda = (AlgNum(6) * (phi + AlgNum(1))).inv();
    Terms t;
    for (int j = 0; j < 3; ++j) {
        Point p = zeros(3);
        p[j] = 1;
        p[(j + 2) % 3] = phi;
        add_sign_orbit(t, lambda, p);
    }
    return make("icosahedron_q32", "icosahedron vertices", 3, 2, tower,
                AlgNum(1), std::move(t));
}

Decomposition tight_q72() {
    Terms t;
    for (int j = 0; j < 7; ++j) {
        Point p = zeros(7);
        p[j] = 1;
        p[(j + 1) % 7] = 1;
        p[(j + 3) % 7] = 1;
        add_sign_orbit(t, AlgNum::rational(1, 12), p);
    }
    return make("tight_q72", "28 equiangular lines in dimension 7", 7, 2,
                FieldTower::rationals(), AlgNum(1), std::move(t));
}

Decomposition kempner_q43() {
    Terms t;
    add_coordinate_powers(t, 4, AlgNum::rational(8, 15));
    add_pair_orbits(t, 4, AlgNum::rational(1, 15));
    add_sign_orbit(t, AlgNum::rational(1, 120), all_ones(4));
    return make("kempner_q43", "Kempner identity", 4, 3,
                FieldTower::rationals(), AlgNum(1), std::move(t));
}

Decomposition reznick_q33() {
    auto tower = adjoin_sqrt(FieldTower::rationals(), "r3", AlgNum(3),
                             {std::sqrt(3.0), 0.0});
    const AlgNum r3 = generator(tower, "r3");
    Terms t;
    t.push_back({AlgNum::rational(14, 27), unit_scaled(3, 0, AlgNum(1))});
    for (int j = 1; j < 3; ++j)
        t.push_back({AlgNum::rational(7, 10), unit_scaled(3, j, AlgNum(1))});
    for (int j = 1; j < 3; ++j) {
        Point p = zeros(3);
        p[0] = 2;
        p[j] = r3;
        add_sign_orbit(t, AlgNum::rational(1, 540), p);
    }
    add_sign_orbit(t, AlgNum::rational(1, 540), {AlgNum(1), r3, r3});
    return make("reznick_q33", "Reznick: 11 points for q_3^3", 3, 3, tower,
                AlgNum(1), std::move(t));
}

Decomposition reznick_q34() {
    auto tower = golden_tower();
    const AlgNum phi = generator(tower, "phi");
    const AlgNum phi_inv = phi.inv();
    Terms t;
    for (int j = 0; j < 3; ++j) {
        Point p = zeros(3);
        p[j] = 1;
        p[(j + 2) % 3] = phi;
        add_sign_orbit(t, AlgNum(3) * phi_inv.pow(4), p);
    }
    for (int j = 0; j < 3; ++j) {
        Point p = zeros(3);
        p[j] = phi;
        p[(j + 2) % 3] = phi_inv;
        add_sign_orbit(t, AlgNum(1), p);
    }
    add_sign_orbit(t, AlgNum(1), all_ones(3));
    return make("reznick_q34", "Reznick: 16 points for q_3^4", 3, 4, tower,
                AlgNum(140), std::move(t));
}

Decomposition flavi_2441_q33() {
    auto tower = adjoin_root_of_unity(FieldTower::rationals(), 8, "zeta8");
    tower = adjoin_sqrt(tower, "r3", AlgNum(3), {std::sqrt(3.0), 0.0});
    const AlgNum z = generator(tower, "zeta8");
    const AlgNum r3 = generator(tower, "r3");
    const AlgNum i = z.pow(2);
    const AlgNum r2 = z - z.pow(3);
    Terms t;
    t.push_back({AlgNum::rational(14, 27), unit_scaled(3, 2, AlgNum(1))});
    for (int j = 0; j < 2; ++j)
        t.push_back({AlgNum::rational(7, 640), uvz_point(i, z.pow(2 * j), 0)});
    const AlgNum h1 = AlgNum(4) / r3;
    for (int j = 0; j < 4; ++j)
        t.push_back({AlgNum::rational(1, 1280), uvz_point(i, z.pow(2 * j), h1)});
    const AlgNum h2 = r2 / r3;
    for (int j = 0; j < 4; ++j)
        t.push_back(
            {AlgNum::rational(1, 160), uvz_point(i, z.pow(2 * j + 1), h2)});
    return make("flavi_2441_q33", "rotational orbits 2-4-4-1", 3, 3, tower,
                AlgNum(1), std::move(t));
}

Decomposition flavi_2333_q33() {
    auto tower = adjoin_root_of_unity(FieldTower::rationals(), 12, "zeta12");
    // alpha_1 is the largest root of z^3 - 3z^2 - 3z + 2, written by Cardano
    // as 1 + 2/w + w with w = ((3 + i sqrt 23)/2)^{1/3}.
    const std::complex<double> w =
        std::pow(std::complex<double>(1.5, std::sqrt(23.0) / 2.0), 1.0 / 3.0);
    const std::complex<double> alpha1_pin = 1.0 + 2.0 / w + w;
    tower = pinned(tower, "alpha1", {AlgNum(2), AlgNum(-3), AlgNum(-3), AlgNum(1)},
                   alpha1_pin);
    const AlgNum a1 = generator(tower, "alpha1");
    // The other two roots solve z^2 + (alpha1 - 3) z - 2/alpha1.
    tower = pinned(tower, "alpha2",
                   {a1 * a1 - AlgNum(3) * a1 - AlgNum(3), a1 - AlgNum(3), AlgNum(1)},
                   {-1.1451, 0.0});
    const AlgNum z = generator(tower, "zeta12");
    const AlgNum alpha1 = generator(tower, "alpha1");
    const AlgNum alpha2 = generator(tower, "alpha2");
    const AlgNum alpha3 = AlgNum(3) - alpha1 - alpha2;
    const AlgNum i = z.pow(3);
    const AlgNum tau3 = z.pow(4);
    Terms t;
    t.push_back({AlgNum::rational(-1, 20), {AlgNum(1), -i, AlgNum(0)}});
    t.push_back({AlgNum::rational(-1, 20), {AlgNum(1), i, AlgNum(0)}});
    for (const AlgNum &a : {alpha1, alpha2, alpha3}) {
        const AlgNum lambda = (AlgNum(19) * a.inv() - AlgNum(11) * a + AlgNum(36)) *
                              AlgNum::rational(1, 6210);
        for (int j = 0; j < 3; ++j)
            t.push_back({lambda, uvz_point(i, tau3.pow(j), a)});
    }
    return make("flavi_2333_q33", "rotational orbits 2-3-3-3", 3, 3, tower,
                AlgNum(1), std::move(t));
}

TowerPtr zeta20_tower() {
    return adjoin_root_of_unity(FieldTower::rationals(), 20, "zeta20");
}

// sqrt 5 inside Q(zeta_20).
AlgNum sqrt5_in(const AlgNum &z) {
    return AlgNum(1) + AlgNum(2) * (z.pow(4) + z.pow(16));
}

Decomposition flavi_5551_q34() {
    auto tower = zeta20_tower();
    const AlgNum z = generator(tower, "zeta20");
    const AlgNum i = z.pow(5);
    const AlgNum phi = (AlgNum(3) + sqrt5_in(z)) * AlgNum::rational(1, 2);
    const AlgNum phi_inv = phi.inv();
    Terms t;
    t.push_back({AlgNum::rational(15, 28), unit_scaled(3, 2, AlgNum(1))});
    const AlgNum l1 = phi_inv.pow(2) * AlgNum::rational(1, 3500);
    const AlgNum l3 = phi.pow(2) * AlgNum::rational(1, 3500);
    for (int j = 0; j < 5; ++j)
        t.push_back({l1, uvz_point(i, z.pow(4 * j), phi)});
    for (int j = 0; j < 5; ++j)
        t.push_back({AlgNum::rational(3, 3500),
                     uvz_point(i, z.pow(2 * (2 * j + 1)), AlgNum(1))});
    for (int j = 0; j < 5; ++j)
        t.push_back({l3, uvz_point(i, z.pow(4 * j), phi_inv)});
    return make("flavi_5551_q34", "rotational orbits 5-5-5-1", 3, 4, tower,
                AlgNum(1), std::move(t));
}

Decomposition e8_roots_q83() {
    Terms t;
    add_pair_orbits(t, 8, AlgNum::rational(1, 15));
    // (±1/2)^8 with an even number of minus signs, one per line.
    for (unsigned mask = 0; mask < 128; ++mask) {
        if (std::popcount(mask) % 2 != 0)
            continue;
        Point p(8, AlgNum::rational(1, 2));
        for (int b = 0; b < 7; ++b)
            if (mask & (1U << b))
                p[b + 1] = AlgNum::rational(-1, 2);
        t.push_back({AlgNum::rational(1, 15), std::move(p)});
    }
    return make("e8_roots_q83", "120 lines of the E8 root system", 8, 3,
                FieldTower::rationals(), AlgNum(1), std::move(t));
}

int parse_int(const std::string &text, const std::string &name) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != text.size())
        throw Error(ErrorKind::OutOfRange, "bad parameter '" + text + "' in " + name);
    return v;
}

int check_branch(int branch) {
    if (branch != 1 && branch != -1)
        throw Error(ErrorKind::OutOfRange, "branch must be +1 or -1");
    return branch;
}

} // namespace

// ---------------------------------------------------------------------------

VerifyResult verify(const Decomposition &dec) {
    if (dec.n < 1 || dec.s < 1)
        throw Error(ErrorKind::OutOfRange, "decomposition needs n, s >= 1");
    for (const auto &term : dec.terms)
        if (static_cast<int>(term.point.size()) != dec.n)
            throw Error(ErrorKind::DimensionMismatch,
                        "point length differs from n in " + dec.name);
    VerifyResult r;
    r.residual = q_power(dec.n, dec.s, false) * dec.scale;
    for (const auto &term : dec.terms)
        add_linear_power(r.residual, -term.coeff, term.point, 2 * dec.s);
    r.ok = r.residual.is_zero();
    return r;
}

Constants constants(int n, int s) {
    return {tight_size(n, s), tight_value(n, s), q_norm(n, s)};
}

AlgNum bombieri(const MultiPoly &f, const MultiPoly &g) {
    if (f.n_vars() != g.n_vars())
        throw Error(ErrorKind::DimensionMismatch, "bombieri: variable counts");
    const bool fz = f.is_zero(), gz = g.is_zero();
    if (!f.is_homogeneous() || !g.is_homogeneous() ||
        (!fz && !gz && f.degree() != g.degree()))
        throw Error(ErrorKind::DegreeMismatch,
                    "bombieri needs homogeneous forms of equal degree");
    AlgNum acc;
    for (const auto &[e, c] : f.terms()) {
        const AlgNum d = g.coeff(e);
        if (d.is_zero())
            continue;
        const Rational w(exponent_factorial(e), factorial(total_degree(e)));
        acc += c * d * AlgNum(w);
    }
    return acc;
}

CaliberReport caliber(const Decomposition &dec) {
    CaliberReport r;
    const AlgNum inv_c = dec.scale.inv();
    for (const auto &term : dec.terms) {
        AlgNum v = term.coeff * inv_c * dot(term.point, term.point).pow(dec.s);
        r.total += v;
        bool seen = false;
        for (const auto &d : r.distinct)
            if (d == v) {
                seen = true;
                break;
            }
        if (!seen)
            r.distinct.push_back(v);
        r.values.push_back(std::move(v));
    }
    r.distinct_count = r.distinct.size();
    r.expected_tight = tight_value(dec.n, dec.s);
    r.tight = Integer(static_cast<unsigned long>(dec.size())) ==
              tight_size(dec.n, dec.s);
    r.first_caliber = r.distinct_count == 1;
    return r;
}

// ---------------------------------------------------------------------------
// Families.

Decomposition gen_binary(int s) {
    if (s < 1)
        throw Error(ErrorKind::OutOfRange, "gen_binary needs s >= 1");
    const int order = 2 * (s + 1);
    const int m = std::lcm(4, order);
    auto tower = adjoin_root_of_unity(FieldTower::rationals(), m, "zeta");
    const AlgNum zeta = generator(tower, "zeta");
    const AlgNum i = zeta.pow(m / 4);
    const AlgNum root = zeta.pow(m / order); // primitive order-th root
    const AlgNum lambda(tight_value(2, s));
    Terms t;
    for (int j = 0; j <= s; ++j) {
        const AlgNum w = root.pow(j);
        const AlgNum wi = w.inv();
        const AlgNum c = (w + wi) * AlgNum::rational(1, 2);
        const AlgNum sn = (w - wi) / (AlgNum(2) * i);
        t.push_back({lambda, {c, sn}});
    }
    return make("gen_binary:" + std::to_string(s),
                "regular polygon on the unit circle", 2, s, tower, AlgNum(1),
                std::move(t));
}

Decomposition gen_stroud_q2(int n, int branch) {
    if (n < 3 || n == 8)
        throw Error(ErrorKind::UnsupportedN, "gen_stroud_q2 needs n >= 3, n != 8");
    check_branch(branch);
    const int r = 8 - n; // g^4 = r
    auto perfect_root = [](long v, int k) -> std::optional<long> {
        if (v <= 0)
            return std::nullopt;
        const long m = std::lround(std::pow(static_cast<double>(v), 1.0 / k));
        for (long c = std::max(1L, m - 1); c <= m + 1; ++c) {
            long p = 1;
            for (int e = 0; e < k; ++e)
                p *= c;
            if (p == v)
                return c;
        }
        return std::nullopt;
    };

    TowerPtr tower;
    AlgNum r2, g;
    if (r < 0 && (perfect_root(-r, 4) || (-r % 4 == 0 && perfect_root(-r / 4, 4)))) {
        // g = m zeta_8 or m (1 + i) inside Q(zeta_8).
        tower = adjoin_root_of_unity(FieldTower::rationals(), 8, "zeta8");
        const AlgNum z = generator(tower, "zeta8");
        r2 = z - z.pow(3);
        if (auto m = perfect_root(-r, 4))
            g = AlgNum(*m) * z;
        else
            g = AlgNum(*perfect_root(-r / 4, 4)) * (AlgNum(1) + z.pow(2));
    } else {
        tower = adjoin_sqrt(FieldTower::rationals(), "r2", AlgNum(2),
                            {std::sqrt(2.0), 0.0});
        r2 = generator(tower, "r2");
        if (auto m = perfect_root(r, 4)) {
            g = AlgNum(*m);
        } else if (auto m2 = perfect_root(r, 2)) {
            // g^2 = m2: either a multiple of sqrt 2 or a fresh square root.
            if (*m2 % 2 == 0 && perfect_root(*m2 / 2, 2)) {
                g = AlgNum(*perfect_root(*m2 / 2, 2)) * r2;
            } else {
                tower = adjoin_sqrt(tower, "g", AlgNum(*m2),
                                    {std::sqrt(static_cast<double>(*m2)), 0.0});
                g = generator(tower, "g");
            }
        } else if (r > 0 && r % 2 == 0 && perfect_root(r / 2, 2)) {
            // g^2 = m sqrt 2
            const long m = *perfect_root(r / 2, 2);
            tower = pinned(tower, "g", {-AlgNum(m) * r2, AlgNum(0), AlgNum(1)},
                           {std::pow(static_cast<double>(r), 0.25), 0.0});
            g = generator(tower, "g");
        } else {
            const double mag = std::pow(std::abs(static_cast<double>(r)), 0.25);
            const std::complex<double> guess =
                r > 0 ? std::complex<double>(mag, 0.0)
                      : std::polar(mag, std::acos(-1.0) / 4.0);
            tower = pinned(tower, "g",
                           {AlgNum(-r), AlgNum(0), AlgNum(0), AlgNum(0), AlgNum(1)},
                           guess);
            g = generator(tower, "g");
        }
        r2 = generator(tower, "r2");
    }

    const AlgNum sr2 = AlgNum(branch) * r2; // ±√2
    const AlgNum g2 = g * g;
    const AlgNum a1 = AlgNum(8) * (g2 * g2 - AlgNum(1)) * (g2 + AlgNum(2) * sr2).pow(4);
    const AlgNum a2 = AlgNum(2) * g2 + AlgNum(2) * sr2;
    const AlgNum a3 = -AlgNum(2) * sr2 * g2 * g2 - AlgNum(8) * g2;
    const AlgNum a4 = AlgNum(2) * g;
    const AlgNum a5 = -AlgNum(2) * sr2 * g2 * g - AlgNum(8) * g;

    Terms t;
    if (!a1.is_zero())
        t.push_back({a1, all_ones(n)});
    for (int k = 0; k < n; ++k) {
        Point p(n, a2);
        p[k] = a2 + a3;
        t.push_back({AlgNum(1), std::move(p)});
    }
    for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = j1 + 1; j2 < n; ++j2) {
            Point p(n, a4);
            p[j1] = a4 + a5;
            p[j2] = a4 + a5;
            t.push_back({AlgNum(1), std::move(p)});
        }
    std::string name = "gen_stroud_q2:" + std::to_string(n);
    if (branch < 0)
        name += ":-1";
    return make(name, "generalised Stroud family", n, 2, tower,
                AlgNum(3) * a5.pow(4), std::move(t));
}

Decomposition gen_q8() {
    // The signs follow the derivation (t^4 = -8/9, f = t^4); the displayed
    // form with +8/9 (3/16 Σx + x_k)^4 does not expand to q_8^2.
    const int n = 8;
    Terms t;
    t.push_back({AlgNum::rational(3, 256), all_ones(n)});
    add_coordinate_powers(t, n, AlgNum::rational(8, 9));
    for (int k = 0; k < n; ++k) {
        Point p(n, AlgNum::rational(-3, 16));
        p[k] = AlgNum::rational(13, 16);
        t.push_back({AlgNum::rational(-8, 9), std::move(p)});
    }
    for (int j1 = 0; j1 < n; ++j1)
        for (int j2 = j1 + 1; j2 < n; ++j2) {
            Point p(n, AlgNum::rational(-3, 8));
            p[j1] = AlgNum::rational(5, 8);
            p[j2] = AlgNum::rational(5, 8);
            t.push_back({AlgNum::rational(1, 3), std::move(p)});
        }
    return make("gen_q8", "rational 45-term identity for q_8^2", n, 2,
                FieldTower::rationals(), AlgNum(1), std::move(t));
}

Decomposition reznick_family_q_n2(int n) {
    if (n < 3)
        throw Error(ErrorKind::OutOfRange, "reznick_family_q_n2 needs n >= 3");
    Terms t;
    add_pair_orbits(t, n, AlgNum::rational(1, 6));
    if (n != 4)
        add_coordinate_powers(t, n, AlgNum(Rational(4 - n, 3)));
    return make("reznick_family_q_n2:" + std::to_string(n),
                "Reznick pair-sum family", n, 2, FieldTower::rationals(),
                AlgNum(1), std::move(t));
}

Decomposition stroud_s3(int n) {
    if (n < 3 || n == 8)
        throw Error(ErrorKind::OutOfRange, "stroud_s3 needs n >= 3, n != 8");
    if (n > 20)
        throw Error(ErrorKind::OutOfRange, "stroud_s3 limited to n <= 20");
    Terms t;
    add_coordinate_powers(t, n, AlgNum(Rational(2 * (8 - n), 15)));
    add_pair_orbits(t, n, AlgNum::rational(1, 15));
    const Rational w(Integer(1), Integer(15) * (Integer(1) << (n - 1)));
    add_sign_orbit(t, AlgNum(w), all_ones(n));
    return make("stroud_s3:" + std::to_string(n), "Stroud degree-7 cubature",
                n, 3, FieldTower::rationals(), AlgNum(1), std::move(t));
}

Decomposition bhmt_q_n3(int n) {
    if (n < 3)
        throw Error(ErrorKind::OutOfRange, "bhmt_q_n3 needs n >= 3");
    Terms t;
    add_triple_orbits(t, n, AlgNum(1));
    if (n != 5)
        add_pair_orbits(t, n, AlgNum(2 * (5 - n)));
    add_coordinate_powers(t, n, AlgNum(2 * (n * n - 9 * n + 38)));
    return make("bhmt_q_n3:" + std::to_string(n), "triple-sum family for q_n^3",
                n, 3, FieldTower::rationals(), AlgNum(60), std::move(t));
}

namespace {

// Tower Q(p)(t) with p^2 - b p + 1 = 0, t^2 = p, where the root of the
// quadratic is chosen by `branch` (sign of its imaginary part).
struct QuarticRoot {
    TowerPtr tower;
    AlgNum p, p_inv, t;
};

QuarticRoot quartic_root(const Rational &b, int branch, const std::string &pname) {
    const double bd = b.get_d();
    const std::complex<double> p_pin =
        (std::complex<double>(bd, 0.0) +
         std::sqrt(std::complex<double>(bd * bd - 4.0, 0.0)) * double(branch)) /
        2.0;
    auto tower = pinned(FieldTower::rationals(), pname,
                        {AlgNum(1), AlgNum(-b), AlgNum(1)}, p_pin);
    const AlgNum p0 = generator(tower, pname);
    tower = pinned(tower, "t", {-p0, AlgNum(0), AlgNum(1)}, std::sqrt(p_pin));
    QuarticRoot q{tower, generator(tower, pname), {}, generator(tower, "t")};
    q.p_inv = AlgNum(b) - q.p;
    return q;
}

} // namespace

Decomposition firstcaliber_odd(int n, int branch) {
    if (n < 5 || n % 2 == 0)
        throw Error(ErrorKind::OutOfRange, "firstcaliber_odd needs odd n >= 5");
    check_branch(branch);
    const auto q = quartic_root(Rational(6, n - 1), branch, "phi");
    Terms t;
    for (int k = 1; k <= (n - 1) / 2; ++k)
        for (int j = 0; j < n; ++j) {
            Point p = zeros(n);
            if (k % 2 == 0) {
                p[j] = q.t;
                p[(j + k) % n] = 1;
            } else {
                p[j] = 1;
                p[(j + k) % n] = q.t;
            }
            add_sign_orbit(t, q.p_inv, p);
        }
    std::string name = "firstcaliber_odd:" + std::to_string(n);
    if (branch < 0)
        name += ":-1";
    return make(name, "complex first-caliber family (odd n)", n, 2, q.tower,
                AlgNum(6), std::move(t));
}

Decomposition firstcaliber_even(int n, int branch) {
    if (n < 6 || n % 2 != 0)
        throw Error(ErrorKind::OutOfRange, "firstcaliber_even needs even n >= 6");
    check_branch(branch);
    const auto q = quartic_root(Rational(4, n - 2), branch, "psi");
    Terms t;
    for (int k = 1; k <= (n - 2) / 2; ++k)
        for (int j = 0; j < n; ++j) {
            Point p = zeros(n);
            if (k % 2 == 0) {
                p[j] = 1;
                p[(j + k) % n] = q.t;
            } else {
                p[j] = q.t;
                p[(j + k) % n] = 1;
            }
            add_sign_orbit(t, q.p_inv, p);
        }
    for (int j = 0; j < n / 2; ++j) {
        Point p = zeros(n);
        p[j] = 1;
        p[j + n / 2] = 1;
        add_sign_orbit(t, AlgNum(1), p);
    }
    std::string name = "firstcaliber_even:" + std::to_string(n);
    if (branch < 0)
        name += ":-1";
    return make(name, "complex first-caliber family (even n)", n, 2, q.tower,
                AlgNum(6), std::move(t));
}

Decomposition flavi_551_q33(bool swap) {
    auto tower = zeta20_tower();
    tower = adjoin_sqrt(tower, "r21", AlgNum(21), {std::sqrt(21.0), 0.0});
    const AlgNum z = generator(tower, "zeta20");
    const AlgNum r21 = generator(tower, "r21");
    const AlgNum i = z.pow(5);
    const AlgNum r5 = sqrt5_in(z);
    AlgNum alpha = (r5 + r21 * AlgNum::rational(1, 3)) * AlgNum::rational(1, 2);
    AlgNum beta = (r5 - r21 * AlgNum::rational(1, 3)) * AlgNum::rational(1, 2);
    if (swap)
        std::swap(alpha, beta);
    const AlgNum l_alpha = beta * beta * AlgNum::rational(1, 500) + AlgNum::rational(1, 750);
    const AlgNum l_beta = alpha * alpha * AlgNum::rational(1, 500) + AlgNum::rational(1, 750);
    Terms t;
    t.push_back({AlgNum::rational(35, 54), unit_scaled(3, 2, AlgNum(1))});
    for (int j = 0; j < 5; ++j)
        t.push_back({l_alpha, uvz_point(i, z.pow(4 * j), alpha)});
    for (int j = 0; j < 5; ++j)
        t.push_back({l_beta, uvz_point(i, z.pow(2 * (2 * j + 1)), beta)});
    return make(swap ? "flavi_551_q33:swap" : "flavi_551_q33",
                "rotational orbits 5-5-1", 3, 3, tower, AlgNum(1), std::move(t));
}

// ---------------------------------------------------------------------------
// Catalogue.

namespace {

using Builder = Decomposition (*)();

const std::vector<std::pair<std::string, Builder>> &fixed_entries() {
    static const std::vector<std::pair<std::string, Builder>> entries = {
        {"lucas_q32", lucas_q32},
        {"liouville_q42", liouville_q42},
        {"icosahedron_q32", icosahedron_q32},
        {"tight_q72", tight_q72},
        {"kempner_q43", kempner_q43},
        {"reznick_q33", reznick_q33},
        {"reznick_q34", reznick_q34},
        {"flavi_2441_q33", flavi_2441_q33},
        {"flavi_551_q33", [] { return flavi_551_q33(false); }},
        {"flavi_2333_q33", flavi_2333_q33},
        {"flavi_5551_q34", flavi_5551_q34},
        {"gen_q8", gen_q8},
        {"e8_roots_q83", e8_roots_q83},
    };
    return entries;
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep))
        parts.push_back(item);
    if (!s.empty() && s.back() == sep)
        parts.emplace_back();
    return parts;
}

} // namespace

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const auto &[name, _] : fixed_entries())
        names.push_back(name);
    return names;
}

std::map<std::string, Decomposition> catalog() {
    std::map<std::string, Decomposition> out;
    for (const auto &[name, build] : fixed_entries())
        out.emplace(name, build());
    return out;
}

Decomposition catalog_entry(const std::string &name) {
    for (const auto &[fixed, build] : fixed_entries())
        if (fixed == name)
            return build();
    const auto parts = split(name, ':');
    if (parts.size() < 2 || parts.size() > 3)
        throw Error(ErrorKind::OutOfRange, "unknown catalog entry '" + name + "'");
    const std::string &family = parts[0];
    if (family == "flavi_551_q33" && parts.size() == 2 && parts[1] == "swap")
        return flavi_551_q33(true);
    const int param = parse_int(parts[1], name);
    const int branch = parts.size() == 3 ? check_branch(parse_int(parts[2], name)) : 1;
    const bool branched = family == "gen_stroud_q2" ||
                          family == "firstcaliber_odd" ||
                          family == "firstcaliber_even";
    if (parts.size() == 3 && !branched)
        throw Error(ErrorKind::OutOfRange, "family '" + family + "' has no branch");
    if (family == "gen_binary")
        return gen_binary(param);
    if (family == "gen_stroud_q2") {
        if (param < 3 || param == 8)
            throw Error(ErrorKind::OutOfRange, "gen_stroud_q2 parameter");
        return gen_stroud_q2(param, branch);
    }
    if (family == "reznick_family_q_n2")
        return reznick_family_q_n2(param);
    if (family == "stroud_s3")
        return stroud_s3(param);
    if (family == "bhmt_q_n3")
        return bhmt_q_n3(param);
    if (family == "firstcaliber_odd")
        return firstcaliber_odd(param, branch);
    if (family == "firstcaliber_even")
        return firstcaliber_even(param, branch);
    throw Error(ErrorKind::OutOfRange, "unknown catalog family '" + family + "'");
}

std::vector<std::string> reproduction_instances() {
    std::vector<std::string> out = catalog_names();
    out.push_back("flavi_551_q33:swap");
    for (int n = 3; n <= 7; ++n)
        out.push_back("reznick_family_q_n2:" + std::to_string(n));
    for (int n = 3; n <= 7; ++n)
        out.push_back("stroud_s3:" + std::to_string(n));
    for (int n = 3; n <= 6; ++n)
        out.push_back("bhmt_q_n3:" + std::to_string(n));
    for (const char *b : {"", ":-1"}) {
        out.push_back("firstcaliber_odd:5" + std::string(b));
        out.push_back("firstcaliber_odd:7" + std::string(b));
        out.push_back("firstcaliber_even:6" + std::string(b));
    }
    for (int n : {3, 4, 5, 6, 7, 9, 10, 11, 12}) {
        out.push_back("gen_stroud_q2:" + std::to_string(n));
        out.push_back("gen_stroud_q2:" + std::to_string(n) + ":-1");
    }
    for (int s = 1; s <= 8; ++s)
        out.push_back("gen_binary:" + std::to_string(s));
    return out;
}

// ---------------------------------------------------------------------------

RankBounds rank_bounds(int n, int s) {
    if (n < 1 || s < 1)
        throw Error(ErrorKind::OutOfRange, "rank_bounds needs n, s >= 1");
    RankBounds b;
    b.n = n;
    b.s = s;
    b.lower = tight_size(n, s);
    b.lower_reason = "middle catalecticant rank T_{n,s}";

    auto offer = [&](const std::string &witness, std::size_t size) {
        const Integer sz(static_cast<unsigned long>(size));
        if (!b.upper || sz < *b.upper) {
            b.upper = sz;
            b.upper_witness = witness;
        }
    };

    if (n == 1) {
        offer("x1^(2s)", 1);
    } else if (s == 1) {
        offer("sum of coordinate squares", static_cast<std::size_t>(n));
    } else {
        const TightVerdict v = tight_verdict(n, s);
        if (v.status == TightStatus::ExcludedComplex) {
            b.lower += 1;
            b.lower_reason = "tight decompositions excluded (" + v.theorem + ")";
        }
        if (n == 2)
            offer("gen_binary:" + std::to_string(s), static_cast<std::size_t>(s + 1));
        for (const auto &[name, build] : fixed_entries()) {
            const Decomposition d = build();
            if (d.n == n && d.s == s)
                offer(name, d.size());
        }
        // Family sizes, computed from their definitions.
        if (s == 2 && n >= 3) {
            const Integer t = tight_size(n, 2);
            if (n != 8)
                offer("gen_stroud_q2:" + std::to_string(n),
                      n == 7 ? t.get_ui() : t.get_ui() + 1);
            offer("reznick_family_q_n2:" + std::to_string(n),
                  static_cast<std::size_t>(n == 4 ? 12 : n * n));
            if (n % 2 == 1 && n >= 5)
                offer("firstcaliber_odd:" + std::to_string(n),
                      static_cast<std::size_t>(n * (n - 1)));
            if (n % 2 == 0 && n >= 6)
                offer("firstcaliber_even:" + std::to_string(n),
                      static_cast<std::size_t>(n * (n - 1)));
        }
        if (s == 3 && n >= 3) {
            if (n != 8 && n <= 20)
                offer("stroud_s3:" + std::to_string(n),
                      static_cast<std::size_t>(n * n) + (std::size_t{1} << (n - 1)));
            const std::size_t trip = 4 * binomial(n, 3).get_ui();
            const std::size_t pairs = n == 5 ? 0 : 2 * binomial(n, 2).get_ui();
            offer("bhmt_q_n3:" + std::to_string(n), trip + pairs + n);
        }
    }
    b.exact = b.upper && *b.upper == b.lower;
    return b;
}

} // namespace qw
