#include "qw/tightness.hpp"

#include "qw/constants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace qw {

const char *to_string(TightStatus status) noexcept {
    switch (status) {
    case TightStatus::ExistsKnown:
        return "ExistsKnown";
    case TightStatus::ExcludedComplex:
        return "ExcludedComplex";
    case TightStatus::ExcludedRealOnly:
        return "ExcludedRealOnly";
    case TightStatus::Open:
        return "Open";
    }
    return "?";
}

const char *to_string(CertConclusion c) noexcept {
    return c == CertConclusion::NoTight ? "NoTight" : "Inconclusive";
}

namespace {

bool is_odd_square_minus_two(int n) {
    const int m = static_cast<int>(std::lround(std::sqrt(n + 2.0)));
    return m * m == n + 2 && m % 2 == 1;
}

TightVerdict verdict(int n, int s, TightStatus status, std::string witness,
                     std::string theorem, std::string scope, std::string notes) {
    return {n, s, status, std::move(witness), std::move(theorem),
            std::move(scope), std::move(notes)};
}

} // namespace

TightVerdict tight_verdict(int n, int s) {
    if (n < 2 || s < 1)
        throw Error(ErrorKind::OutOfRange, "tight_verdict needs n >= 2, s >= 1");
    using S = TightStatus;
    if (s == 1)
        return verdict(n, s, S::ExistsKnown, "sum of coordinate squares", "",
                       "complex", "q_n is a sum of n squares");
    if (n == 2)
        return verdict(n, s, S::ExistsKnown, "gen_binary:" + std::to_string(s),
                       "", "complex", "regular polygon");
    switch (s) {
    case 2:
        if (n == 3)
            return verdict(n, s, S::ExistsKnown, "icosahedron_q32", "", "complex",
                           "");
        if (n == 7)
            return verdict(n, s, S::ExistsKnown, "tight_q72", "", "complex", "");
        if (n == 23)
            return verdict(n, s, S::ExistsKnown, "literature", "", "complex",
                           "276 equiangular lines in dimension 23; witness not "
                           "in catalog");
        if (is_odd_square_minus_two(n))
            return verdict(n, s, S::Open, "", "", "open",
                           "n = m^2 - 2 with m odd is not excluded");
        return verdict(n, s, S::ExcludedComplex, "", "s=2 exclusion", "complex",
                       "n is neither 3 nor of the form m^2 - 2 with m odd");
    case 3:
        if (n == 3)
            return verdict(n, s, S::ExcludedComplex, "", "s=3 exclusion",
                           "complex",
                           "n != 2 mod 3; the angle certificate agrees");
        if (n % 3 != 2)
            return verdict(n, s, S::ExcludedComplex, "", "s=3 exclusion",
                           "complex", "n != 2 mod 3");
        if (n == 8)
            return verdict(n, s, S::ExistsKnown, "e8_roots_q83", "", "complex",
                           "");
        if (n == 23)
            return verdict(n, s, S::ExistsKnown, "literature", "", "complex",
                           "minimal vectors of the Leech lattice section; "
                           "witness not in catalog");
        return verdict(n, s, S::Open, "", "", "open",
                       "real tight 7-designs exist only for n = 8, 23; the "
                       "complex case is open");
    case 4:
        if (n == 3)
            return verdict(n, s, S::ExcludedComplex, "", "angle certificate",
                           "complex",
                           "two-value Gram argument on the admissible angles");
        return verdict(n, s, S::ExcludedRealOnly, "", "real tight designs",
                       "real", "no real tight 9-designs; complex case open");
    case 5:
        if (n == 24)
            return verdict(n, s, S::Open, "", "", "open",
                           "the real tight 11-design question for n = 24 is open");
        return verdict(n, s, S::ExcludedRealOnly, "", "real tight designs",
                       "real", "no real tight 11-designs; complex case open");
    default:
        return verdict(n, s, S::ExcludedRealOnly, "", "real tight designs",
                       "real", "no real tight designs of this strength; "
                               "complex case open");
    }
}

S2Counts s2_counts(int m) {
    if (m < 2)
        throw Error(ErrorKind::OutOfRange, "s2_counts needs m >= 2");
    S2Counts c;
    c.m = m;
    c.n = m * m - 2;
    const Integer mm1 = m - 1, mp1 = m + 1, mp2 = m + 2, mm2 = m - 2;
    c.n2_minus = Rational(mm1 * mm1 * mm1 * mp2, 4);
    c.n2_plus = Rational(mm2 * mp1 * mp1 * mp1, 4);
    c.d1 = Rational(mp1 * mp1 * mp1 * mm2, 4);
    c.d2 = Rational(mm1 * mm1 * mm1 * mp2, 4);
    c.d3 = Rational(mm1 * mm1 * mm1 * mp2, 8);
    for (auto *r : {&c.n2_minus, &c.n2_plus, &c.d1, &c.d2, &c.d3})
        r->canonicalize();
    c.d3_integral = c.d3.get_den() == 1;
    return c;
}

namespace {

// Square root of a rational inside (an extension of) `tower`, adjoining
// sqrt(k) for the square-free part k when it is not already present.
AlgNum sqrt_rational(TowerPtr &tower, Rational v) {
    v.canonicalize();
    if (v == 0)
        return AlgNum(0);
    Integer num = v.get_num() * v.get_den();
    const Integer den = v.get_den();
    Integer rest = abs(num), outside = 1;
    for (Integer p = 2; p * p <= rest; ++p)
        while (rest % (p * p) == 0) {
            rest /= p * p;
            outside *= p;
        }
    const Integer k = sgn(num) < 0 ? Integer(-rest) : rest;
    const AlgNum scale(Rational(outside, den));
    if (k == 1)
        return scale;
    const std::string name =
        sgn(k) < 0 ? "rm" + Integer(-k).get_str() : "r" + k.get_str();
    if (!tower->find(name)) {
        const double kd = k.get_d();
        const std::complex<double> pin =
            kd > 0 ? std::complex<double>(std::sqrt(kd), 0.0)
                   : std::complex<double>(0.0, std::sqrt(-kd));
        tower = adjoin_sqrt(tower, name, AlgNum(Rational(k)), pin);
    }
    return scale * generator(tower, name);
}

void push_distinct(std::vector<AlgNum> &out, const AlgNum &v) {
    if (std::find(out.begin(), out.end(), v) == out.end())
        out.push_back(v);
}

} // namespace

KernelRoots kernel_roots(int n, int s) {
    if (s < 2 || s > 4)
        throw Error(ErrorKind::UnsupportedExponent,
                    "kernel roots are known for s = 2, 3, 4");
    if (n < 2)
        throw Error(ErrorKind::OutOfRange, "kernel_roots needs n >= 2");
    KernelRoots k;
    k.n = n;
    k.s = s;
    TowerPtr tower = FieldTower::rationals();
    std::vector<AlgNum> vals;
    if (s == 2) {
        const AlgNum r = sqrt_rational(tower, Rational(1, n + 2));
        vals = {r, -r};
    } else if (s == 3) {
        const AlgNum r = sqrt_rational(tower, Rational(3, n + 4));
        vals = {AlgNum(0), r, -r};
    } else {
        // (n+6) t^4 - 6 t^2 + 3/(n+4) = 0, t^2 = (3 ± w)/(n+6).
        const AlgNum w = sqrt_rational(tower, Rational(6 * (n + 3), n + 4));
        const AlgNum v = sqrt_rational(tower, Rational(3 * (n + 6), n + 4));
        const AlgNum x1sq = (AlgNum(3) + w) * AlgNum(Rational(1, n + 6));
        AlgNum x1;
        if (x1sq.is_rational()) {
            x1 = sqrt_rational(tower, x1sq.to_rational());
        } else {
            const std::vector<AlgNum> mp{-x1sq, AlgNum(0), AlgNum(1)};
            tower = adjoin(tower, "x1", mp,
                           polish_root(mp, std::sqrt(x1sq.approx())));
            x1 = generator(tower, "x1");
        }
        // x1 x2 = v/(n+6)
        const AlgNum x2 = v * AlgNum(Rational(1, n + 6)) / x1;
        vals = {x1, -x1, x2, -x2};
    }
    k.tower = tower;
    for (const auto &v : vals) {
        k.values.push_back(v);
        push_distinct(k.squares, v * v);
    }
    return k;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<std::array<int, 2>, 6> kPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

int pair_index(int j, int k) {
    if (j > k)
        std::swap(j, k);
    for (int i = 0; i < 6; ++i)
        if (kPairs[i][0] == j && kPairs[i][1] == k)
            return i;
    return -1;
}

template <typename T, typename Entry>
T det4(Entry entry, T zero) {
    std::array<int, 4> p{0, 1, 2, 3};
    T total = zero;
    do {
        int inversions = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                if (p[a] > p[b])
                    ++inversions;
        T prod = entry(0, p[0]);
        for (int r = 1; r < 4; ++r)
            prod = prod * entry(r, p[r]);
        if (inversions % 2)
            total = total - prod;
        else
            total = total + prod;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

} // namespace

MultiPoly gram_det_poly() {
    auto entry = [](int r, int c) {
        if (r == c)
            return MultiPoly::constant(6, AlgNum(1));
        return MultiPoly::variable(6, pair_index(r, c));
    };
    return det4<MultiPoly>(entry, MultiPoly(6));
}

AlgNum gram_det(const AlgNum &c12, const AlgNum &c13, const AlgNum &c14,
                const AlgNum &c23, const AlgNum &c24, const AlgNum &c34) {
    const std::array<const AlgNum *, 6> c{&c12, &c13, &c14, &c23, &c24, &c34};
    auto entry = [&](int r, int col) {
        return r == col ? AlgNum(1) : *c[pair_index(r, col)];
    };
    return det4<AlgNum>(entry, AlgNum(0));
}

std::vector<Rational> rational_roots(std::vector<Rational> coeffs, int *leftover) {
    while (!coeffs.empty() && coeffs.back() == 0)
        coeffs.pop_back();
    std::vector<Rational> roots;
    if (coeffs.empty()) {
        if (leftover)
            *leftover = 0;
        return roots;
    }
    // Zero roots.
    std::size_t shift = 0;
    while (coeffs[shift] == 0)
        ++shift;
    if (shift > 0) {
        roots.push_back(0);
        coeffs.erase(coeffs.begin(), coeffs.begin() + shift);
    }
    auto divisors = [](Integer v) {
        v = abs(v);
        std::vector<Integer> d;
        for (Integer k = 1; k * k <= v; ++k)
            if (v % k == 0) {
                d.push_back(k);
                if (k * k != v)
                    d.push_back(v / k);
            }
        return d;
    };
    bool progress = true;
    while (coeffs.size() > 1 && progress) {
        progress = false;
        Integer lcm_den = 1;
        for (const auto &c : coeffs)
            lcm_den = lcm(lcm_den, Integer(c.get_den()));
        std::vector<Integer> ints;
        for (const auto &c : coeffs)
            ints.push_back(Integer(c * lcm_den));
        for (const auto &p : divisors(ints.front())) {
            for (const auto &q : divisors(ints.back())) {
                for (int sign : {1, -1}) {
                    Rational r(p * sign, q);
                    r.canonicalize();
                    Rational acc = 0;
                    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
                        acc = acc * r + *it;
                    if (acc != 0)
                        continue;
                    // Deflate by (x - r).
                    std::vector<Rational> quot(coeffs.size() - 1);
                    Rational carry = 0;
                    for (std::size_t i = coeffs.size(); i-- > 1;) {
                        carry = carry * r + coeffs[i];
                        quot[i - 1] = carry;
                    }
                    coeffs = std::move(quot);
                    if (std::find(roots.begin(), roots.end(), r) == roots.end())
                        roots.push_back(r);
                    progress = true;
                    break;
                }
                if (progress)
                    break;
            }
            if (progress)
                break;
        }
    }
    if (leftover)
        *leftover = static_cast<int>(coeffs.size()) - 1;
    std::sort(roots.begin(), roots.end());
    return roots;
}

GramOrbitReport gram_orbit_check() {
    GramOrbitReport rep;
    const MultiPoly g = gram_det_poly();
    std::vector<MultiPoly> vars;
    for (int i = 0; i < 6; ++i)
        vars.push_back(MultiPoly::variable(6, i));

    std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
    std::vector<MultiPoly> images;
    do {
        std::vector<MultiPoly> img;
        for (int i = 0; i < 6; ++i)
            img.push_back(vars[perm[i]]);
        const MultiPoly h = substitute(g, img);
        if (h == g)
            ++rep.invariance_order;
        if (std::find(images.begin(), images.end(), h) == images.end())
            images.push_back(h);
    } while (std::next_permutation(perm.begin(), perm.end()));
    rep.distinct_images = static_cast<int>(images.size());

    rep.row_sign_invariant = true;
    for (int j = 0; j < 4; ++j) {
        std::vector<MultiPoly> img = vars;
        for (int i = 0; i < 6; ++i)
            if (kPairs[i][0] == j || kPairs[i][1] == j)
                img[i] = -img[i];
        if (!(substitute(g, img) == g))
            rep.row_sign_invariant = false;
    }

    const MultiPoly a = MultiPoly::variable(1, 0);
    for (int mask = 0; mask < 64; ++mask) {
        std::vector<MultiPoly> img;
        for (int i = 0; i < 6; ++i)
            img.push_back(mask & (1 << i) ? -a : a);
        const MultiPoly h = substitute(g, img);
        if (std::find(rep.one_value_forms.begin(), rep.one_value_forms.end(), h) ==
            rep.one_value_forms.end())
            rep.one_value_forms.push_back(h);
    }

    rep.squares_exhaustive = true;
    for (const auto &f : rep.one_value_forms) {
        // f(a) f(-a) is even; read it as a polynomial in t = a^2.
        const MultiPoly even = f * substitute(f, {-a});
        std::vector<Rational> coeffs(even.degree() / 2 + 1);
        for (const auto &[e, c] : even.terms())
            coeffs[e[0] / 2] = c.to_rational();
        int rest = 0;
        for (const auto &r : rational_roots(coeffs, &rest))
            if (std::find(rep.admissible_squares.begin(),
                          rep.admissible_squares.end(),
                          r) == rep.admissible_squares.end())
                rep.admissible_squares.push_back(r);
        if (rest > 0)
            rep.squares_exhaustive = false;
    }
    std::sort(rep.admissible_squares.begin(), rep.admissible_squares.end());
    return rep;
}

// ---------------------------------------------------------------------------

std::string TwoValuePoly::label() const {
    std::string out = "g" + std::to_string(index);
    if (!signs.empty()) {
        out += "[";
        for (std::size_t i = 0; i < signs.size(); ++i)
            out += (i ? "," : "") + std::string(signs[i] > 0 ? "+" : "-");
        out += "]";
    }
    return out;
}

namespace {

MultiPoly m2(long num, long den, int e1, int e2) {
    return MultiPoly::monomial(2, {e1, e2}, AlgNum::rational(num, den));
}

MultiPoly m2(long c, int e1, int e2) { return m2(c, 1, e1, e2); }

struct TwoValueTemplate {
    MultiPoly fixed;
    std::vector<MultiPoly> signed_parts;
};

std::vector<TwoValueTemplate> templates() {
    const MultiPoly one = m2(1, 0, 0);
    const MultiPoly x1 = m2(1, 1, 0), x2 = m2(1, 0, 1);
    return {
        {m2(4, 2, 0) - one, {m2(1, 1, 1), x1, x2}},
        {m2(4, 2, 0) + m2(1, 0, 2) - one, {}},
        {m2(1, 3, 0) - x1, {m2(4, 2, 1), m2(3, 2, 0) + m2(2, 0, 2) - one}},
        {m2(2, 1, 0), {x2, one}},
        {m2(5, 1, 2) - x1, {m2(2, 2, 0) + m2(3, 0, 2) - one}},
        {m2(2, 2, 0) + m2(1, 0, 2) - one, {m2(2, 1, 1)}},
        {m2(3, 0, 2) - one, {m2(2, 1, 0)}},
        {m2(1, 2, 0) + m2(1, 0, 2) - one, {m2(1, 1, 1), x1, x2}},
        {m2(1, 2, 0) + m2(1, 0, 2) - one, {m2(3, 1, 1), x1, x2}},
        {m2(1, 3, 0) - x1, {m2(4, 1, 2), m2(3, 2, 0) + m2(2, 0, 2) - one}},
        {m2(1, 4, 0) + m2(3, 2, 2) + m2(1, 0, 4) - m2(3, 2, 0) - m2(3, 0, 2) + one,
         {m2(2, 3, 1) - m2(2, 1, 3)}},
    };
}

} // namespace

std::vector<TwoValuePoly> two_value_polys() {
    std::vector<TwoValuePoly> out;
    const auto ts = templates();
    for (std::size_t t = 0; t < ts.size(); ++t) {
        const std::size_t k = ts[t].signed_parts.size();
        std::vector<MultiPoly> seen;
        for (unsigned mask = 0; mask < (1U << k); ++mask) {
            TwoValuePoly p;
            p.index = static_cast<int>(t) + 1;
            p.poly = ts[t].fixed;
            for (std::size_t i = 0; i < k; ++i) {
                const bool minus = mask & (1U << i);
                p.signs.push_back(minus ? -1 : 1);
                if (minus)
                    p.poly -= ts[t].signed_parts[i];
                else
                    p.poly += ts[t].signed_parts[i];
            }
            if (std::find(seen.begin(), seen.end(), p.poly) != seen.end())
                continue;
            seen.push_back(p.poly);
            out.push_back(std::move(p));
        }
    }
    return out;
}

bool divides(const MultiPoly &g, const MultiPoly &f) {
    if (g.is_zero())
        return f.is_zero();
    const auto &[lead_e, lead_c] = *g.terms().begin();
    MultiPoly r = f;
    while (!r.is_zero()) {
        const auto [e, c] = *r.terms().begin();
        Exponent q(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            q[i] = e[i] - lead_e[i];
            if (q[i] < 0)
                return false;
        }
        r -= g * MultiPoly::monomial(g.n_vars(), q, c / lead_c, g.ring());
    }
    return true;
}

std::vector<TwoValueFactor> two_value_factor_check() {
    const MultiPoly g = gram_det_poly();
    const MultiPoly a = MultiPoly::variable(2, 0), b = MultiPoly::variable(2, 1);
    const std::array<MultiPoly, 4> choices{a, -a, b, -b};
    std::vector<MultiPoly> dets;
    for (int code = 0; code < 4096; ++code) {
        std::vector<MultiPoly> img;
        int c = code;
        for (int i = 0; i < 6; ++i, c /= 4)
            img.push_back(choices[c % 4]);
        const MultiPoly d = substitute(g, img);
        if (!d.is_zero() && std::find(dets.begin(), dets.end(), d) == dets.end())
            dets.push_back(d);
    }
    std::vector<TwoValueFactor> out;
    for (auto &p : two_value_polys()) {
        const MultiPoly swapped = substitute(p.poly, {b, a});
        TwoValueFactor f{p, false};
        for (const auto &d : dets)
            if (divides(p.poly, d) || divides(swapped, d)) {
                f.divides_some_determinant = true;
                break;
            }
        out.push_back(std::move(f));
    }
    return out;
}

// ---------------------------------------------------------------------------

AngleCertificate angle_certificate(int n, int s) {
    if (n != 3)
        throw Error(ErrorKind::UnsupportedN, "angle certificates exist for n = 3");
    if (s != 3 && s != 4)
        throw Error(ErrorKind::UnsupportedExponent,
                    "angle certificates exist for s = 3, 4");
    const KernelRoots kr = kernel_roots(n, s);
    AngleCertificate cert;
    cert.n = n;
    cert.s = s;
    cert.tower = kr.tower;
    cert.admissible_products = kr.values;
    cert.admissible_squares = kr.squares;

    cert.squares_avoid_one_value = true;
    for (const auto &sq : kr.squares)
        for (const Rational &r : {Rational(1, 9), Rational(1, 5), Rational(1)})
            if (sq == AlgNum(r))
                cert.squares_avoid_one_value = false;

    bool all_nonzero = true;
    const auto polys = two_value_polys();
    for (const auto &x : kr.values)
        for (const auto &y : kr.values) {
            if (x * x == y * y)
                continue;
            for (const auto &p : polys) {
                CertEvaluation ev{p, x, y, evaluate(p.poly, {x, y})};
                if (ev.value.is_zero())
                    all_nonzero = false;
                cert.evaluations.push_back(std::move(ev));
            }
        }
    cert.conclusion = all_nonzero && cert.squares_avoid_one_value
                          ? CertConclusion::NoTight
                          : CertConclusion::Inconclusive;
    return cert;
}

} // namespace qw
