#include "cert_tables.hpp"
#include "expr_parser.hpp"
#include "qw/apolar.hpp"
#include "qw/constants.hpp"
#include "qw/tightness.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <set>

using namespace qw;
using qw::test::ExprParser;
using qw::test::expand_pm;
using qw::test::in_value_set;
using qw::test::Q34Constants;
using qw::test::q34_constants;
using qw::test::table_mismatches;

namespace {

template <typename F>
ErrorKind error_of(F &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    FAIL("expected an exception");
    return ErrorKind::Parse;
}

bool contains(const std::vector<AlgNum> &v, const AlgNum &x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

// Leibniz expansion of the symmetric 4x4 matrix with unit diagonal.
MultiPoly leibniz_gram() {
    const int idx[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    std::array<int, 4> p{0, 1, 2, 3};
    MultiPoly total(6);
    do {
        MultiPoly prod = MultiPoly::constant(6, AlgNum(1));
        for (int r = 0; r < 4; ++r)
            if (idx[r][p[r]] >= 0)
                prod = prod * MultiPoly::variable(6, idx[r][p[r]]);
        int sign = 1;
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                if (p[a] > p[b])
                    sign = -sign;
        total += sign > 0 ? prod : -prod;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

// Expected status following the classification by (n, s).
TightStatus expected_status(int n, int s) {
    using S = TightStatus;
    if (s == 1 || n == 2)
        return S::ExistsKnown;
    if (s == 2) {
        if (n == 3 || n == 7 || n == 23)
            return S::ExistsKnown;
        for (int m = 3; m * m - 2 <= n; m += 2)
            if (m * m - 2 == n)
                return S::Open;
        return S::ExcludedComplex;
    }
    if (s == 3) {
        if (n % 3 != 2)
            return S::ExcludedComplex;
        return n == 8 || n == 23 ? S::ExistsKnown : S::Open;
    }
    if (s == 4)
        return n == 3 ? S::ExcludedComplex : S::ExcludedRealOnly;
    if (s == 5 && n == 24)
        return S::Open;
    return S::ExcludedRealOnly;
}

// Sample unit vectors of Q^3 built from Pythagorean triples.
std::vector<Point> rational_unit_points() {
    const std::vector<std::array<long, 4>> quads{
        {1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {3, 4, 0, 5}, {5, 12, 0, 13},
        {1, 2, 2, 3}, {2, 3, 6, 7}, {4, 4, 7, 9}, {8, 9, 12, 17}, {-2, 6, 9, 11}};
    std::vector<Point> pts;
    for (const auto &q : quads)
        pts.push_back({AlgNum::rational(q[0], q[3]), AlgNum::rational(q[1], q[3]),
                       AlgNum::rational(q[2], q[3])});
    return pts;
}

// The eleven two-value polynomials exactly as displayed, ± independent.
const std::vector<std::string> &two_value_texts() {
    static const std::vector<std::string> texts{
        "4x1^2±x1x2±x1±x2-1",
        "4x1^2+x2^2-1",
        "x1^3-x1±4x1^2x2±(3x1^2+2x2^2-1)",
        "2x1±x2±1",
        "5x1x2^2-x1±(2x1^2+3x2^2-1)",
        "2x1^2+x2^2-1±2x1x2",
        "3x2^2-1±2x1",
        "x1^2+x2^2-1±x1x2±x1±x2",
        "x1^2+x2^2-1±3x1x2±x1±x2",
        "x1^3-x1±4x1x2^2±(3x1^2+2x2^2-1)",
        "x1^4+3x1^2x2^2+x2^4-3x1^2-3x2^2+1±(2x1^3x2-2x1x2^3)",
    };
    return texts;
}

std::vector<MultiPoly> parsed_variants(int index) {
    ExprParser p({"x1", "x2"});
    std::vector<MultiPoly> out;
    for (const auto &t : expand_pm(two_value_texts()[index - 1]))
        out.push_back(p.parse(t));
    return out;
}

struct GramIdentity {
    std::array<const char *, 6> entries; // c12 c13 c14 c23 c24 c34
    const char *det;
};

const GramIdentity kGramIdentities[] = {
    {{"a", "a", "a", "a", "a", "a"}, "-(a-1)^3(3a+1)"},
    {{"-a", "a", "a", "a", "a", "a"}, "(a^2-1)(5a^2-1)"},
    {{"-a", "-a", "a", "a", "a", "a"}, "(a^2-1)(5a^2-1)"},
    {{"-a", "a", "a", "a", "a", "-a"}, "-(a+1)^3(3a-1)"},
    {{"-a", "-a", "-a", "a", "a", "a"}, "-(a-1)^3(3a+1)"},
    {{"-a", "a", "a", "-a", "a", "-a"}, "(a^2-1)(5a^2-1)"},
    {{"b", "a", "a", "a", "a", "a"}, "-(a-1)(b-1)(4a^2-ab-a-b-1)"},
    {{"b", "-a", "a", "a", "a", "a"}, "(a^2-1)(4a^2+b^2-1)"},
    {{"b", "a", "a", "a", "a", "-a"}, "(a+1)(b-1)(4a^2+ab+a-b-1)"},
    {{"b", "-a", "-a", "a", "a", "a"}, "(a-1)(b+1)(4a^2+ab-a+b-1)"},
    {{"b", "-a", "a", "a", "-a", "a"}, "-(a+1)(b+1)(4a^2-ab+a+b-1)"},
    {{"b", "-a", "a", "-a", "a", "a"}, "(a+1)(b-1)(4a^2+ab+a-b-1)"},
    {{"b", "-a", "a", "a", "a", "-a"}, "(a^2-1)(4a^2+b^2-1)"},
    {{"b", "b", "a", "a", "a", "a"}, "(a-1)(a^3-4a^2b+3a^2+2b^2-a-1)"},
    {{"b", "b", "-a", "a", "a", "a"}, "(a-1)(a^3+4a^2b+3a^2+2b^2-a-1)"},
    {{"b", "b", "a", "-a", "a", "a"}, "(a+1)(a^3+4a^2b-3a^2-2b^2-a+1)"},
    {{"b", "b", "a", "a", "-a", "a"}, "(a+1)(a^3+4ab^2-3a^2-2b^2-a+1)"},
    {{"b", "b", "-a", "-a", "a", "a"}, "(a+1)(a^3-4a^2b-3a^2-2b^2-a+1)"},
    {{"b", "b", "-a", "a", "-a", "a"}, "(a+1)(a^3+4ab^2-3a^2-2b^2-a+1)"},
    {{"b", "b", "a", "-a", "-a", "a"}, "(a-1)(a^3+4ab^2+3a^2+2b^2-a-1)"},
    {{"b", "-b", "a", "a", "a", "a"}, "(a-1)(a^3+4ab^2+3a^2+2b^2-a-1)"},
    {{"b", "-b", "-a", "a", "a", "a"}, "(a-1)(a^3+4ab^2+3a^2+2b^2-a-1)"},
    {{"b", "-b", "a", "-a", "a", "a"}, "(a+1)(a^3+4ab^2-3a^2-2b^2-a+1)"},
    {{"b", "-b", "a", "a", "-a", "a"}, "(a+1)(a^3-4a^2b-3a^2-2b^2-a+1)"},
    {{"b", "-b", "-a", "-a", "a", "a"}, "(a+1)(a^3+4ab^2-3a^2-2b^2-a+1)"},
    {{"b", "-b", "-a", "a", "-a", "a"}, "(a+1)(a^3+4a^2b-3a^2-2b^2-a+1)"},
    {{"b", "-b", "a", "-a", "-a", "a"}, "(a-1)(a^3+4a^2b+3a^2+2b^2-a-1)"},
    {{"b", "a", "a", "a", "a", "b"}, "-(b-1)^2(2a-b-1)(2a+b+1)"},
    {{"b", "-a", "a", "a", "a", "b"}, "(2a^2-2ab+b^2-1)(2a^2+2ab+b^2-1)"},
    {{"b", "-a", "-a", "a", "a", "b"}, "(b-1)(b+1)(4a^2+b^2-1)"},
    {{"b", "a", "-a", "-a", "a", "b"}, "-(b+1)^2(2a-b+1)(2a+b-1)"},
    {{"b", "a", "a", "a", "a", "-b"}, "(b-1)(b+1)(4a^2+b^2-1)"},
    {{"b", "-a", "a", "a", "a", "-b"}, "(2a^2-2ab+b^2-1)(2a^2+2ab+b^2-1)"},
    {{"b", "-a", "-a", "a", "a", "-b"}, "-(b+1)^2(2a-b+1)(2a+b-1)"},
    {{"b", "a", "-a", "-a", "a", "-b"}, "(b^2-1)(4a^2+b^2-1)"},
    {{"b", "b", "b", "a", "a", "a"}, "-(a-1)^2(3b^2-2a-1)"},
    {{"-b", "b", "b", "a", "a", "a"}, "(a-1)(5ab^2+2a^2+3b^2-a-1)"},
    {{"b", "b", "b", "-a", "a", "a"}, "(a+1)(5ab^2-2a^2-3b^2-a+1)"},
    {{"-b", "b", "b", "-a", "a", "a"}, "(a+1)(5ab^2-2a^2-3b^2-a+1)"},
    {{"b", "a", "a", "b", "a", "b"}, "(a^2-3ab+b^2+a+b-1)(a^2+ab+b^2-a-b-1)"},
    {{"-b", "a", "a", "b", "a", "b"}, "(a^4-2a^3b+3a^2b^2+2ab^3+b^4-3a^2-3b^2+1)"},
    {{"b", "-a", "a", "b", "a", "b"}, "(a^4+2a^3b+3a^2b^2-2ab^3+b^4-3a^2-3b^2+1)"},
    {{"-b", "-a", "a", "b", "a", "b"}, "(a^2-ab+b^2-a+b-1)(a^2+3ab+b^2+a-b-1)"},
};

} // namespace

TEST_CASE("verdict table") {
    for (int n = 2; n <= 30; ++n)
        for (int s = 1; s <= 7; ++s) {
            CAPTURE(n);
            CAPTURE(s);
            const TightVerdict v = tight_verdict(n, s);
            CHECK(v.n == n);
            CHECK(v.s == s);
            CHECK(v.status == expected_status(n, s));
            if (v.status == TightStatus::ExistsKnown)
                CHECK(!v.witness.empty());
            if (v.status == TightStatus::ExcludedComplex ||
                v.status == TightStatus::ExcludedRealOnly)
                CHECK(!v.theorem.empty());
        }
    CHECK(tight_verdict(3, 2).witness == "icosahedron_q32");
    CHECK(tight_verdict(7, 2).witness == "tight_q72");
    CHECK(tight_verdict(8, 3).witness == "e8_roots_q83");
    CHECK(tight_verdict(2, 9).status == TightStatus::ExistsKnown);
    CHECK(tight_verdict(3, 3).status == TightStatus::ExcludedComplex);
    CHECK(tight_verdict(3, 4).status == TightStatus::ExcludedComplex);
    CHECK(tight_verdict(4, 4).scope == "real");
    CHECK(std::string(to_string(TightStatus::Open)) == "Open");
    CHECK(error_of([] { (void)tight_verdict(1, 2); }) == ErrorKind::OutOfRange);
    CHECK(error_of([] { (void)tight_verdict(3, 0); }) == ErrorKind::OutOfRange);
}

TEST_CASE("s=2 counting formulas") {
    for (int m = 2; m <= 25; ++m) {
        CAPTURE(m);
        const S2Counts c = s2_counts(m);
        const long n = m * m - 2;
        CHECK(c.n == n);
        Rational minus(Integer(m - 1) * (m - 1) * (m - 1) * (m + 2), 4);
        Rational plus(Integer(m - 2) * (m + 1) * (m + 1) * (m + 1), 4);
        minus.canonicalize();
        plus.canonicalize();
        CHECK(c.n2_minus == minus);
        CHECK(c.n2_plus == plus);
        // The other points split into the two angle classes.
        CHECK(c.n2_minus + c.n2_plus == Rational(n * (n + 1) / 2 - 2));
        CHECK(c.d1 == c.n2_plus);
        CHECK(c.d2 == c.n2_minus);
        CHECK(c.d3 * 2 == c.d2);
        // (m-1)^3 (m+2) / 8 is an integer iff m is odd or m ≡ 6 mod 8.
        CHECK(c.d3_integral == (m % 2 == 1 || m % 8 == 6));
    }
    CHECK(s2_counts(3).d3 == 5);
    CHECK(s2_counts(5).d3 == 56);
    CHECK(error_of([] { (void)s2_counts(1); }) == ErrorKind::OutOfRange);
}

TEST_CASE("kernel generators restricted to unit points") {
    const Point e1{AlgNum(1), AlgNum(0), AlgNum(0)};
    for (const auto &b : rational_unit_points()) {
        const AlgNum t = b[0];
        CHECK(evaluate(kernel_generator(3, 3, e1).with_ring(Ring::Primal), b) ==
              AlgNum(7) * t.pow(3) - AlgNum(3) * t);
        CHECK(evaluate(kernel_generator(3, 4, e1).with_ring(Ring::Primal), b) ==
              AlgNum(9) * t.pow(4) - AlgNum(6) * t * t + AlgNum::rational(3, 7));
    }
}

TEST_CASE("admissible products are the kernel roots") {
    for (int n = 2; n <= 12; ++n) {
        CAPTURE(n);
        const KernelRoots k2 = kernel_roots(n, 2);
        REQUIRE(k2.squares.size() == 1);
        CHECK(k2.squares[0] == AlgNum::rational(1, n + 2));
        CHECK(k2.values.size() == 2);

        const KernelRoots k3 = kernel_roots(n, 3);
        CHECK(k3.values.size() == 3);
        CHECK(contains(k3.values, AlgNum(0)));
        for (const auto &x : k3.values)
            CHECK(AlgNum(n + 4) * x.pow(3) - AlgNum(3) * x == AlgNum(0));

        const KernelRoots k4 = kernel_roots(n, 4);
        REQUIRE(k4.values.size() == 4);
        REQUIRE(k4.squares.size() == 2);
        for (const auto &x : k4.values)
            CHECK(AlgNum(n + 6) * x.pow(4) - AlgNum(6) * x * x +
                      AlgNum::rational(3, n + 4) ==
                  AlgNum(0));
        // Vieta relations for the quadratic in t^2.
        CHECK(k4.squares[0] + k4.squares[1] == AlgNum::rational(6, n + 6));
        CHECK(k4.squares[0] * k4.squares[1] ==
              AlgNum::rational(3, (n + 4) * (n + 6)));
    }
    CHECK(error_of([] { (void)kernel_roots(3, 5); }) ==
          ErrorKind::UnsupportedExponent);
    CHECK(error_of([] { (void)kernel_roots(3, 1); }) ==
          ErrorKind::UnsupportedExponent);
}

TEST_CASE("Gram determinant") {
    const MultiPoly g = gram_det_poly();
    CHECK(g == leibniz_gram());
    CHECK(g.degree() == 4);
    const AlgNum z(0);
    CHECK(gram_det(z, z, z, z, z, z) == AlgNum(1));
    // Four vectors in a 3-dimensional space are dependent.
    const auto pts = rational_unit_points();
    for (std::size_t i = 0; i + 3 < pts.size(); ++i) {
        const Point &p1 = pts[i], &p2 = pts[i + 1], &p3 = pts[i + 2], &p4 = pts[i + 3];
        CHECK(gram_det(dot(p1, p2), dot(p1, p3), dot(p1, p4), dot(p2, p3),
                       dot(p2, p4), dot(p3, p4)) == AlgNum(0));
    }
    const AlgNum h = AlgNum::rational(1, 2);
    CHECK(gram_det(h, h, h, h, h, h) == evaluate(g, {h, h, h, h, h, h}));
}

TEST_CASE("symmetries of the Gram determinant") {
    const GramOrbitReport r = gram_orbit_check();
    CHECK(r.invariance_order == 24);
    CHECK(r.distinct_images == 30);
    CHECK(r.invariance_order * r.distinct_images == 720);
    CHECK(r.row_sign_invariant);
    ExprParser p({"a"});
    std::set<std::string> expected, got;
    for (const char *text : {"-3a^4+8a^3-6a^2+1", "5a^4-6a^2+1", "-3a^4-8a^3-6a^2+1"})
        expected.insert(p.parse(text).to_string());
    for (const auto &f : r.one_value_forms)
        got.insert(f.to_string());
    CHECK(got == expected);
    CHECK(r.admissible_squares ==
          std::vector<Rational>{Rational(1, 9), Rational(1, 5), Rational(1)});
    CHECK(r.squares_exhaustive);
}

TEST_CASE("displayed determinant identities") {
    ExprParser p({"a", "b"});
    const MultiPoly g = gram_det_poly();
    const std::size_t count = sizeof(kGramIdentities) / sizeof(kGramIdentities[0]);
    CHECK(count == 43);
    for (const auto &id : kGramIdentities) {
        CAPTURE(id.det);
        std::vector<MultiPoly> img;
        for (const char *e : id.entries)
            img.push_back(p.parse(e));
        CHECK(substitute(g, img) == p.parse(id.det));
    }
}

TEST_CASE("two-value polynomials") {
    const auto polys = two_value_polys();
    CHECK(polys.size() == 45);
    for (int index = 1; index <= 11; ++index) {
        CAPTURE(index);
        std::set<std::string> expected, got;
        for (const auto &f : parsed_variants(index))
            expected.insert(f.to_string());
        for (const auto &tv : polys)
            if (tv.index == index)
                got.insert(tv.poly.to_string());
        CHECK(got == expected);
    }
    CHECK(polys.front().label() == "g1[+,+,+]");
    CHECK(polys[8].label() == "g2");

    // Each g_i shows up as a factor of some substituted determinant.
    std::set<int> covered;
    int dividing = 0;
    for (const auto &f : two_value_factor_check())
        if (f.divides_some_determinant) {
            covered.insert(f.poly.index);
            ++dividing;
        }
    CHECK(covered.size() == 11);
    CHECK(dividing >= 11);

    const MultiPoly a = MultiPoly::variable(2, 0), b = MultiPoly::variable(2, 1);
    CHECK(divides(a - b, a * a - b * b));
    CHECK(!divides(a + b + MultiPoly::constant(2, AlgNum(1)), a * a - b * b));
}

TEST_CASE("rational roots") {
    int rest = -1;
    // (2x - 1)(x + 3)(x^2 + 1) x
    const auto r = rational_roots({0, -3, 5, -1, 5, 2}, &rest);
    CHECK(r == std::vector<Rational>{Rational(-3), Rational(0), Rational(1, 2)});
    CHECK(rest == 2);
    CHECK(rational_roots({1, 0, 1}, &rest).empty());
    CHECK(rest == 2);
}

TEST_CASE("angle certificate for q_3^3") {
    const AngleCertificate c = angle_certificate(3, 3);
    CHECK(c.conclusion == CertConclusion::NoTight);
    CHECK(c.squares_avoid_one_value);
    CHECK(c.evaluations.size() == 4 * 45);
    const AlgNum r = generator(c.tower, "r21") * AlgNum::rational(1, 7);
    CHECK(r * r == AlgNum::rational(3, 7));
    CHECK(table_mismatches(c).empty());
    // g4(0, ±r) is ±√(3/7) ± 1, never ±3/7 ± 1.
    ExprParser p({}, {{"R", r}});
    for (const auto &ev : c.evaluations)
        if (ev.poly.index == 4 && ev.x1.is_zero())
            CHECK(!in_value_set(p, "±3/7±1", ev.value));
}

TEST_CASE("angle certificate for q_3^4") {
    const AngleCertificate c = angle_certificate(3, 4);
    CHECK(c.conclusion == CertConclusion::NoTight);
    CHECK(c.squares_avoid_one_value);
    CHECK(c.evaluations.size() == 8 * 45);
    const Q34Constants k = q34_constants(c);
    REQUIRE(k.x1 * k.x1 == AlgNum::rational(7, 21) + k.s7 * AlgNum::rational(2, 21));
    CHECK(k.x1 * k.x2 * k.s21 == AlgNum(1));
    CHECK(k.x1 * k.x1 + k.x2 * k.x2 == AlgNum::rational(2, 3));
    // √(7±2√7) = √21·X, √(147±42√7) = 21·X, √(3(7±2√7)) = 3√7·X.
    CHECK(table_mismatches(c).empty());
}

TEST_CASE("certificate parameter errors") {
    CHECK(error_of([] { (void)angle_certificate(4, 3); }) == ErrorKind::UnsupportedN);
    CHECK(error_of([] { (void)angle_certificate(3, 2); }) ==
          ErrorKind::UnsupportedExponent);
    CHECK(std::string(to_string(CertConclusion::NoTight)) == "NoTight");
}
