#include "qw/apolar.hpp"
#include "qw/constants.hpp"

#include <doctest.h>

#include <algorithm>

using namespace qw;

namespace {

Point unit(int n, int i) {
    Point a(n, AlgNum(0));
    a[i] = 1;
    return a;
}

std::size_t dim_forms(int n, int d) {
    return d < 0 ? 0 : binomial(d + n - 1, n - 1).get_ui();
}

} // namespace

TEST_CASE("small catalecticants") {
    const MultiPoly f = MultiPoly::monomial(2, {1, 1}, AlgNum(1));
    const auto m = catalecticant(f, 1);
    CHECK(m.entries.rows() == 2);
    CHECK(m.entries.cols() == 2);
    CHECK(exact_rank(m) == 2);

    const Point a{AlgNum(1), AlgNum(-2), AlgNum(3)};
    const MultiPoly l = linear_power(a, 5, false);
    for (int k = 0; k <= 5; ++k)
        CHECK(exact_rank(catalecticant(l, k)) == 1);

    CHECK(exact_rank(catalecticant(q_power(3, 2, false), 2)) == 6);
    CHECK(exact_rank(catalecticant(q_power(2, 3, false), 3)) == 4);
    CHECK(rank(Matrix::identity(4)) == 4);
    CHECK(rank(Matrix(3, 3)) == 0);

    // Entry rule against direct contraction with each dual monomial.
    const MultiPoly g = q_power(3, 2, false) + linear_power(a, 4, false);
    const auto c = catalecticant(g, 2);
    for (std::size_t col = 0; col < c.cols.size(); ++col) {
        const MultiPoly img =
            contract(MultiPoly::monomial(3, c.cols[col], AlgNum(1), Ring::Dual), g);
        for (std::size_t r = 0; r < c.rows.size(); ++r)
            CHECK(c.entries(r, col) == img.coeff(c.rows[r]));
    }
}

TEST_CASE("catalecticants of q^s have full rank") {
    for (int n = 1; n <= 4; ++n)
        for (int s = 1; s <= 4; ++s) {
            const MultiPoly q = q_power(n, s, false);
            for (int k = 0; k <= 2 * s; ++k) {
                const std::size_t expect =
                    std::min(dim_forms(n, 2 * s - k), dim_forms(n, k));
                CHECK(exact_rank(catalecticant(q, k)) == expect);
            }
        }
}

TEST_CASE("harmonic-adapted bases diagonalise the catalecticants") {
    const int n = 3;
    for (int s = 1; s <= 3; ++s) {
        const MultiPoly qd = q_power(n, s, true);
        for (int d = 1; d <= 2 * s; ++d)
            for (int k = 0; 2 * k <= d; ++k) {
                const Rational scale(Integer(1), a_constant(n, s, k));
                for (const auto &h : harmonic_basis(n, d - 2 * k, Ring::Dual).elements) {
                    const MultiPoly t =
                        q_power(n, k, false, Ring::Dual) * h * AlgNum(scale);
                    const MultiPoly img = contract(t, qd);
                    const int e = s - d + k;
                    if (e < 0)
                        CHECK(img.is_zero());
                    else
                        CHECK(img == q_power(n, e, true) * h.with_ring(Ring::Primal));
                }
            }
    }
}

TEST_CASE("apolar ideal components") {
    CHECK(ann_component_dim(2, 2, 2) == 0);
    CHECK(ann_component_dim(2, 2, 3) == 2);
    CHECK(ann_component_dim(3, 2, 3) == 7);
    for (int n = 1; n <= 4; ++n)
        for (int s = 1; s <= 3; ++s) {
            for (int deg = 0; deg <= s; ++deg)
                CHECK(ann_component_dim(n, s, deg) == 0);
            for (int deg = s + 1; deg <= 2 * s + 1; ++deg)
                CHECK(ann_component_dim(n, s, deg) ==
                      ann_component_formula(n, s, deg));
        }
}

TEST_CASE("apolar generators annihilate q^s") {
    CHECK(apolar_generators(3, 1).elements.size() == 5);
    CHECK(apolar_generators(3, 2).elements.size() == 7);
    for (int n = 2; n <= 4; ++n)
        for (int s = 1; s <= 3; ++s)
            for (const auto &g : apolar_generators(n, s).elements)
                CHECK(contract(g, q_power(n, s, false)).is_zero());
}

TEST_CASE("kernel generators and rank drop") {
    for (int s = 2; s <= 4; ++s)
        for (int n = 3; n <= 6; ++n) {
            const Point a = unit(n, 0);
            const MultiPoly g = kernel_generator(n, s, a);
            CHECK(contract(g, rank_drop_form(n, s, a)).is_zero());
            const RankDrop r = rank_drop_check(n, s, a);
            CHECK(r.rank == r.expected);
            CHECK(r.rank + 1 == tight_size(n, s).get_ui());
        }
    const Point e1 = unit(3, 0);
    const MultiPoly y1 = MultiPoly::variable(3, 0, Ring::Dual);
    CHECK(kernel_generator(3, 2, e1) ==
          y1 * y1 * AlgNum(5) - q_power(3, 1, false, Ring::Dual));
    CHECK(kernel_generator(3, 3, e1) ==
          y1.pow(3) * AlgNum(7) - q_power(3, 1, false, Ring::Dual) * y1 * AlgNum(3));

    auto t = adjoin_root_of_unity(FieldTower::rationals(), 4, "i");
    const Point iso{AlgNum(1), generator(t, "i"), AlgNum(0)};
    const RankDrop r = rank_drop_check(3, 2, iso);
    CHECK(r.rank == 6);
    CHECK(r.expected == 6);

    try {
        (void)kernel_generator(3, 2, Point{AlgNum(1), AlgNum(1), AlgNum(0)});
        FAIL("expected an exception");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::NotUnitPoint);
    }
    try {
        (void)kernel_generator(3, 5, e1);
        FAIL("expected an exception");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::UnsupportedExponent);
    }
}

TEST_CASE("divided normalisation of the rank-drop form does not drop") {
    // With both terms divided, the ratio between them changes and the
    // remainder is no longer a sum of T-1 powers.
    const int n = 3, s = 2;
    const Point a = unit(n, 0);
    const Rational inv_b = Rational(1) / tight_value(n, s);
    MultiPoly f = q_power(n, s, true) * AlgNum(inv_b);
    f -= linear_power(a, 2 * s, true);
    CHECK(exact_rank(catalecticant(f, s)) == tight_size(n, s).get_ui());
}

TEST_CASE("vanishing forms of a point set lie in the apolar ideal") {
    // Support of q_3^2 = 2/3 sum x_j^4 + 1/12 sum (x1 ± x2 ± x3)^4.
    std::vector<Point> pts;
    for (int i = 0; i < 3; ++i)
        pts.push_back(unit(3, i));
    for (int b : {1, -1})
        for (int c : {1, -1})
            pts.push_back({AlgNum(1), AlgNum(b), AlgNum(c)});
    auto checks = apolarity_consistency(3, 2, pts, 3);
    REQUIRE(checks.size() == 3);
    CHECK(checks[0].vanishing_dim == 0);
    CHECK(checks[1].vanishing_dim == 0);
    CHECK(checks[2].vanishing_dim == 3);
    for (const auto &c : checks)
        CHECK(c.contained);
    // One apolar generator that does not vanish on this point set.
    const MultiPoly y = MultiPoly::variable(3, 0, Ring::Dual);
    const MultiPoly g = y.pow(3) - y * MultiPoly::variable(3, 1, Ring::Dual).pow(2) * AlgNum(3);
    CHECK(contract(g, q_power(3, 2, false)).is_zero());
    CHECK(!evaluate(g.with_ring(Ring::Primal), pts[0]).is_zero());
}
