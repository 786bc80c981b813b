#include "qw/apolar.hpp"

#include "qw/constants.hpp"

#include <map>

namespace qw {

namespace {

std::map<Exponent, std::size_t, GrlexGreater>
index_of(const std::vector<Exponent> &basis) {
    std::map<Exponent, std::size_t, GrlexGreater> idx;
    for (std::size_t i = 0; i < basis.size(); ++i)
        idx.emplace(basis[i], i);
    return idx;
}

// Falling-factorial weight (r+c)!/r! for a monomial pair.
Integer contraction_weight(const Exponent &r, const Exponent &c) {
    Integer w = 1;
    for (std::size_t i = 0; i < r.size(); ++i)
        for (int t = r[i] + 1; t <= r[i] + c[i]; ++t)
            w *= t;
    return w;
}

} // namespace

CatalecticantMatrix catalecticant(const MultiPoly &f, int k) {
    if (!f.is_homogeneous())
        throw Error(ErrorKind::NonHomogeneous,
                    "catalecticant of a non-homogeneous polynomial");
    if (f.ring() != Ring::Primal)
        throw Error(ErrorKind::RingMismatch,
                    "catalecticant needs a primal form");
    const int d = std::max(f.degree(), 0);
    if (k < 0 || k > d)
        throw Error(ErrorKind::OutOfRange, "catalecticant index out of range");
    const int n = f.n_vars();
    CatalecticantMatrix m{f, k, monomials(n, d - k), monomials(n, k), {}};
    m.entries = Matrix(m.rows.size(), m.cols.size());
    const auto ridx = index_of(m.rows);
    const auto cidx = index_of(m.cols);
    // Each term x^b of f contributes to every split b = r + c.
    for (const auto &[b, coeff] : f.terms()) {
        for (const auto &c : m.cols) {
            Exponent r(n);
            bool ok = true;
            for (int i = 0; i < n; ++i) {
                r[i] = b[i] - c[i];
                if (r[i] < 0) {
                    ok = false;
                    break;
                }
            }
            if (!ok)
                continue;
            m.entries(ridx.at(r), cidx.at(c)) =
                coeff * AlgNum(Rational(contraction_weight(r, c)));
        }
    }
    return m;
}

std::size_t exact_rank(const CatalecticantMatrix &m) { return rank(m.entries); }

std::vector<MultiPoly> catalecticant_kernel(const CatalecticantMatrix &m) {
    std::vector<MultiPoly> out;
    const int n = m.f.n_vars();
    for (const auto &v : nullspace(m.entries)) {
        MultiPoly p(n, Ring::Dual);
        for (std::size_t i = 0; i < m.cols.size(); ++i)
            p.add_term(m.cols[i], v[i]);
        out.push_back(std::move(p));
    }
    return out;
}

Integer ann_component_dim(int n, int s, int deg) {
    if (n < 1 || s < 0 || deg < 0)
        throw Error(ErrorKind::OutOfRange, "ann_component_dim arguments");
    const Integer full = binomial(deg + n - 1, n - 1);
    if (deg > 2 * s)
        return full;
    const auto m = catalecticant(q_power(n, s, false), deg);
    return full - Integer(static_cast<unsigned long>(exact_rank(m)));
}

Integer ann_component_formula(int n, int s, int deg) {
    if (deg <= s)
        return 0;
    const int k = deg - s;
    if (k > s + 1)
        return binomial(deg + n - 1, n - 1);
    Integer total = 0;
    for (int j = 0; j < k; ++j)
        if (s + k - 2 * j >= 0)
            total += harmonic_dim(n, s + k - 2 * j);
    return total;
}

HarmonicBasis apolar_generators(int n, int s) {
    if (n < 1 || s < 1)
        throw Error(ErrorKind::OutOfRange, "apolar_generators needs n, s >= 1");
    return harmonic_basis(n, s + 1, Ring::Dual);
}

MultiPoly kernel_generator(int n, int s, const Point &a) {
    if (static_cast<int>(a.size()) != n)
        throw Error(ErrorKind::DimensionMismatch, "point length differs from n");
    if (s < 2 || s > 4)
        throw Error(ErrorKind::UnsupportedExponent,
                    "kernel generators are known for s = 2, 3, 4");
    if (!dot(a, a).is_one())
        throw Error(ErrorKind::NotUnitPoint, "kernel generator needs a·a = 1");
    const MultiPoly l = linear_form(a, Ring::Dual);
    const MultiPoly q = q_power(n, 1, false, Ring::Dual);
    switch (s) {
    case 2:
        return l.pow(2) * AlgNum(n + 2) - q;
    case 3:
        return l.pow(3) * AlgNum(n + 4) - q * l * AlgNum(3);
    default:
        return l.pow(4) * AlgNum(n + 6) - q * l.pow(2) * AlgNum(6) +
               q.pow(2) * AlgNum(Rational(3, n + 4));
    }
}

MultiPoly rank_drop_form(int n, int s, const Point &a) {
    const Rational inv_b = Rational(1) / tight_value(n, s);
    MultiPoly f = q_power(n, s, false) * AlgNum(inv_b);
    add_linear_power(f, AlgNum(-1), a, 2 * s);
    return f;
}

RankDrop rank_drop_check(int n, int s, const Point &a) {
    if (static_cast<int>(a.size()) != n)
        throw Error(ErrorKind::DimensionMismatch, "point length differs from n");
    const AlgNum norm = dot(a, a);
    if (!norm.is_one() && !norm.is_zero())
        throw Error(ErrorKind::NotUnitPoint,
                    "rank drop needs a unit or isotropic point");
    RankDrop r;
    r.tight_size = tight_size(n, s).get_ui();
    r.expected = norm.is_one() ? r.tight_size - 1 : r.tight_size;
    r.rank = exact_rank(catalecticant(rank_drop_form(n, s, a), s));
    return r;
}

std::vector<MultiPoly> vanishing_forms(int n, int k,
                                       const std::vector<Point> &points) {
    const auto basis = monomials(n, k);
    Matrix ev(points.size(), basis.size());
    for (std::size_t p = 0; p < points.size(); ++p) {
        if (static_cast<int>(points[p].size()) != n)
            throw Error(ErrorKind::DimensionMismatch, "point length differs");
        for (std::size_t c = 0; c < basis.size(); ++c) {
            AlgNum v(1);
            for (int i = 0; i < n && !v.is_zero(); ++i)
                if (basis[c][i] > 0)
                    v *= points[p][i].pow(basis[c][i]);
            ev(p, c) = v;
        }
    }
    std::vector<MultiPoly> out;
    for (const auto &v : nullspace(ev)) {
        MultiPoly f(n, Ring::Dual);
        for (std::size_t c = 0; c < basis.size(); ++c)
            f.add_term(basis[c], v[c]);
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<ApolarityCheck> apolarity_consistency(
    int n, int s, const std::vector<Point> &points, int max_degree) {
    std::vector<ApolarityCheck> out;
    const MultiPoly qs = q_power(n, s, false);
    for (int k = 1; k <= max_degree; ++k) {
        ApolarityCheck c;
        c.degree = k;
        const auto forms = vanishing_forms(n, k, points);
        c.vanishing_dim = forms.size();
        c.contained = true;
        if (!forms.empty() && k <= 2 * s) {
            const auto cat = catalecticant(qs, k);
            const auto cidx = index_of(cat.cols);
            for (const auto &phi : forms) {
                std::vector<AlgNum> v(cat.cols.size());
                for (const auto &[e, coeff] : phi.terms())
                    v[cidx.at(e)] = coeff;
                for (std::size_t r = 0; r < cat.rows.size() && c.contained;
                     ++r) {
                    AlgNum acc;
                    for (std::size_t j = 0; j < v.size(); ++j)
                        if (!v[j].is_zero() && !cat.entries(r, j).is_zero())
                            acc += cat.entries(r, j) * v[j];
                    if (!acc.is_zero())
                        c.contained = false;
                }
                if (!c.contained)
                    break;
            }
        }
        out.push_back(c);
    }
    return out;
}

} // namespace qw
