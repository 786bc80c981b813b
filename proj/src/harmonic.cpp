#include "qw/harmonic.hpp"

#include <cstdlib>
#include <map>

namespace qw {

Integer harmonic_dim(int n, int d) {
    if (n < 1 || d < 0)
        throw Error(ErrorKind::OutOfRange, "harmonic_dim needs n >= 1, d >= 0");
    const Integer top = binomial(d + n - 1, n - 1);
    const Integer low = d >= 2 ? binomial(d + n - 3, n - 1) : Integer(0);
    return top - low;
}

namespace {

std::map<Exponent, std::size_t, GrlexGreater>
index_of(const std::vector<Exponent> &basis) {
    std::map<Exponent, std::size_t, GrlexGreater> idx;
    for (std::size_t i = 0; i < basis.size(); ++i)
        idx.emplace(basis[i], i);
    return idx;
}

MultiPoly from_coords(int n, Ring ring, const std::vector<Exponent> &basis,
                      const std::vector<AlgNum> &v) {
    MultiPoly p(n, ring);
    for (std::size_t i = 0; i < basis.size(); ++i)
        p.add_term(basis[i], v[i]);
    return p;
}

} // namespace

Matrix laplacian_matrix(int n, int d) {
    const auto cols = monomials(n, d);
    const auto rows = monomials(n, d - 2);
    const auto ridx = index_of(rows);
    Matrix m(rows.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (int i = 0; i < n; ++i) {
            if (cols[c][i] < 2)
                continue;
            Exponent e = cols[c];
            e[i] -= 2;
            m(ridx.at(e), c) += AlgNum(static_cast<long>(cols[c][i]) *
                                       (cols[c][i] - 1));
        }
    return m;
}

HarmonicBasis harmonic_basis(int n, int d, Ring ring) {
    HarmonicBasis out{n, d, {}};
    const auto cols = monomials(n, d);
    if (d < 2) {
        for (const auto &e : cols)
            out.elements.push_back(MultiPoly::monomial(n, e, AlgNum(1), ring));
        return out;
    }
    for (const auto &v : nullspace(laplacian_matrix(n, d)))
        out.elements.push_back(from_coords(n, ring, cols, v));
    return out;
}

std::vector<HarmonicComponent> harmonic_decompose(const MultiPoly &f) {
    if (!f.is_homogeneous())
        throw Error(ErrorKind::NonHomogeneous,
                    "harmonic decomposition needs a homogeneous form");
    std::vector<HarmonicComponent> out;
    if (f.is_zero())
        return out;
    const int n = f.n_vars();
    const int d = f.degree();
    const Ring ring = f.ring();
    const auto basis = monomials(n, d);
    const auto idx = index_of(basis);

    // Columns: q^j h for h running over a harmonic basis of degree d-2j.
    struct Column {
        int j;
        MultiPoly h;
    };
    std::vector<Column> columns;
    for (int j = 0; 2 * j <= d; ++j) {
        for (auto &h : harmonic_basis(n, d - 2 * j, ring).elements)
            columns.push_back({j, std::move(h)});
    }
    Matrix m(basis.size(), columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        const MultiPoly g = q_power(n, columns[c].j, false, ring) * columns[c].h;
        for (const auto &[e, v] : g.terms())
            m(idx.at(e), c) = v;
    }
    std::vector<AlgNum> rhs(basis.size());
    for (const auto &[e, v] : f.terms())
        rhs[idx.at(e)] = v;
    const auto x = solve(m, rhs);
    if (!x)
        throw Error(ErrorKind::DimensionMismatch,
                    "harmonic decomposition system is inconsistent");
    std::map<int, MultiPoly> parts;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if ((*x)[c].is_zero())
            continue;
        auto it = parts.try_emplace(columns[c].j, n, ring).first;
        it->second += columns[c].h * (*x)[c];
    }
    for (auto &[j, h] : parts)
        if (!h.is_zero())
            out.push_back({j, std::move(h)});
    return out;
}

MultiPoly harmonic_reconstruct(int n, Ring ring,
                               const std::vector<HarmonicComponent> &parts) {
    MultiPoly f(n, ring);
    for (const auto &p : parts)
        f += q_power(n, p.j, false, ring) * p.h;
    return f;
}

MultiPoly uvz_change(const MultiPoly &f, UvzDirection direction,
                     const TowerPtr &tower) {
    const int n = f.n_vars();
    if (n != 2 && n != 3)
        throw Error(ErrorKind::DimensionMismatch,
                    "(u, v, z) coordinates need two or three variables");
    const auto i = find_imaginary_unit(tower);
    if (!i)
        throw Error(ErrorKind::MissingGenerator,
                    "coordinate change needs i in the tower");
    const Ring ring = f.ring();
    const MultiPoly a = MultiPoly::variable(n, 0, ring);
    const MultiPoly b = MultiPoly::variable(n, 1, ring);
    std::vector<MultiPoly> images;
    if (direction == UvzDirection::ToUvz) {
        // y1 = u + v, y2 = -i (u - v)
        images = {a + b, (a - b) * (-*i)};
    } else {
        // u = (y1 + i y2)/2, v = (y1 - i y2)/2
        const AlgNum half = AlgNum::rational(1, 2);
        images = {(a + b * *i) * half, (a - b * *i) * half};
    }
    if (n == 3)
        images.push_back(MultiPoly::variable(n, 2, ring));
    return substitute(f, images);
}

MultiPoly laplacian_uvz(const MultiPoly &f) {
    MultiPoly out = derivative(derivative(f, 0), 1);
    if (f.n_vars() == 3)
        out += derivative(derivative(f, 2), 2);
    return out;
}

MultiPoly harmonic_weight_element(int d, int k) {
    if (d < 0 || std::abs(k) > d)
        throw Error(ErrorKind::OutOfRange, "weight out of range");
    const int ak = std::abs(k);
    const int pu = (ak + k) / 2, pv = (ak - k) / 2;
    MultiPoly h(3, Ring::Dual);
    for (int j = 0; 2 * j <= d - ak; ++j) {
        const int eu = pu + j, ev = pv + j, ez = d - ak - 2 * j;
        Rational c(1, 1);
        c /= Rational(factorial(eu) * factorial(ev) * factorial(ez));
        if ((pu + j) % 2 != 0)
            c = -c;
        h.add_term({eu, ev, ez}, AlgNum(c));
    }
    return h * AlgNum(Rational(Integer(1), binomial(2 * d, k + d)));
}

HarmonicBasis harmonic_basis3(int d) {
    HarmonicBasis out{3, d, {}};
    for (int k = d; k >= -d; --k)
        out.elements.push_back(harmonic_weight_element(d, k));
    return out;
}

MultiPoly sl2_apply(Sl2Op op, const MultiPoly &f) {
    if (f.n_vars() != 3)
        throw Error(ErrorKind::DimensionMismatch,
                    "sl2 operators act on polynomials in (u, v, z)");
    const Ring ring = f.ring();
    const MultiPoly u = MultiPoly::variable(3, 0, ring);
    const MultiPoly v = MultiPoly::variable(3, 1, ring);
    const MultiPoly z = MultiPoly::variable(3, 2, ring);
    const MultiPoly zero(3, ring);
    std::vector<MultiPoly> img;
    switch (op) {
    case Sl2Op::H:
        img = {u * AlgNum(2), v * AlgNum(-2), zero};
        break;
    case Sl2Op::E:
        img = {zero, z, u * AlgNum(-2)};
        break;
    case Sl2Op::F:
        img = {-z, zero, v * AlgNum(2)};
        break;
    }
    MultiPoly out(3, ring);
    for (int i = 0; i < 3; ++i)
        if (!img[i].is_zero())
            out += img[i] * derivative(f, i);
    return out;
}

} // namespace qw
