#include "qw/exactfield.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace qw {

const char *to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ZeroDivisor: return "ZeroDivisor";
    case ErrorKind::BadApproxRoot: return "BadApproxRoot";
    case ErrorKind::IncompatibleTowers: return "IncompatibleTowers";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::NonHomogeneous: return "NonHomogeneous";
    case ErrorKind::MissingGenerator: return "MissingGenerator";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NotUnitPoint: return "NotUnitPoint";
    case ErrorKind::UnsupportedExponent: return "UnsupportedExponent";
    case ErrorKind::UnsupportedN: return "UnsupportedN";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Precision: return "Precision";
    }
    return "Unknown";
}

namespace {

using Vec = std::vector<Rational>;
using CSpan = std::span<const Rational>;

bool all_zero(CSpan v) {
    return std::all_of(v.begin(), v.end(),
                       [](const Rational &q) { return sgn(q) == 0; });
}

// Smallest level l <= L such that v (an element of level L) lies in K_l.
std::size_t effective_level(const FieldTower &T, std::size_t L, CSpan v) {
    while (L > 0 && all_zero(v.subspan(T.dim(L - 1)))) {
        v = v.first(T.dim(L - 1));
        --L;
    }
    return L;
}

void add_into(Vec &acc, CSpan v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0)
            acc[i] += v[i];
}

void sub_into(Vec &acc, CSpan v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0)
            acc[i] -= v[i];
}

Vec scaled(CSpan v, const Rational &c) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0)
            out[i] = v[i] * c;
    return out;
}

// Product of two elements of level l (both given with dim(l) coordinates).
Vec mul_level(const FieldTower &T, std::size_t l, CSpan a, CSpan b) {
    if (l == 0)
        return Vec{a[0] * b[0]};
    const std::size_t la = effective_level(T, l, a);
    const std::size_t lb = effective_level(T, l, b);
    if (la < l || lb < l) {
        Vec out(T.dim(l));
        if (la == 0 || lb == 0) {
            const Rational &c = la == 0 ? a[0] : b[0];
            CSpan other = la == 0 ? b : a;
            if (sgn(c) == 0)
                return out;
            for (std::size_t i = 0; i < other.size(); ++i)
                if (sgn(other[i]) != 0)
                    out[i] = other[i] * c;
            return out;
        }
        const std::size_t hi = std::max(la, lb), lo = std::min(la, lb);
        if (hi < l) {
            Vec r = mul_level(T, hi, a.first(T.dim(hi)), b.first(T.dim(hi)));
            std::copy(r.begin(), r.end(), out.begin());
            return out;
        }
        // One operand lives in the subfield K_lo: multiply chunk by chunk,
        // each chunk of the other operand being an element of K_lo.
        CSpan small = (la == lo ? a : b).first(T.dim(lo));
        CSpan big = la == lo ? b : a;
        const std::size_t w = T.dim(lo);
        for (std::size_t c = 0; c < big.size(); c += w) {
            CSpan chunk = big.subspan(c, w);
            if (all_zero(chunk))
                continue;
            Vec r = mul_level(T, lo, small, chunk);
            std::copy(r.begin(), r.end(), out.begin() + c);
        }
        return out;
    }
    const Level &lv = T.level(l);
    const std::size_t d = lv.degree, B = T.dim(l - 1);
    std::vector<Vec> c(2 * d - 1);
    for (std::size_t i = 0; i < d; ++i) {
        CSpan ai = a.subspan(i * B, B);
        if (all_zero(ai))
            continue;
        for (std::size_t j = 0; j < d; ++j) {
            CSpan bj = b.subspan(j * B, B);
            if (all_zero(bj))
                continue;
            Vec p = mul_level(T, l - 1, ai, bj);
            if (c[i + j].empty())
                c[i + j] = std::move(p);
            else
                add_into(c[i + j], p);
        }
    }
    for (std::size_t k = 2 * d - 2; k >= d; --k) {
        if (c[k].empty() || all_zero(c[k]))
            continue;
        for (std::size_t i = 0; i < d; ++i) {
            const Vec &m = lv.minpoly[i];
            if (all_zero(m))
                continue;
            Vec p = mul_level(T, l - 1, c[k], m);
            if (c[k - d + i].empty())
                c[k - d + i] = Vec(B);
            sub_into(c[k - d + i], p);
        }
    }
    Vec out(T.dim(l));
    for (std::size_t i = 0; i < d; ++i)
        if (!c[i].empty())
            std::copy(c[i].begin(), c[i].end(), out.begin() + i * B);
    return out;
}

Vec inv_level(const FieldTower &T, std::size_t l, CSpan a);

// Dense univariate polynomials over K_{l-1}, coefficients ascending.
struct PolyK {
    const FieldTower &T;
    std::size_t l; // coefficients live in level l-1

    void trim(std::vector<Vec> &p) const {
        while (!p.empty() && all_zero(p.back()))
            p.pop_back();
    }
    Vec mul(CSpan x, CSpan y) const { return mul_level(T, l - 1, x, y); }

    std::vector<Vec> times(const std::vector<Vec> &x,
                           const std::vector<Vec> &y) const {
        if (x.empty() || y.empty())
            return {};
        std::vector<Vec> out(x.size() + y.size() - 1, Vec(T.dim(l - 1)));
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j)
                if (!all_zero(x[i]) && !all_zero(y[j]))
                    add_into(out[i + j], mul(x[i], y[j]));
        trim(out);
        return out;
    }

    std::vector<Vec> minus(std::vector<Vec> x,
                           const std::vector<Vec> &y) const {
        if (x.size() < y.size())
            x.resize(y.size(), Vec(T.dim(l - 1)));
        for (std::size_t i = 0; i < y.size(); ++i)
            sub_into(x[i], y[i]);
        trim(x);
        return x;
    }

    // Quotient and remainder of x by y (y nonzero).
    std::pair<std::vector<Vec>, std::vector<Vec>>
    divmod(std::vector<Vec> x, const std::vector<Vec> &y) const {
        const Vec lc_inv = inv_level(T, l - 1, y.back());
        std::vector<Vec> q;
        trim(x);
        while (x.size() >= y.size()) {
            const std::size_t shift = x.size() - y.size();
            Vec coef = mul(x.back(), lc_inv);
            if (q.size() < shift + 1)
                q.resize(shift + 1, Vec(T.dim(l - 1)));
            q[shift] = coef;
            for (std::size_t i = 0; i < y.size(); ++i)
                if (!all_zero(y[i]))
                    sub_into(x[shift + i], mul(coef, y[i]));
            // Leading term cancels exactly; drop it even if rounding of
            // representation left explicit zeros.
            x.pop_back();
            trim(x);
        }
        return {q, x};
    }
};

Vec inv_level(const FieldTower &T, std::size_t l, CSpan a) {
    const std::size_t le = effective_level(T, l, a);
    if (le == 0) {
        if (sgn(a[0]) == 0)
            throw Error(ErrorKind::DivisionByZero, "inverse of zero");
        Vec out(T.dim(l));
        out[0] = 1 / a[0];
        return out;
    }
    if (le < l) {
        Vec r = inv_level(T, le, a.first(T.dim(le)));
        r.resize(T.dim(l));
        return r;
    }
    const Level &lv = T.level(l);
    const std::size_t B = T.dim(l - 1);
    PolyK K{T, l};
    std::vector<Vec> r0(lv.minpoly.begin(), lv.minpoly.end());
    std::vector<Vec> r1;
    for (std::size_t i = 0; i < static_cast<std::size_t>(lv.degree); ++i)
        r1.emplace_back(a.begin() + i * B, a.begin() + (i + 1) * B);
    K.trim(r1);
    Vec one(B);
    one[0] = 1;
    std::vector<Vec> s0, s1{one};
    while (r1.size() > 1) {
        auto [q, r] = K.divmod(r0, r1);
        if (r.empty())
            throw Error(ErrorKind::ZeroDivisor,
                        "element shares a factor with the minimal polynomial "
                        "of '" + lv.name + "' (reducible tower level)");
        std::vector<Vec> s2 = K.minus(s0, K.times(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    const Vec c = inv_level(T, l - 1, r1[0]);
    Vec out(T.dim(l));
    for (std::size_t i = 0; i < s1.size(); ++i) {
        Vec p = K.mul(s1[i], c);
        std::copy(p.begin(), p.end(), out.begin() + i * B);
    }
    return out;
}

std::complex<double> approx_level(const FieldTower &T, std::size_t l,
                                  CSpan a) {
    if (l == 0)
        return {a[0].get_d(), 0.0};
    const std::size_t B = T.dim(l - 1);
    const std::complex<double> root = T.level(l).approx_root;
    std::complex<double> acc = 0.0;
    for (std::size_t i = T.level(l).degree; i-- > 0;)
        acc = acc * root + approx_level(T, l - 1, a.subspan(i * B, B));
    return acc;
}

std::string rational_string(const Rational &q) { return q.get_str(); }

std::string string_level(const FieldTower &T, std::size_t l, CSpan a) {
    if (l == 0)
        return rational_string(a[0]);
    const std::size_t B = T.dim(l - 1);
    const std::string &name = T.level(l).name;
    std::string out;
    for (std::size_t i = 0; i < static_cast<std::size_t>(T.level(l).degree);
         ++i) {
        CSpan blk = a.subspan(i * B, B);
        if (all_zero(blk))
            continue;
        std::string c = string_level(T, l - 1, blk);
        std::string term;
        if (i == 0)
            term = c;
        else {
            const std::string pw =
                i == 1 ? name : name + "^" + std::to_string(i);
            if (c == "1")
                term = pw;
            else if (c == "-1")
                term = "-" + pw;
            else if (effective_level(T, l - 1, blk) == 0)
                term = c + "*" + pw;
            else
                term = "(" + c + ")*" + pw;
        }
        if (!out.empty())
            out += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
        else
            out = term;
    }
    return out.empty() ? "0" : out;
}

struct Unified {
    TowerPtr tower;
    std::size_t level;
};

Unified unify(const AlgNum &a, const AlgNum &b) {
    const std::size_t lo = std::min(a.level(), b.level());
    if (lo > 0 && a.tower() != b.tower() &&
        !a.tower()->shares_prefix(*b.tower(), lo))
        throw Error(ErrorKind::IncompatibleTowers,
                    "operands belong to unrelated field towers");
    if (a.level() >= b.level())
        return {a.tower(), a.level()};
    return {b.tower(), b.level()};
}

} // namespace

// ---------------------------------------------------------------------------
// FieldTower

TowerPtr FieldTower::rationals() {
    static const TowerPtr q = std::make_shared<const FieldTower>();
    return q;
}

bool FieldTower::shares_prefix(const FieldTower &other,
                               std::size_t upto) const {
    if (upto > depth() || upto > other.depth())
        return false;
    for (std::size_t i = 0; i < upto; ++i)
        if (levels_[i] != other.levels_[i])
            return false;
    return true;
}

std::optional<std::size_t> FieldTower::find(const std::string &name) const {
    for (std::size_t i = 0; i < levels_.size(); ++i)
        if (levels_[i]->name == name)
            return i + 1;
    return std::nullopt;
}

TowerPtr FieldTower::extended(Level level) const {
    auto t = std::make_shared<FieldTower>(*this);
    t->dims_.push_back(t->dims_.back() * level.degree);
    t->levels_.push_back(std::make_shared<const Level>(std::move(level)));
    return t;
}

// ---------------------------------------------------------------------------
// AlgNum

AlgNum::AlgNum() : tower_(FieldTower::rationals()), coords_{Rational(0)} {}

AlgNum::AlgNum(long value)
    : tower_(FieldTower::rationals()), coords_{Rational(value)} {}

AlgNum::AlgNum(const Rational &value)
    : tower_(FieldTower::rationals()), coords_{value} {
    coords_[0].canonicalize();
}

AlgNum::AlgNum(const TowerPtr &tower, std::size_t level, Vec coords)
    : tower_(tower), level_(level), coords_(std::move(coords)) {
    if (level_ > tower_->depth() || coords_.size() != tower_->dim(level_))
        throw Error(ErrorKind::DimensionMismatch,
                    "coordinate vector does not match tower level");
    for (auto &q : coords_)
        q.canonicalize();
    demote();
}

AlgNum AlgNum::generator(const TowerPtr &tower, std::size_t level) {
    if (level == 0 || level > tower->depth())
        throw Error(ErrorKind::OutOfRange, "no such tower level");
    Vec c(tower->dim(level));
    c[tower->dim(level - 1)] = 1;
    return AlgNum(tower, level, std::move(c));
}

void AlgNum::demote() {
    const std::size_t l = effective_level(*tower_, level_, coords_);
    if (l != level_) {
        coords_.resize(tower_->dim(l));
        level_ = l;
    }
    if (level_ == 0)
        tower_ = FieldTower::rationals();
}

bool AlgNum::is_zero() const { return level_ == 0 && sgn(coords_[0]) == 0; }

bool AlgNum::is_one() const { return level_ == 0 && coords_[0] == 1; }

const Rational &AlgNum::to_rational() const {
    if (level_ != 0)
        throw Error(ErrorKind::OutOfRange,
                    "value is not rational: " + to_string());
    return coords_[0];
}

AlgNum AlgNum::lifted(const TowerPtr &tower, std::size_t level) const {
    if (level < level_ ||
        (level_ > 0 && !tower->shares_prefix(*tower_, level_)))
        throw Error(ErrorKind::IncompatibleTowers,
                    "cannot lift into a tower that does not extend ours");
    AlgNum r;
    r.tower_ = tower;
    r.level_ = level;
    r.coords_ = coords_;
    r.coords_.resize(tower->dim(level));
    return r;
}

AlgNum AlgNum::operator-() const {
    AlgNum r = *this;
    for (auto &q : r.coords_)
        q = -q;
    return r;
}

AlgNum &AlgNum::operator+=(const AlgNum &other) {
    const Unified u = unify(*this, other);
    tower_ = u.tower;
    level_ = u.level;
    coords_.resize(tower_->dim(level_));
    add_into(coords_, other.coords_);
    demote();
    return *this;
}

AlgNum &AlgNum::operator-=(const AlgNum &other) {
    const Unified u = unify(*this, other);
    tower_ = u.tower;
    level_ = u.level;
    coords_.resize(tower_->dim(level_));
    sub_into(coords_, other.coords_);
    demote();
    return *this;
}

AlgNum operator*(const AlgNum &a, const AlgNum &b) {
    if (a.level_ == 0 && b.level_ == 0)
        return AlgNum(a.coords_[0] * b.coords_[0]);
    if (a.level_ == 0 || b.level_ == 0) {
        const AlgNum &x = a.level_ == 0 ? b : a;
        const Rational &c = a.level_ == 0 ? a.coords_[0] : b.coords_[0];
        if (sgn(c) == 0)
            return AlgNum();
        AlgNum r;
        r.tower_ = x.tower_;
        r.level_ = x.level_;
        r.coords_ = scaled(x.coords_, c);
        return r;
    }
    const Unified u = unify(a, b);
    const FieldTower &T = *u.tower;
    Vec ca = a.coords_, cb = b.coords_;
    ca.resize(T.dim(u.level));
    cb.resize(T.dim(u.level));
    AlgNum r;
    r.tower_ = u.tower;
    r.level_ = u.level;
    r.coords_ = mul_level(T, u.level, ca, cb);
    r.demote();
    return r;
}

AlgNum &AlgNum::operator*=(const AlgNum &other) {
    *this = *this * other;
    return *this;
}

AlgNum &AlgNum::operator/=(const AlgNum &other) {
    *this = *this * other.inv();
    return *this;
}

bool operator==(const AlgNum &a, const AlgNum &b) {
    // Values may carry padded (lifted) representations, so compare the
    // common prefix and require the excess of the longer one to vanish.
    const std::size_t common = std::min(a.level_, b.level_);
    if (common > 0 && a.tower_ != b.tower_ &&
        !a.tower_->shares_prefix(*b.tower_, common))
        throw Error(ErrorKind::IncompatibleTowers,
                    "comparing values of unrelated towers");
    const auto &x = a.coords_.size() <= b.coords_.size() ? a.coords_ : b.coords_;
    const auto &y = a.coords_.size() <= b.coords_.size() ? b.coords_ : a.coords_;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != y[i])
            return false;
    for (std::size_t i = x.size(); i < y.size(); ++i)
        if (sgn(y[i]) != 0)
            return false;
    return true;
}

AlgNum AlgNum::inv() const {
    AlgNum r;
    r.tower_ = tower_;
    r.level_ = level_;
    r.coords_ = inv_level(*tower_, level_, coords_);
    r.demote();
    return r;
}

AlgNum AlgNum::pow(long exponent) const {
    if (exponent < 0)
        return inv().pow(-exponent);
    AlgNum result(1), base = *this;
    while (exponent > 0) {
        if (exponent & 1)
            result *= base;
        exponent >>= 1;
        if (exponent > 0)
            base *= base;
    }
    return result;
}

std::complex<double> AlgNum::approx() const {
    return approx_level(*tower_, level_, coords_);
}

std::string AlgNum::to_string() const {
    return string_level(*tower_, level_, coords_);
}

// ---------------------------------------------------------------------------
// Tower construction

namespace {

std::complex<double> approx_poly(const std::vector<AlgNum> &poly,
                                 std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = poly.size(); i-- > 0;)
        acc = acc * z + poly[i].approx();
    return acc;
}

std::complex<double> approx_poly_derivative(const std::vector<AlgNum> &poly,
                                            std::complex<double> z) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = poly.size(); i-- > 1;)
        acc = acc * z + static_cast<double>(i) * poly[i].approx();
    return acc;
}

} // namespace

std::complex<double> polish_root(const std::vector<AlgNum> &poly,
                                 std::complex<double> guess) {
    std::complex<double> z = guess;
    for (int it = 0; it < 100; ++it) {
        const std::complex<double> d = approx_poly_derivative(poly, z);
        if (std::abs(d) == 0.0)
            break;
        const std::complex<double> step = approx_poly(poly, z) / d;
        z -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z)))
            break;
    }
    return z;
}

TowerPtr adjoin(const TowerPtr &tower, const std::string &name,
                const std::vector<AlgNum> &minpoly,
                std::complex<double> approx_root) {
    if (minpoly.size() < 3)
        throw Error(ErrorKind::OutOfRange,
                    "minimal polynomial of '" + name +
                        "' must have degree at least 2");
    if (!minpoly.back().is_one())
        throw Error(ErrorKind::OutOfRange,
                    "minimal polynomial of '" + name + "' is not monic");
    const std::size_t top = tower->depth();
    Level lv;
    lv.name = name;
    lv.degree = static_cast<int>(minpoly.size() - 1);
    for (const AlgNum &c : minpoly)
        lv.minpoly.push_back(c.lifted(tower, top).coords());
    const double residual = std::abs(approx_poly(minpoly, approx_root));
    if (!(residual <= 1e-6))
        throw Error(ErrorKind::BadApproxRoot,
                    "|minpoly(approx_root)| = " + std::to_string(residual) +
                        " for generator '" + name + "'");
    const std::complex<double> polished = polish_root(minpoly, approx_root);
    lv.approx_root = std::abs(polished - approx_root) < 1e-3 ? polished
                                                              : approx_root;
    return tower->extended(std::move(lv));
}

std::vector<Integer> cyclotomic_polynomial(int m) {
    if (m < 1)
        throw Error(ErrorKind::OutOfRange, "cyclotomic order must be >= 1");
    // x^m - 1 divided by every Phi_d with d | m, d < m.
    std::vector<Integer> num(m + 1);
    num[0] = -1;
    num[m] = 1;
    for (int d = 1; d < m; ++d) {
        if (m % d != 0)
            continue;
        const std::vector<Integer> den = cyclotomic_polynomial(d);
        const std::size_t dn = den.size() - 1;
        std::vector<Integer> q(num.size() - dn);
        for (std::size_t k = num.size(); k-- > dn;) {
            const Integer c = num[k]; // den is monic
            q[k - dn] = c;
            for (std::size_t i = 0; i <= dn; ++i)
                num[k - dn + i] -= c * den[i];
        }
        num = std::move(q);
    }
    return num;
}

TowerPtr adjoin_root_of_unity(const TowerPtr &tower, int m,
                              const std::string &name) {
    if (m < 3)
        throw Error(ErrorKind::OutOfRange,
                    "roots of unity of order < 3 are rational");
    std::vector<AlgNum> poly;
    for (const Integer &c : cyclotomic_polynomial(m))
        poly.emplace_back(Rational(c));
    const double angle = 2.0 * std::numbers::pi / m;
    TowerPtr t = adjoin(tower, name.empty() ? "zeta" + std::to_string(m) : name,
                        poly, std::polar(1.0, angle));
    Level lv = t->level(t->depth());
    lv.cyclotomic_order = m;
    lv.approx_root = std::polar(1.0, angle);
    return tower->extended(std::move(lv));
}

TowerPtr adjoin_sqrt(const TowerPtr &tower, const std::string &name,
                     const AlgNum &value, std::complex<double> approx) {
    return adjoin(tower, name, {-value, AlgNum(0), AlgNum(1)}, approx);
}

AlgNum generator(const TowerPtr &tower, const std::string &name) {
    const auto l = tower->find(name);
    if (!l)
        throw Error(ErrorKind::MissingGenerator,
                    "tower has no generator named '" + name + "'");
    return AlgNum::generator(tower, *l);
}

std::optional<AlgNum> find_imaginary_unit(const TowerPtr &tower) {
    for (std::size_t l = 1; l <= tower->depth(); ++l) {
        const Level &lv = tower->level(l);
        if (lv.cyclotomic_order > 0 && lv.cyclotomic_order % 4 == 0)
            return AlgNum::generator(tower, l).pow(lv.cyclotomic_order / 4);
        if (lv.degree == 2) {
            const AlgNum t = AlgNum::generator(tower, l);
            const AlgNum sq = t * t;
            if (sq == AlgNum(-1))
                return lv.approx_root.imag() > 0 ? t : -t;
        }
    }
    return std::nullopt;
}

AlgNum evaluate_univariate(const std::vector<AlgNum> &poly, const AlgNum &x) {
    AlgNum acc;
    for (std::size_t i = poly.size(); i-- > 0;)
        acc = acc * x + poly[i];
    return acc;
}

} // namespace qw
