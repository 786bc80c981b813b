#include "qw/multipoly.hpp"

#include <algorithm>
#include <numeric>

namespace qw {

const char *ring_name(Ring ring) noexcept {
    return ring == Ring::Primal ? "x" : "y";
}

int total_degree(const Exponent &e) {
    return std::accumulate(e.begin(), e.end(), 0);
}

bool GrlexGreater::operator()(const Exponent &a, const Exponent &b) const {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db)
        return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(),
                                        a.end());
}

MultiPoly::MultiPoly(int n_vars, Ring ring) : n_(n_vars), ring_(ring) {}

MultiPoly MultiPoly::constant(int n_vars, const AlgNum &c, Ring ring) {
    MultiPoly p(n_vars, ring);
    p.add_term(Exponent(n_vars, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(int n_vars, int index, Ring ring) {
    if (index < 0 || index >= n_vars)
        throw Error(ErrorKind::DimensionMismatch, "variable index out of range");
    Exponent e(n_vars, 0);
    e[index] = 1;
    return monomial(n_vars, e, AlgNum(1), ring);
}

MultiPoly MultiPoly::monomial(int n_vars, const Exponent &e, const AlgNum &c,
                              Ring ring) {
    if (static_cast<int>(e.size()) != n_vars)
        throw Error(ErrorKind::DimensionMismatch,
                    "exponent length differs from variable count");
    MultiPoly p(n_vars, ring);
    p.add_term(e, c);
    return p;
}

AlgNum MultiPoly::coeff(const Exponent &e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? AlgNum() : it->second;
}

void MultiPoly::add_term(const Exponent &e, const AlgNum &c) {
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

int MultiPoly::degree() const {
    return terms_.empty() ? -1 : total_degree(terms_.begin()->first);
}

bool MultiPoly::is_homogeneous() const {
    return terms_.empty() ||
           total_degree(terms_.begin()->first) ==
               total_degree(terms_.rbegin()->first);
}

MultiPoly MultiPoly::with_ring(Ring ring) const {
    MultiPoly p = *this;
    p.ring_ = ring;
    return p;
}

void MultiPoly::check_compatible(const MultiPoly &g) const {
    if (n_ != g.n_)
        throw Error(ErrorKind::DimensionMismatch,
                    "polynomials have different variable counts");
    if (ring_ != g.ring_)
        throw Error(ErrorKind::RingMismatch,
                    "mixing primal and dual polynomials");
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly p = *this;
    for (auto &[e, c] : p.terms_)
        c = -c;
    return p;
}

MultiPoly &MultiPoly::operator+=(const MultiPoly &g) {
    check_compatible(g);
    for (const auto &[e, c] : g.terms_)
        add_term(e, c);
    return *this;
}

MultiPoly &MultiPoly::operator-=(const MultiPoly &g) {
    check_compatible(g);
    for (const auto &[e, c] : g.terms_)
        add_term(e, -c);
    return *this;
}

MultiPoly &MultiPoly::operator*=(const AlgNum &c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[e, v] : terms_)
        v *= c;
    return *this;
}

MultiPoly operator*(const MultiPoly &f, const MultiPoly &g) {
    f.check_compatible(g);
    MultiPoly out(f.n_, f.ring_);
    Exponent e(f.n_);
    for (const auto &[ef, cf] : f.terms_)
        for (const auto &[eg, cg] : g.terms_) {
            for (int i = 0; i < f.n_; ++i)
                e[i] = ef[i] + eg[i];
            out.add_term(e, cf * cg);
        }
    return out;
}

bool operator==(const MultiPoly &f, const MultiPoly &g) {
    return f.n_ == g.n_ && f.ring_ == g.ring_ && f.terms_ == g.terms_;
}

MultiPoly MultiPoly::pow(int k) const {
    if (k < 0)
        throw Error(ErrorKind::OutOfRange, "negative polynomial power");
    MultiPoly result = constant(n_, AlgNum(1), ring_);
    for (int i = 0; i < k; ++i)
        result = result * *this;
    return result;
}

std::string MultiPoly::to_string(const std::vector<std::string> &names) const {
    if (terms_.empty())
        return "0";
    auto var = [&](int i) {
        return i < static_cast<int>(names.size())
                   ? names[i]
                   : std::string(ring_name(ring_)) + std::to_string(i + 1);
    };
    std::string out;
    for (const auto &[e, c] : terms_) {
        std::string mono;
        for (int i = 0; i < n_; ++i) {
            if (e[i] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += var(i);
            if (e[i] > 1)
                mono += "^" + std::to_string(e[i]);
        }
        std::string cs = c.to_string();
        const bool compound = !c.is_rational() &&
                              cs.find_first_of("+-", 1) != std::string::npos;
        if (compound)
            cs = "(" + cs + ")";
        std::string term;
        if (mono.empty())
            term = cs;
        else if (cs == "1")
            term = mono;
        else if (cs == "-1")
            term = "-" + mono;
        else
            term = cs + "*" + mono;
        if (out.empty())
            out = term;
        else if (term[0] == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out;
}

// ---------------------------------------------------------------------------

Integer factorial(int k) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(std::max(k, 0)));
    return r;
}

Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n)
        return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return r;
}

Integer exponent_factorial(const Exponent &e) {
    Integer r = 1;
    for (int v : e)
        r *= factorial(v);
    return r;
}

namespace {

void enumerate(int n, int d, int pos, Exponent &cur,
               std::vector<Exponent> &out) {
    if (pos == n - 1) {
        cur[pos] = d;
        out.push_back(cur);
        return;
    }
    for (int k = d; k >= 0; --k) {
        cur[pos] = k;
        enumerate(n, d - k, pos + 1, cur, out);
    }
}

} // namespace

std::vector<Exponent> monomials(int n, int d) {
    std::vector<Exponent> out;
    if (n <= 0 || d < 0)
        return out;
    Exponent cur(n, 0);
    enumerate(n, d, 0, cur, out);
    return out;
}

AlgNum dot(const Point &a, const Point &b) {
    if (a.size() != b.size())
        throw Error(ErrorKind::DimensionMismatch, "points of different length");
    AlgNum s;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

MultiPoly q_power(int n, int s, bool divided, Ring ring) {
    if (n < 1 || s < 0)
        throw Error(ErrorKind::OutOfRange, "q_power needs n >= 1, s >= 0");
    // q^s = sum over |b| = s of s!/b! x^(2b).
    MultiPoly p(n, ring);
    const Integer sf = factorial(s);
    Rational scale = 1;
    if (divided)
        scale = Rational(1, 1) / (Rational(Integer(1) << s) * Rational(sf));
    for (const Exponent &b : monomials(n, s)) {
        Exponent e = b;
        for (int &v : e)
            v *= 2;
        p.add_term(e, AlgNum(Rational(sf, exponent_factorial(b)) * scale));
    }
    return p;
}

MultiPoly linear_form(const Point &a, Ring ring) {
    const int n = static_cast<int>(a.size());
    MultiPoly p(n, ring);
    for (int i = 0; i < n; ++i) {
        Exponent e(n, 0);
        e[i] = 1;
        p.add_term(e, a[i]);
    }
    return p;
}

void add_linear_power(MultiPoly &acc, const AlgNum &lambda, const Point &a,
                      int d) {
    const int n = static_cast<int>(a.size());
    if (acc.n_vars() != n)
        throw Error(ErrorKind::DimensionMismatch,
                    "point length differs from variable count");
    if (lambda.is_zero())
        return;
    std::vector<int> support;
    for (int i = 0; i < n; ++i)
        if (!a[i].is_zero())
            support.push_back(i);
    if (support.empty()) {
        if (d == 0)
            acc.add_term(Exponent(n, 0), lambda);
        return;
    }
    // Powers a_i^k for k <= d, on the support only.
    std::vector<std::vector<AlgNum>> pw(support.size());
    for (std::size_t j = 0; j < support.size(); ++j) {
        pw[j].reserve(d + 1);
        pw[j].emplace_back(1);
        for (int k = 1; k <= d; ++k)
            pw[j].push_back(pw[j].back() * a[support[j]]);
    }
    const Integer df = factorial(d);
    const int m = static_cast<int>(support.size());
    Exponent e(n, 0);
    // Depth-first walk over compositions of d into m parts, carrying the
    // partial product and partial multinomial denominator.
    std::vector<AlgNum> prod(m + 1);
    std::vector<Integer> den(m + 1);
    prod[0] = lambda;
    den[0] = 1;
    auto rec = [&](auto &&self, int j, int left) -> void {
        if (j == m - 1) {
            e[support[j]] = left;
            const AlgNum c = prod[j] * pw[j][left];
            const Integer dd = den[j] * factorial(left);
            acc.add_term(e, c * AlgNum(Rational(df, dd)));
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[support[j]] = k;
            prod[j + 1] = prod[j] * pw[j][k];
            den[j + 1] = den[j] * factorial(k);
            self(self, j + 1, left - k);
        }
    };
    rec(rec, 0, d);
}

MultiPoly linear_power(const Point &a, int d, bool divided, Ring ring) {
    MultiPoly p(static_cast<int>(a.size()), ring);
    const AlgNum lambda =
        divided ? AlgNum(Rational(Integer(1), factorial(d))) : AlgNum(1);
    add_linear_power(p, lambda, a, d);
    return p;
}

MultiPoly contract(const MultiPoly &phi, const MultiPoly &f) {
    if (phi.n_vars() != f.n_vars())
        throw Error(ErrorKind::DimensionMismatch,
                    "contraction of polynomials in different variable counts");
    if (phi.ring() != Ring::Dual || f.ring() != Ring::Primal)
        throw Error(ErrorKind::RingMismatch,
                    "contraction needs a dual operator and a primal form");
    const int n = f.n_vars();
    MultiPoly out(n, Ring::Primal);
    Exponent r(n);
    for (const auto &[a, ca] : phi.terms())
        for (const auto &[b, cb] : f.terms()) {
            bool ok = true;
            Integer w = 1;
            for (int i = 0; i < n && ok; ++i) {
                if (b[i] < a[i]) {
                    ok = false;
                    break;
                }
                r[i] = b[i] - a[i];
                for (int k = r[i] + 1; k <= b[i]; ++k)
                    w *= k;
            }
            if (ok)
                out.add_term(r, ca * cb * AlgNum(Rational(w)));
        }
    return out;
}

MultiPoly derivative(const MultiPoly &f, int index) {
    MultiPoly out(f.n_vars(), f.ring());
    for (const auto &[e, c] : f.terms()) {
        if (e[index] == 0)
            continue;
        Exponent r = e;
        r[index] -= 1;
        out.add_term(r, c * AlgNum(static_cast<long>(e[index])));
    }
    return out;
}

MultiPoly laplacian(const MultiPoly &f) {
    MultiPoly out(f.n_vars(), f.ring());
    for (const auto &[e, c] : f.terms())
        for (int i = 0; i < f.n_vars(); ++i) {
            if (e[i] < 2)
                continue;
            Exponent r = e;
            r[i] -= 2;
            out.add_term(r, c * AlgNum(static_cast<long>(e[i]) * (e[i] - 1)));
        }
    return out;
}

AlgNum evaluate(const MultiPoly &f, const Point &a) {
    if (static_cast<int>(a.size()) != f.n_vars())
        throw Error(ErrorKind::DimensionMismatch,
                    "evaluation point has wrong length");
    const int n = f.n_vars();
    const int d = std::max(f.degree(), 0);
    std::vector<std::vector<AlgNum>> pw(n);
    for (int i = 0; i < n; ++i) {
        pw[i].emplace_back(1);
        for (int k = 1; k <= d; ++k)
            pw[i].push_back(pw[i].back() * a[i]);
    }
    AlgNum s;
    for (const auto &[e, c] : f.terms()) {
        AlgNum t = c;
        for (int i = 0; i < n && !t.is_zero(); ++i)
            if (e[i] > 0)
                t *= pw[i][e[i]];
        s += t;
    }
    return s;
}

MultiPoly substitute(const MultiPoly &f, const std::vector<MultiPoly> &images) {
    if (static_cast<int>(images.size()) != f.n_vars() || images.empty())
        throw Error(ErrorKind::DimensionMismatch,
                    "substitution needs one image per variable");
    const int m = images[0].n_vars();
    const Ring ring = images[0].ring();
    const int d = std::max(f.degree(), 0);
    std::vector<std::vector<MultiPoly>> pw(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
        pw[i].push_back(MultiPoly::constant(m, AlgNum(1), ring));
        for (int k = 1; k <= d; ++k)
            pw[i].push_back(pw[i].back() * images[i]);
    }
    MultiPoly out(m, ring);
    for (const auto &[e, c] : f.terms()) {
        MultiPoly t = MultiPoly::constant(m, c, ring);
        for (std::size_t i = 0; i < images.size(); ++i)
            if (e[i] > 0)
                t = t * pw[i][e[i]];
        out += t;
    }
    return out;
}

} // namespace qw
