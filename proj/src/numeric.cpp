// Ball arithmetic over MPFR for certified numeric images of tower elements.
//
// A real ball is a midpoint (working precision, round-to-nearest) plus a
// radius (kept at 64 bits, always rounded upward).  Complex balls are
// rectangular: independent real balls for the real and imaginary parts.
// Generator roots are refined by Newton iteration on midpoints and then
// enclosed using the classical bound: some root of a degree-d polynomial p
// lies within d·|p(z)|/|p'(z)| of z.

#include "qw/exactfield.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

namespace qw {

namespace {

constexpr mpfr_prec_t kRadiusPrec = 64;

class Mpfr {
  public:
    explicit Mpfr(mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Mpfr(const Mpfr &o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Mpfr &operator=(const Mpfr &o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    ~Mpfr() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

  private:
    mpfr_t v_;
};

struct Ball {
    Mpfr mid;
    Mpfr rad;
    explicit Ball(mpfr_prec_t prec) : mid(prec), rad(kRadiusPrec) {}
};

// rad += 2^(exp(mid) - prec): bound for a round-to-nearest error in mid.
void add_rounding_error(Ball &b, int ternary) {
    if (ternary == 0 || mpfr_zero_p(b.mid.get()))
        return;
    Mpfr ulp(kRadiusPrec);
    mpfr_set_ui_2exp(ulp.get(), 1,
                     mpfr_get_exp(b.mid.get()) -
                         static_cast<mpfr_exp_t>(mpfr_get_prec(b.mid.get())),
                     MPFR_RNDU);
    mpfr_add(b.rad.get(), b.rad.get(), ulp.get(), MPFR_RNDU);
}

Ball ball_from_rational(const Rational &q, mpfr_prec_t prec) {
    Ball b(prec);
    const int t = mpfr_set_q(b.mid.get(), q.get_mpq_t(), MPFR_RNDN);
    add_rounding_error(b, t);
    return b;
}

Ball ball_add(const Ball &a, const Ball &b, bool subtract = false) {
    Ball r(mpfr_get_prec(a.mid.get()));
    const int t = subtract
                      ? mpfr_sub(r.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN)
                      : mpfr_add(r.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
    mpfr_add(r.rad.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
    add_rounding_error(r, t);
    return r;
}

Ball ball_mul(const Ball &a, const Ball &b) {
    Ball r(mpfr_get_prec(a.mid.get()));
    const int t = mpfr_mul(r.mid.get(), a.mid.get(), b.mid.get(), MPFR_RNDN);
    Mpfr am(kRadiusPrec), bm(kRadiusPrec), tmp(kRadiusPrec);
    mpfr_abs(am.get(), a.mid.get(), MPFR_RNDU);
    mpfr_abs(bm.get(), b.mid.get(), MPFR_RNDU);
    mpfr_mul(r.rad.get(), am.get(), b.rad.get(), MPFR_RNDU);
    mpfr_mul(tmp.get(), bm.get(), a.rad.get(), MPFR_RNDU);
    mpfr_add(r.rad.get(), r.rad.get(), tmp.get(), MPFR_RNDU);
    mpfr_mul(tmp.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
    mpfr_add(r.rad.get(), r.rad.get(), tmp.get(), MPFR_RNDU);
    add_rounding_error(r, t);
    return r;
}

// Enclosure of 1/a; an infinite radius signals that a may contain zero.
Ball ball_inv(const Ball &a) {
    Ball r(mpfr_get_prec(a.mid.get()));
    Mpfr lower(kRadiusPrec); // |mid| - rad, rounded down
    mpfr_abs(lower.get(), a.mid.get(), MPFR_RNDD);
    mpfr_sub(lower.get(), lower.get(), a.rad.get(), MPFR_RNDD);
    if (mpfr_sgn(lower.get()) <= 0) {
        mpfr_set_ui(r.mid.get(), 0, MPFR_RNDN);
        mpfr_set_inf(r.rad.get(), 1);
        return r;
    }
    const int t = mpfr_ui_div(r.mid.get(), 1, a.mid.get(), MPFR_RNDN);
    Mpfr den(kRadiusPrec);
    mpfr_abs(den.get(), a.mid.get(), MPFR_RNDD);
    mpfr_mul(den.get(), den.get(), lower.get(), MPFR_RNDD);
    mpfr_div(r.rad.get(), a.rad.get(), den.get(), MPFR_RNDU);
    add_rounding_error(r, t);
    return r;
}

struct CBall {
    Ball re, im;
    explicit CBall(mpfr_prec_t prec) : re(prec), im(prec) {}
    CBall(Ball r, Ball i) : re(std::move(r)), im(std::move(i)) {}
};

CBall cadd(const CBall &a, const CBall &b) {
    return {ball_add(a.re, b.re), ball_add(a.im, b.im)};
}

CBall csub(const CBall &a, const CBall &b) {
    return {ball_add(a.re, b.re, true), ball_add(a.im, b.im, true)};
}

CBall cmul(const CBall &a, const CBall &b) {
    return {ball_add(ball_mul(a.re, b.re), ball_mul(a.im, b.im), true),
            ball_add(ball_mul(a.re, b.im), ball_mul(a.im, b.re))};
}

CBall cinv(const CBall &a) {
    const Ball n = ball_add(ball_mul(a.re, a.re), ball_mul(a.im, a.im));
    const Ball ni = ball_inv(n);
    Ball im = ball_mul(a.im, ni);
    mpfr_neg(im.mid.get(), im.mid.get(), MPFR_RNDN);
    return {ball_mul(a.re, ni), std::move(im)};
}

void drop_radius(CBall &z) {
    mpfr_set_zero(z.re.rad.get(), 1);
    mpfr_set_zero(z.im.rad.get(), 1);
}

// Upper bound on |z| including the radius.
void abs_upper(const CBall &z, Mpfr &out) {
    Mpfr a(kRadiusPrec), b(kRadiusPrec);
    mpfr_abs(a.get(), z.re.mid.get(), MPFR_RNDU);
    mpfr_add(a.get(), a.get(), z.re.rad.get(), MPFR_RNDU);
    mpfr_abs(b.get(), z.im.mid.get(), MPFR_RNDU);
    mpfr_add(b.get(), b.get(), z.im.rad.get(), MPFR_RNDU);
    mpfr_hypot(out.get(), a.get(), b.get(), MPFR_RNDU);
}

// Lower bound on |z| over the ball (0 if the ball may contain 0).
void abs_lower(const CBall &z, Mpfr &out) {
    Mpfr a(kRadiusPrec), b(kRadiusPrec);
    mpfr_abs(a.get(), z.re.mid.get(), MPFR_RNDD);
    mpfr_sub(a.get(), a.get(), z.re.rad.get(), MPFR_RNDD);
    if (mpfr_sgn(a.get()) < 0)
        mpfr_set_zero(a.get(), 1);
    mpfr_abs(b.get(), z.im.mid.get(), MPFR_RNDD);
    mpfr_sub(b.get(), b.get(), z.im.rad.get(), MPFR_RNDD);
    if (mpfr_sgn(b.get()) < 0)
        mpfr_set_zero(b.get(), 1);
    mpfr_hypot(out.get(), a.get(), b.get(), MPFR_RNDD);
}

std::string decimal(mpfr_srcptr x, int digits) {
    if (mpfr_zero_p(x))
        return "0";
    if (mpfr_inf_p(x))
        return mpfr_sgn(x) > 0 ? "inf" : "-inf";
    char *buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, x);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

} // namespace

struct NumericContext::Impl {
    TowerPtr tower;
    mpfr_prec_t prec;
    std::vector<CBall> roots; // roots[l-1] for level l

    CBall eval_level(std::size_t l, std::span<const Rational> a) const {
        if (l == 0) {
            CBall z(prec);
            z.re = ball_from_rational(a[0], prec);
            return z;
        }
        const std::size_t B = tower->dim(l - 1);
        const std::size_t d = tower->level(l).degree;
        CBall acc(prec);
        for (std::size_t i = d; i-- > 0;) {
            acc = cmul(acc, roots[l - 1]);
            auto blk = a.subspan(i * B, B);
            if (std::all_of(blk.begin(), blk.end(),
                            [](const Rational &q) { return sgn(q) == 0; }))
                continue;
            acc = cadd(acc, eval_level(l - 1, blk));
        }
        return acc;
    }

    void refine_level(std::size_t l) {
        const Level &lv = tower->level(l);
        std::vector<CBall> coef;
        for (const auto &c : lv.minpoly)
            coef.push_back(eval_level(l - 1, c));
        auto poly_and_derivative = [&](const CBall &z) {
            CBall p(prec), dp(prec);
            for (std::size_t i = coef.size(); i-- > 0;) {
                dp = cadd(cmul(dp, z), p);
                p = cadd(cmul(p, z), coef[i]);
            }
            return std::pair{p, dp};
        };
        CBall z(prec);
        mpfr_set_d(z.re.mid.get(), lv.approx_root.real(), MPFR_RNDN);
        mpfr_set_d(z.im.mid.get(), lv.approx_root.imag(), MPFR_RNDN);
        Mpfr step(kRadiusPrec), tol(kRadiusPrec);
        mpfr_set_ui_2exp(tol.get(), 1, -static_cast<mpfr_exp_t>(prec) + 4,
                         MPFR_RNDN);
        for (int it = 0; it < 200; ++it) {
            auto [p, dp] = poly_and_derivative(z);
            drop_radius(p);
            drop_radius(dp);
            CBall delta = cmul(p, cinv(dp));
            drop_radius(delta);
            z = csub(z, delta);
            drop_radius(z);
            abs_upper(delta, step);
            if (mpfr_cmp(step.get(), tol.get()) <= 0 && it > 2)
                break;
        }
        auto [p, dp] = poly_and_derivative(z);
        Mpfr num(kRadiusPrec), den(kRadiusPrec), r(kRadiusPrec);
        abs_upper(p, num);
        abs_lower(dp, den);
        if (mpfr_sgn(den.get()) <= 0) {
            mpfr_set_inf(r.get(), 1);
        } else {
            mpfr_mul_ui(num.get(), num.get(), lv.degree, MPFR_RNDU);
            mpfr_div(r.get(), num.get(), den.get(), MPFR_RNDU);
        }
        mpfr_set(z.re.rad.get(), r.get(), MPFR_RNDU);
        mpfr_set(z.im.rad.get(), r.get(), MPFR_RNDU);
        roots.push_back(std::move(z));
    }
};

NumericContext::NumericContext(const TowerPtr &tower, int precision_bits)
    : impl_(std::make_unique<Impl>()), precision_(precision_bits) {
    if (precision_bits < 32)
        throw Error(ErrorKind::Precision, "precision must be at least 32 bits");
    impl_->tower = tower;
    // Guard bits absorb the error growth of Horner evaluation.
    impl_->prec = precision_bits + 32;
    for (std::size_t l = 1; l <= tower->depth(); ++l)
        impl_->refine_level(l);
}

NumericContext::~NumericContext() = default;

ComplexInterval NumericContext::eval(const AlgNum &x) const {
    ComplexInterval out;
    if (x.is_zero()) {
        out.re_mid = out.im_mid = out.radius = "0";
        out.exact_zero = out.contains_zero = true;
        return out;
    }
    const AlgNum y = x.lifted(impl_->tower, x.level());
    const CBall z = impl_->eval_level(y.level(), y.coords());
    const int digits = static_cast<int>(precision_ * 0.30103) + 1;
    out.re_mid = decimal(z.re.mid.get(), digits);
    out.im_mid = decimal(z.im.mid.get(), digits);
    out.re_approx = mpfr_get_d(z.re.mid.get(), MPFR_RNDN);
    out.im_approx = mpfr_get_d(z.im.mid.get(), MPFR_RNDN);
    Mpfr rad(kRadiusPrec);
    mpfr_max(rad.get(), z.re.rad.get(), z.im.rad.get(), MPFR_RNDU);
    out.radius = decimal(rad.get(), 6);
    out.radius_approx = mpfr_get_d(rad.get(), MPFR_RNDU);
    Mpfr lo(kRadiusPrec);
    abs_lower(z, lo);
    out.contains_zero = mpfr_sgn(lo.get()) == 0;
    return out;
}

ComplexInterval numeric_eval(const AlgNum &x, int precision_bits) {
    const NumericContext ctx(x.tower(), precision_bits);
    return ctx.eval(x);
}

} // namespace qw
