#pragma once

// Exact arithmetic over towers of algebraic extensions of the rationals.
//
// A tower Q = K_0 ⊂ K_1 ⊂ ... ⊂ K_L is described level by level: K_l is
// K_{l-1}[t_l]/(m_l(t_l)) for a monic m_l with coefficients in K_{l-1}.
// An element of K_l is stored as a flat vector of dim_Q(K_l) rationals in
// mixed radix: block i (of length dim_Q(K_{l-1})) is the coefficient of
// t_l^i.  Lifting from K_l to K_{l'} is therefore zero padding, and every
// operation works on the smallest level that actually holds its operands.
//
// Each generator carries one pinned complex root.  All branch choices
// (which square root, which primitive root of unity) are made by that pin;
// exact computations never depend on it, numeric evaluation does.

#include "qw/error.hpp"

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qw {

using Integer = mpz_class;
using Rational = mpq_class;

struct Level {
    std::string name;
    int degree = 0;
    // Ascending coefficients of the monic minimal polynomial; entry i is the
    // flat coordinate vector (at the previous level) of the coefficient of t^i.
    std::vector<std::vector<Rational>> minpoly;
    std::complex<double> approx_root;
    // m if the generator was adjoined as a primitive m-th root of unity.
    int cyclotomic_order = 0;
};

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

class FieldTower {
  public:
    static TowerPtr rationals();

    std::size_t depth() const noexcept { return levels_.size(); }
    // Levels are numbered 1..depth(); level 0 is Q itself.
    const Level &level(std::size_t l) const { return *levels_.at(l - 1); }
    std::size_t dim(std::size_t l) const { return dims_.at(l); }
    std::size_t dim() const { return dims_.back(); }

    // True when both towers use the very same first `upto` levels.
    bool shares_prefix(const FieldTower &other, std::size_t upto) const;
    // Index of the level with the given generator name, if any.
    std::optional<std::size_t> find(const std::string &name) const;

    // Appends a level without any validation; the adjoin* functions below
    // are the checked entry points.
    TowerPtr extended(Level level) const;

  private:
    std::vector<std::shared_ptr<const Level>> levels_;
    std::vector<std::size_t> dims_{1};
};

class AlgNum {
  public:
    AlgNum();
    AlgNum(long value); // NOLINT: implicit by design, integers embed
    AlgNum(const Rational &value); // NOLINT
    AlgNum(const TowerPtr &tower, std::size_t level,
           std::vector<Rational> coords);

    // The generator t_l of the given level.
    static AlgNum generator(const TowerPtr &tower, std::size_t level);
    static AlgNum rational(long num, long den) {
        return AlgNum(Rational(num, den));
    }

    const TowerPtr &tower() const noexcept { return tower_; }
    std::size_t level() const noexcept { return level_; }
    const std::vector<Rational> &coords() const noexcept { return coords_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const noexcept { return level_ == 0; }
    // Throws OutOfRange when the value is not rational.
    const Rational &to_rational() const;

    // Same value expressed at `level` of `tower` (which must extend ours).
    AlgNum lifted(const TowerPtr &tower, std::size_t level) const;

    AlgNum operator-() const;
    AlgNum &operator+=(const AlgNum &other);
    AlgNum &operator-=(const AlgNum &other);
    AlgNum &operator*=(const AlgNum &other);
    AlgNum &operator/=(const AlgNum &other);
    friend AlgNum operator+(AlgNum a, const AlgNum &b) { return a += b; }
    friend AlgNum operator-(AlgNum a, const AlgNum &b) { return a -= b; }
    friend AlgNum operator*(const AlgNum &a, const AlgNum &b);
    friend AlgNum operator/(const AlgNum &a, const AlgNum &b) {
        return a * b.inv();
    }
    friend bool operator==(const AlgNum &a, const AlgNum &b);

    // Throws DivisionByZero for zero, ZeroDivisor if a level minpoly turns
    // out to be reducible.
    AlgNum inv() const;
    AlgNum pow(long exponent) const;

    // Double-precision image at the pinned roots (no error control).
    std::complex<double> approx() const;

    // Human-readable form like "1/2 + 3*phi" (for diagnostics only).
    std::string to_string() const;

  private:
    void demote();

    TowerPtr tower_;
    std::size_t level_ = 0;
    std::vector<Rational> coords_;
};

// Adjoins a root of the monic polynomial given by ascending coefficients
// (leading 1 included).  Throws BadApproxRoot if |minpoly(approx_root)|
// exceeds 1e-6 at double precision.
TowerPtr adjoin(const TowerPtr &tower, const std::string &name,
                const std::vector<AlgNum> &minpoly,
                std::complex<double> approx_root);

// Adjoins a primitive m-th root of unity pinned at exp(2 pi i / m).
TowerPtr adjoin_root_of_unity(const TowerPtr &tower, int m,
                              const std::string &name = "");

// Shorthand for adjoining a square root of `value` pinned near `approx`.
TowerPtr adjoin_sqrt(const TowerPtr &tower, const std::string &name,
                     const AlgNum &value, std::complex<double> approx);

// Newton-polishes a rough root guess of a polynomial with coefficients in
// the tower, so callers need not hand-compute 1e-6 accurate pins.
std::complex<double> polish_root(const std::vector<AlgNum> &poly,
                                 std::complex<double> guess);

// Ascending integer coefficients of the m-th cyclotomic polynomial.
std::vector<Integer> cyclotomic_polynomial(int m);

// Top-level element of the tower for the generator named `name`.
AlgNum generator(const TowerPtr &tower, const std::string &name);

// A square root of -1 living in the tower, pinned to +i, if one is directly
// available (x^2+1 level, or a cyclotomic level of order divisible by 4).
std::optional<AlgNum> find_imaginary_unit(const TowerPtr &tower);

// Evaluates a polynomial (ascending coefficients) at x.
AlgNum evaluate_univariate(const std::vector<AlgNum> &poly, const AlgNum &x);

// ---------------------------------------------------------------------------
// Numeric enclosures.

// Rectangular complex interval [re_mid ± radius] + i[im_mid ± radius],
// with decimal midpoints.  Containment is guaranteed by ball arithmetic
// with outward rounding.
struct ComplexInterval {
    std::string re_mid;
    std::string im_mid;
    double re_approx = 0.0;
    double im_approx = 0.0;
    // Upper bound of the half-widths (as decimal strings and doubles; the
    // double may underflow to 0 for very high precision).
    std::string radius;
    double radius_approx = 0.0;
    bool exact_zero = false;
    bool contains_zero = false;
};

class NumericContext {
  public:
    NumericContext(const TowerPtr &tower, int precision_bits);
    ~NumericContext();
    NumericContext(const NumericContext &) = delete;
    NumericContext &operator=(const NumericContext &) = delete;

    ComplexInterval eval(const AlgNum &x) const;
    int precision() const noexcept { return precision_; }

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int precision_;
};

ComplexInterval numeric_eval(const AlgNum &x, int precision_bits);

} // namespace qw
