#pragma once

// Sparse multivariate polynomials over AlgNum.
//
// Coefficients are stored on plain monomials; divided-power normalisations
// (x^[d] = x^d / d!) are applied by the constructors that ask for them.
// Terms are kept in graded-lexicographic order, highest first, which is
// also the order used for every monomial basis in the library.
//
// Two rings share this type: the primal ring R_n (variables x_i) that holds
// forms, and the dual ring D_n (variables y_i) acting on R_n by
// differentiation, y^a ∘ x^b = b!/(b-a)! x^(b-a).

#include "qw/exactfield.hpp"

#include <map>
#include <string>
#include <vector>

namespace qw {

enum class Ring { Primal, Dual };

const char *ring_name(Ring ring) noexcept; // "x" or "y"

using Exponent = std::vector<int>;
using Point = std::vector<AlgNum>;

int total_degree(const Exponent &e);

// Strict weak order putting higher total degree first, ties broken by
// lexicographic comparison with x_1 most significant.
struct GrlexGreater {
    bool operator()(const Exponent &a, const Exponent &b) const;
};

class MultiPoly {
  public:
    using TermMap = std::map<Exponent, AlgNum, GrlexGreater>;

    explicit MultiPoly(int n_vars = 0, Ring ring = Ring::Primal);

    static MultiPoly constant(int n_vars, const AlgNum &c,
                              Ring ring = Ring::Primal);
    static MultiPoly variable(int n_vars, int index,
                              Ring ring = Ring::Primal);
    static MultiPoly monomial(int n_vars, const Exponent &e, const AlgNum &c,
                              Ring ring = Ring::Primal);

    int n_vars() const noexcept { return n_; }
    Ring ring() const noexcept { return ring_; }
    const TermMap &terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    AlgNum coeff(const Exponent &e) const;
    // Adds c to the coefficient of x^e, dropping the term if it cancels.
    void add_term(const Exponent &e, const AlgNum &c);

    // Highest total degree, -1 for the zero polynomial.
    int degree() const;
    bool is_homogeneous() const;

    MultiPoly with_ring(Ring ring) const;

    MultiPoly operator-() const;
    MultiPoly &operator+=(const MultiPoly &g);
    MultiPoly &operator-=(const MultiPoly &g);
    MultiPoly &operator*=(const AlgNum &c);
    friend MultiPoly operator+(MultiPoly f, const MultiPoly &g) {
        return f += g;
    }
    friend MultiPoly operator-(MultiPoly f, const MultiPoly &g) {
        return f -= g;
    }
    friend MultiPoly operator*(const MultiPoly &f, const MultiPoly &g);
    friend MultiPoly operator*(MultiPoly f, const AlgNum &c) { return f *= c; }
    friend MultiPoly operator*(const AlgNum &c, MultiPoly f) { return f *= c; }
    friend bool operator==(const MultiPoly &f, const MultiPoly &g);

    MultiPoly pow(int k) const;

    // "x1^2 + 2*x1*x2" style rendering; custom variable names optional.
    std::string to_string(const std::vector<std::string> &names = {}) const;

  private:
    void check_compatible(const MultiPoly &g) const;

    int n_;
    Ring ring_;
    TermMap terms_;
};

Integer factorial(int k);
Integer binomial(long n, long k);
// Exponent-vector factorial  e! = prod e_i!.
Integer exponent_factorial(const Exponent &e);

// All exponent vectors of total degree d in n variables, grlex highest first.
std::vector<Exponent> monomials(int n, int d);

// Complex bilinear (not Hermitian) product a·b.
AlgNum dot(const Point &a, const Point &b);

// q_n^s, or q_n^[s] = q_n^s/(2^s s!) when divided.
MultiPoly q_power(int n, int s, bool divided, Ring ring = Ring::Primal);

MultiPoly linear_form(const Point &a, Ring ring = Ring::Primal);
// (a·x)^d, or (a·x)^[d] = (a·x)^d/d! when divided.
MultiPoly linear_power(const Point &a, int d, bool divided,
                       Ring ring = Ring::Primal);
// acc += lambda·(a·x)^d without materialising the power separately.
void add_linear_power(MultiPoly &acc, const AlgNum &lambda, const Point &a,
                      int d);

// Apolarity action phi ∘ f of a dual polynomial on a primal one.
MultiPoly contract(const MultiPoly &phi, const MultiPoly &f);
// Sum of second partial derivatives (ring preserved).
MultiPoly laplacian(const MultiPoly &f);
// Partial derivative with respect to variable `index` (ring preserved).
MultiPoly derivative(const MultiPoly &f, int index);

AlgNum evaluate(const MultiPoly &f, const Point &a);

// Replaces variable i by images[i] (all images share n_vars and ring).
MultiPoly substitute(const MultiPoly &f, const std::vector<MultiPoly> &images);

} // namespace qw
