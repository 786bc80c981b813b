#pragma once

// Feasibility of tight decompositions of q_n^s: verdicts, the counting
// formulas of the s=2 exclusion, admissible inner products between points of
// a tight decomposition, the 4x4 Gram-determinant machinery and the angle
// certificates excluding tight decompositions of q_3^3 and q_3^4.

#include "qw/multipoly.hpp"

#include <string>
#include <vector>

namespace qw {

enum class TightStatus { ExistsKnown, ExcludedComplex, ExcludedRealOnly, Open };
const char *to_string(TightStatus status) noexcept;

struct TightVerdict {
    int n = 0, s = 0;
    TightStatus status = TightStatus::Open;
    std::string witness; // catalogue name (or literature note) for ExistsKnown
    std::string theorem; // short tag of the excluding argument
    std::string scope;   // "complex", "real" or "open"
    std::string notes;
};

// n >= 2, s >= 1; throws OutOfRange otherwise.
TightVerdict tight_verdict(int n, int s);

// Closed forms from the s=2 exclusion argument with n = m^2 - 2.
struct S2Counts {
    int m = 0, n = 0;
    Rational n2_minus, n2_plus, d1, d2, d3;
    bool d3_integral = false;
};
S2Counts s2_counts(int m); // m >= 2

// Values a·b between distinct unit points of a tight decomposition.
struct KernelRoots {
    int n = 0, s = 0;
    TowerPtr tower = FieldTower::rationals();
    std::vector<AlgNum> values;  // every admissible product
    std::vector<AlgNum> squares; // distinct squares of the values
};
// s ∈ {2, 3, 4}; UnsupportedExponent otherwise.
KernelRoots kernel_roots(int n, int s);

// ---------------------------------------------------------------------------
// Gram determinant of four unit vectors in C^3.

// Symbolic det in the six variables (c12, c13, c14, c23, c24, c34).
MultiPoly gram_det_poly();
AlgNum gram_det(const AlgNum &c12, const AlgNum &c13, const AlgNum &c14,
                const AlgNum &c23, const AlgNum &c24, const AlgNum &c34);

struct GramOrbitReport {
    int invariance_order = 0; // permutations of the c_jk fixing g
    int distinct_images = 0;  // size of the orbit of g under S_6
    bool row_sign_invariant = false;
    // Distinct univariate determinants (variable a) over the 64 sign
    // patterns with every c_jk = ±a.
    std::vector<MultiPoly> one_value_forms;
    std::vector<Rational> admissible_squares; // sorted ascending
    bool squares_exhaustive = false; // no irrational roots were left over
};
GramOrbitReport gram_orbit_check();

// g_1..g_11 of the two-value theorem, every ± expanded independently.
struct TwoValuePoly {
    int index = 0;          // 1..11
    std::vector<int> signs; // chosen sign per ± in the order listed
    MultiPoly poly;         // in (x1, x2)
    std::string label() const; // e.g. "g1[+,-,+]"
};
std::vector<TwoValuePoly> two_value_polys();

// For every sign variant: whether g(a,b) or g(b,a) divides the Gram
// determinant under some substitution c_jk ∈ {±a, ±b}.
struct TwoValueFactor {
    TwoValuePoly poly;
    bool divides_some_determinant = false;
};
std::vector<TwoValueFactor> two_value_factor_check();

// Exact divisibility of rational multivariate polynomials.
bool divides(const MultiPoly &g, const MultiPoly &f);

// Distinct rational roots of a univariate polynomial (ascending
// coefficients); `leftover` receives the degree of the part without
// rational roots.
std::vector<Rational> rational_roots(std::vector<Rational> coeffs,
                                     int *leftover = nullptr);

// ---------------------------------------------------------------------------

enum class CertConclusion { NoTight, Inconclusive };
const char *to_string(CertConclusion c) noexcept;

struct CertEvaluation {
    TwoValuePoly poly;
    AlgNum x1, x2;
    AlgNum value;
};

struct AngleCertificate {
    int n = 3, s = 0;
    TowerPtr tower;
    std::vector<AlgNum> admissible_products;
    std::vector<AlgNum> admissible_squares;
    std::vector<CertEvaluation> evaluations;
    bool squares_avoid_one_value = false; // disjoint from {1/9, 1/5, 1}
    CertConclusion conclusion = CertConclusion::Inconclusive;
};

// n must be 3 (UnsupportedN), s ∈ {3, 4} (UnsupportedExponent).
AngleCertificate angle_certificate(int n, int s);

} // namespace qw
