#pragma once

// Catalecticant matrices, apolar ideals of q_n^s and the kernel lemmas
// behind the tightness arguments.

#include "qw/harmonic.hpp"
#include "qw/linalg.hpp"
#include "qw/multipoly.hpp"

#include <vector>

namespace qw {

struct CatalecticantMatrix {
    MultiPoly f;
    int k = 0;
    std::vector<Exponent> rows; // primal monomials of degree deg f - k
    std::vector<Exponent> cols; // dual monomials of degree k
    // entry(r, c) = coefficient of x^rows[r] in y^cols[c] ∘ f
    Matrix entries;
};

// Throws NonHomogeneous, OutOfRange if k is outside [0, deg f].
CatalecticantMatrix catalecticant(const MultiPoly &f, int k);
std::size_t exact_rank(const CatalecticantMatrix &m);
// Kernel of the catalecticant as dual forms of degree k.
std::vector<MultiPoly> catalecticant_kernel(const CatalecticantMatrix &m);

// dim Ann(q_n^s)_deg computed as the nullity of Cat_{q_n^s, deg}.
Integer ann_component_dim(int n, int s, int deg);
// The same dimension from the harmonic direct-sum description.
Integer ann_component_formula(int n, int s, int deg);

// Generators of Ann(q_n^s): a basis of the dual harmonics of degree s+1.
HarmonicBasis apolar_generators(int n, int s);

// Kernel generator of Cat_{f,s} for f = q_n^s / B_{n,s} - (a·x)^{2s}:
//   s=2: (n+2)(a·y)^2 - q
//   s=3: (n+4)(a·y)^3 - 3 q (a·y)
//   s=4: (n+6)(a·y)^4 - 6 q (a·y)^2 + 3/(n+4) q^2
// Throws NotUnitPoint unless a·a = 1, UnsupportedExponent for other s.
MultiPoly kernel_generator(int n, int s, const Point &a);

// q_n^s / B_{n,s} - (a·x)^{2s}.
MultiPoly rank_drop_form(int n, int s, const Point &a);

struct RankDrop {
    std::size_t rank = 0;
    std::size_t expected = 0; // T-1 for unit a, T for isotropic a
    std::size_t tight_size = 0;
};

// Rank of the middle catalecticant of rank_drop_form.  a must be a unit
// point (a·a = 1) or isotropic (a·a = 0); NotUnitPoint otherwise.
RankDrop rank_drop_check(int n, int s, const Point &a);

// Apolarity-lemma check for a point set X claimed to decompose q_n^s:
// the dual forms of degree k vanishing on X must annihilate q_n^s.
struct ApolarityCheck {
    int degree = 0;
    std::size_t vanishing_dim = 0; // dim I_{X,degree}
    bool contained = false;        // I_{X,degree} ⊆ Ann(q_n^s)
};

// Forms of degree k in the dual ring vanishing at every point.
std::vector<MultiPoly> vanishing_forms(int n, int k,
                                       const std::vector<Point> &points);
std::vector<ApolarityCheck> apolarity_consistency(
    int n, int s, const std::vector<Point> &points, int max_degree);

} // namespace qw
