#pragma once

// Harmonic polynomials: dimensions, Laplacian-kernel bases, the harmonic
// decomposition f = sum_j q^j h_j, and the three-variable weight basis
// h_{d,k} in the coordinates (u, v, z).
//
// Coordinates: u = (y1 + i y2)/2, v = (y1 - i y2)/2, z = y3, so that
// y1 = u + v, y2 = -i (u - v) and the Laplacian becomes d_u d_v + d_z^2.
// Some formulas for two variables use u' = y1 + i y2 instead; that is
// 2u in the convention above.  Polynomials in (u, v, z) are ordinary
// MultiPoly values whose variables 0, 1, 2 are read as u, v, z.

#include "qw/linalg.hpp"
#include "qw/multipoly.hpp"

#include <utility>
#include <vector>

namespace qw {

Integer harmonic_dim(int n, int d);

struct HarmonicBasis {
    int n = 0;
    int d = 0;
    std::vector<MultiPoly> elements;
};

// Matrix of the Laplacian R_{n,d} -> R_{n,d-2} in grlex monomial bases.
Matrix laplacian_matrix(int n, int d);

// Basis of ker(Laplacian) on degree-d forms, from the exact nullspace.
HarmonicBasis harmonic_basis(int n, int d, Ring ring = Ring::Primal);

struct HarmonicComponent {
    int j;       // power of q
    MultiPoly h; // harmonic of degree d - 2j
};

// Unique decomposition f = sum_j q^j h_j (zero components omitted).
// Throws NonHomogeneous.
std::vector<HarmonicComponent> harmonic_decompose(const MultiPoly &f);
MultiPoly harmonic_reconstruct(int n, Ring ring,
                               const std::vector<HarmonicComponent> &parts);

enum class UvzDirection { ToUvz, FromUvz };

// Linear change between (y1, y2[, y3]) and (u, v[, z]); the tower must
// contain i (MissingGenerator otherwise).  n must be 2 or 3.
MultiPoly uvz_change(const MultiPoly &f, UvzDirection direction,
                     const TowerPtr &tower);

// d_u d_v + d_z^2 on a polynomial in (u, v, z) (or d_u d_v for n = 2).
MultiPoly laplacian_uvz(const MultiPoly &f);

// Weight basis h_{d,k}, k = d, d-1, ..., -d (weight descending), as
// rational polynomials in (u, v, z), ring Dual.
HarmonicBasis harmonic_basis3(int d);
MultiPoly harmonic_weight_element(int d, int k);

enum class Sl2Op { H, E, F };

// Derivation extending H(u)=2u, H(v)=-2v, H(z)=0; E(u)=0, E(v)=z,
// E(z)=-2u; F(u)=-z, F(v)=0, F(z)=2v.
MultiPoly sl2_apply(Sl2Op op, const MultiPoly &f);

} // namespace qw
