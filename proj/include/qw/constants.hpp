#pragma once

// Closed-form rational constants attached to q_n^s.

#include "qw/exactfield.hpp"

namespace qw {

// T_{n,s} = binom(s+n-1, s): size of a tight decomposition.
Integer tight_size(int n, int s);
// <q_n^s, q_n^s> = prod_{j<s} (2j+n)/(2j+1) (Bombieri norm).
Rational q_norm(int n, int s);
// B_{n,s} = q_norm(n,s) / T_{n,s}: common caliber of a tight decomposition.
Rational tight_value(int n, int s);
// C_{n,s} = Laplacian^s(q_n^s) = 2^s s! prod_{j<s} (n+2j).
Integer laplacian_power_constant(int n, int s);
// A_{n,s,k} = prod_{j=1}^k (n + 2(s-j)).
Integer a_constant(int n, int s, int k);

} // namespace qw
