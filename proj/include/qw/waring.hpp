#pragma once

// Waring decompositions of q_n^s in coefficient form
//     c · q_n^s = sum_j lambda_j (a_j · x)^{2s},
// exact verification, calibers, closed-form constants and the catalogue of
// known decompositions (fixed entries and parametrised families).

#include "qw/constants.hpp"
#include "qw/multipoly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qw {

struct WaringTerm {
    AlgNum coeff;
    Point point;
};

struct Decomposition {
    std::string name;
    std::string origin; // descriptive provenance ("Lucas identity", ...)
    int n = 0;
    int s = 0;
    TowerPtr tower = FieldTower::rationals();
    AlgNum scale = AlgNum(1);
    std::vector<WaringTerm> terms;

    std::size_t size() const noexcept { return terms.size(); }
};

struct VerifyResult {
    bool ok = false;
    MultiPoly residual; // c q^s - sum lambda_j (a_j·x)^{2s}
};

// Throws DimensionMismatch for points of the wrong length.
VerifyResult verify(const Decomposition &dec);

struct Constants {
    Integer tight_size;  // T_{n,s}
    Rational tight_value; // B_{n,s}
    Rational q_norm;      // <q^s, q^s>
};
Constants constants(int n, int s);

// Bombieri product; throws DegreeMismatch unless both forms are
// homogeneous of the same degree.
AlgNum bombieri(const MultiPoly &f, const MultiPoly &g);

struct CaliberReport {
    std::vector<AlgNum> values; // (lambda_j/c)(a_j·a_j)^s per term
    std::vector<AlgNum> distinct;
    std::size_t distinct_count = 0;
    Rational expected_tight; // B_{n,s}
    bool tight = false;      // size == T_{n,s}
    bool first_caliber = false;
    AlgNum total; // sum of values, equals <q^s, q^s>
};
CaliberReport caliber(const Decomposition &dec);

// ---------------------------------------------------------------------------
// Generators.

// s+1 points on the unit circle at angles (j-1)π/(s+1).
Decomposition gen_binary(int s);
// The (T_{n,2}+1)-term family for n >= 3, n != 8.  `branch` (+1 or -1)
// selects the sign in front of √2 in the coefficient formulas.
Decomposition gen_stroud_q2(int n, int branch = 1);
// The rational 45-term identity for q_8^2.
Decomposition gen_q8();

Decomposition reznick_family_q_n2(int n); // n >= 3
Decomposition stroud_s3(int n);           // n >= 3, n != 8
Decomposition bhmt_q_n3(int n);           // n >= 3
// Complex first-caliber families of q_n^2; `branch` picks the pinned root
// of the quadratic defining phi_n (resp. psi_n).
Decomposition firstcaliber_odd(int n, int branch = 1);  // odd n >= 5
Decomposition firstcaliber_even(int n, int branch = 1); // even n >= 6
// Five-fold rotated q_3^3 decomposition; `swap` exchanges the roles of the
// two heights alpha and beta.
Decomposition flavi_551_q33(bool swap = false);

// Fixed catalogue entries by name.
std::vector<std::string> catalog_names();
std::map<std::string, Decomposition> catalog();

// Resolves a fixed name or a family instance such as "stroud_s3:5",
// "gen_binary:4", "gen_stroud_q2:9:-1" or "firstcaliber_odd:7".
// Throws OutOfRange for unknown names or parameters.
Decomposition catalog_entry(const std::string &name);

// Every fixed entry plus the family instances exercised by the
// reproduction suite, in a deterministic order.
std::vector<std::string> reproduction_instances();

// ---------------------------------------------------------------------------

struct RankBounds {
    int n = 0, s = 0;
    Integer lower;
    std::optional<Integer> upper;
    bool exact = false;
    std::string lower_reason;
    std::string upper_witness;
};
RankBounds rank_bounds(int n, int s);

} // namespace qw
