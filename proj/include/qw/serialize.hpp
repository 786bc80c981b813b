#pragma once

// JSON and CSV exchange formats.
//
//   Tower:   { "levels": [ { "name", "minpoly": [AlgNum...], "approx_root": [re, im] } ] }
//   AlgNum:  nested coefficient arrays, one nesting per tower level, with
//            rationals as strings ("3/4"); a rational at depth 0 is a bare string
//   Poly:    { "n", "ring": "x"|"y", "terms": [ { "exp": [...], "coeff": AlgNum } ] }
//   Decomposition:
//            { "name", "paper_eq", "n", "s", "tower", "scale",
//              "terms": [ { "coeff", "point": [AlgNum...] } ] }
//
// The "paper_eq" slot carries the descriptive origin of the decomposition.
// Parse failures throw Error(Parse); values outside the given tower throw
// IncompatibleTowers.

#include "qw/waring.hpp"

#include <json.hpp>

#include <string>

namespace qw {

using Json = nlohmann::json;

Json tower_to_json(const FieldTower &tower);
TowerPtr tower_from_json(const Json &j);

// `x` is lifted to the top level of `tower`.
Json algnum_to_json(const AlgNum &x, const FieldTower &tower);
AlgNum algnum_from_json(const Json &j, const TowerPtr &tower);

// Smallest tower among the coefficients that contains all of them.
TowerPtr common_tower(const MultiPoly &f);

// The tower is embedded under "tower" when it is not Q.
Json poly_to_json(const MultiPoly &f);
MultiPoly poly_from_json(const Json &j);

Json decomposition_to_json(const Decomposition &d);
Decomposition decomposition_from_json(const Json &j);

// Exact value plus a decimal preview and an enclosure at `precision` bits.
Json numeric_json(const AlgNum &x, int precision_bits);

// Numeric point export: one row per term in stored order with the
// coordinates (real part, and imaginary part when any coordinate is not
// real) and the caliber value.  Throws Precision for fewer than 32 bits.
enum class ExportFormat { Json, Csv };
std::string export_points(const Decomposition &d, int precision_bits,
                          ExportFormat format);

} // namespace qw
