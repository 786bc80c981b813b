#pragma once

// Tabulated evaluations of g_1..g_11 at the admissible angle pairs of the
// q_3^3 and q_3^4 certificates, as printed expressions with independent ±.

#include "expr_parser.hpp"
#include "qw/tightness.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace qw::test {

inline std::vector<AlgNum> value_set(ExprParser &p, const std::string &text) {
    std::vector<AlgNum> out;
    for (const auto &t : expand_pm(text))
        out.push_back(p.value(t));
    return out;
}

inline bool in_value_set(ExprParser &p, const std::string &text, const AlgNum &x) {
    const auto values = value_set(p, text);
    return std::find(values.begin(), values.end(), x) != values.end();
}

// R = √(3/7).  Rows: the pair (0, ±R), then (±R, 0).
inline const std::vector<std::string> kQ33First{
    "-1±R", "-4/7", "±1/7", "±R±1", "±2/7", "-4/7", "2/7", "-4/7±R",
    "-4/7±R", "±1/7", "-5/49"};
inline const std::vector<std::string> kQ33Second{
    "5/7±R", "5/7", "±2/7±4/7R", "±1±2R", "±1/7±R", "-1/7", "-1±2R",
    "-4/7±R", "-4/7±R", "±2/7±4/7R", "-5/49"};

// X1 = √((7+2√7)/21) > 0, X2 = √((7-2√7)/21) > 0, S3 = √3, S7 = √7,
// S21 = √21.  Rows: x1 = ±X1, then x1 = ±X2.
inline const std::vector<std::string> kQ34First{
    "(7+8S7±S21±21X1±21X2)/21",
    "2/3+2S7/7",
    // Printed for x1 > 0 only; x1 -> -x1 negates the value.
    "±(2S21X1(7S3-7S21±42)±42(7+S7))/441",
    "±2X1±X2±1",
    "±X1((14-10S7)/21)±(14-2S7)/21",
    "2(S7±S21)/21",
    "-2S7/7±2X1",
    "(-7±S21±21X1±21X2)/21",
    "(-7±3S21±21X1±21X2)/21",
    "2/63(±3(7+S7)±((4-2S7)±(1-S7))3S7X1)",
    "-8(4±S3)/63",
};
inline const std::vector<std::string> kQ34Second{
    "(7-8S7±S21±21X2±21X1)/21",
    "2/3-2S7/7",
    "±(2S21X2(-7S3-7S21±42)±42(7-S7))/441",
    "±2X2±X1±1",
    "±X2((14+10S7)/21)±(14+2S7)/21",
    "2(-S7±S21)/21",
    "2S7/7±2X2",
    "(-7±S21±21X2±21X1)/21",
    "(-7±3S21±21X2±21X1)/21",
    "2/63(±3(7-S7)±((4+2S7)±(1+S7))3S7X2)",
    "-8(4±S3)/63",
};

struct Q34Constants {
    AlgNum s7, s21, x1, x2;
};

// The positive admissible products of the q_3^4 certificate, split by their
// squares (7 ± 2√7)/21.
inline Q34Constants q34_constants(const AngleCertificate &c) {
    Q34Constants k{generator(c.tower, "r7"), generator(c.tower, "r21"), {}, {}};
    const AlgNum big = AlgNum::rational(7, 21) + k.s7 * AlgNum::rational(2, 21);
    for (const auto &v : c.admissible_products)
        if (v.approx().real() > 0)
            (v * v == big ? k.x1 : k.x2) = v;
    return k;
}

// Labels of evaluations that vanish or fall outside the tabulated sets.
inline std::vector<std::string> table_mismatches(const AngleCertificate &c) {
    std::vector<std::string> bad;
    if (c.s == 3) {
        const AlgNum r = generator(c.tower, "r21") * AlgNum::rational(1, 7);
        ExprParser p({}, {{"R", r}});
        for (const auto &ev : c.evaluations) {
            const auto &table = ev.x1.is_zero() ? kQ33First : kQ33Second;
            if (ev.value.is_zero() || !in_value_set(p, table[ev.poly.index - 1], ev.value))
                bad.push_back(ev.poly.label());
        }
    } else {
        const Q34Constants k = q34_constants(c);
        ExprParser p({}, {{"S3", k.s21 / k.s7}, {"S7", k.s7}, {"S21", k.s21},
                          {"X1", k.x1}, {"X2", k.x2}});
        for (const auto &ev : c.evaluations) {
            const auto &table = ev.x1 * ev.x1 == k.x1 * k.x1 ? kQ34First : kQ34Second;
            if (ev.value.is_zero() || !in_value_set(p, table[ev.poly.index - 1], ev.value))
                bad.push_back(ev.poly.label());
        }
    }
    return bad;
}

} // namespace qw::test
