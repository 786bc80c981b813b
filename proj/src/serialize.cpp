#include "qw/serialize.hpp"

#include <cmath>
#include <sstream>

namespace qw {

namespace {

[[noreturn]] void parse_error(const std::string &what) {
    throw Error(ErrorKind::Parse, what);
}

Rational parse_rational(const Json &j) {
    if (j.is_number_integer())
        return Rational(Integer(std::to_string(j.get<long long>())));
    if (!j.is_string())
        parse_error("expected a rational string, got " + j.dump());
    Rational r;
    if (r.set_str(j.get<std::string>(), 10) != 0 || r.get_den() == 0)
        parse_error("malformed rational '" + j.get<std::string>() + "'");
    r.canonicalize();
    return r;
}

// Nested arrays for the flat mixed-radix coordinates of level `level`.
Json nest(const FieldTower &tower, const Rational *coords, std::size_t level) {
    if (level == 0)
        return coords[0].get_str();
    Json arr = Json::array();
    const std::size_t block = tower.dim(level - 1);
    for (int i = 0; i < tower.level(level).degree; ++i)
        arr.push_back(nest(tower, coords + i * block, level - 1));
    return arr;
}

void unnest(const Json &j, const FieldTower &tower, std::size_t level,
            std::vector<Rational> &out) {
    if (level == 0) {
        out.push_back(parse_rational(j));
        return;
    }
    const std::size_t degree = tower.level(level).degree;
    if (!j.is_array() || j.size() != degree)
        parse_error("expected " + std::to_string(degree) +
                    " coefficients for level '" + tower.level(level).name + "'");
    for (const auto &c : j)
        unnest(c, tower, level - 1, out);
}

// Depth of an AlgNum encoding: 0 for a bare rational.
std::size_t nesting(const Json &j) {
    std::size_t d = 0;
    const Json *p = &j;
    while (p->is_array()) {
        if (p->empty())
            parse_error("empty coefficient array");
        p = &p->front();
        ++d;
    }
    return d;
}

AlgNum decode_at(const Json &j, const TowerPtr &tower, std::size_t level) {
    std::vector<Rational> coords;
    coords.reserve(tower->dim(level));
    unnest(j, *tower, level, coords);
    return AlgNum(tower, level, std::move(coords));
}

const Json &field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key))
        parse_error(std::string("missing field '") + key + "'");
    return j.at(key);
}

int int_field(const Json &j, const char *key) {
    const Json &v = field(j, key);
    if (!v.is_number_integer())
        parse_error(std::string("field '") + key + "' must be an integer");
    return v.get<int>();
}

std::string decimal_preview(const ComplexInterval &z) {
    if (z.exact_zero)
        return "0";
    std::string out = z.re_mid;
    if (std::abs(z.im_approx) > z.radius_approx) {
        const bool neg = !z.im_mid.empty() && z.im_mid[0] == '-';
        out += neg ? " - " : " + ";
        out += (neg ? z.im_mid.substr(1) : z.im_mid) + "i";
    }
    return out;
}

bool numerically_real(const ComplexInterval &z) {
    return z.exact_zero || std::abs(z.im_approx) <= z.radius_approx;
}

} // namespace

Json tower_to_json(const FieldTower &tower) {
    Json levels = Json::array();
    for (std::size_t l = 1; l <= tower.depth(); ++l) {
        const Level &lv = tower.level(l);
        Json minpoly = Json::array();
        for (const auto &c : lv.minpoly)
            minpoly.push_back(nest(tower, c.data(), l - 1));
        Json entry{{"name", lv.name},
                   {"minpoly", minpoly},
                   {"approx_root", {lv.approx_root.real(), lv.approx_root.imag()}}};
        if (lv.cyclotomic_order > 0)
            entry["cyclotomic_order"] = lv.cyclotomic_order;
        levels.push_back(std::move(entry));
    }
    return Json{{"levels", levels}};
}

TowerPtr tower_from_json(const Json &j) {
    TowerPtr tower = FieldTower::rationals();
    const Json &levels = field(j, "levels");
    if (!levels.is_array())
        parse_error("'levels' must be an array");
    for (const auto &lv : levels) {
        const Json &name = field(lv, "name");
        const Json &mp = field(lv, "minpoly");
        const Json &root = field(lv, "approx_root");
        if (!name.is_string() || !mp.is_array() || mp.size() < 3 ||
            !root.is_array() || root.size() != 2 || !root[0].is_number() ||
            !root[1].is_number())
            parse_error("malformed tower level " + lv.dump());
        std::vector<AlgNum> coeffs;
        for (const auto &c : mp)
            coeffs.push_back(decode_at(c, tower, tower->depth()));
        if (!coeffs.back().is_one())
            parse_error("minpoly of '" + name.get<std::string>() + "' is not monic");
        const std::complex<double> pin(root[0].get<double>(), root[1].get<double>());
        const std::string n = name.get<std::string>();
        if (lv.contains("cyclotomic_order")) {
            const int m = lv.at("cyclotomic_order").get<int>();
            TowerPtr next = adjoin_root_of_unity(tower, m, n);
            std::vector<std::vector<Rational>> given;
            for (const auto &c : coeffs)
                given.push_back(c.lifted(tower, tower->depth()).coords());
            if (next->level(next->depth()).minpoly != given)
                parse_error("cyclotomic level '" + n + "' has a foreign minpoly");
            tower = next;
        } else {
            // adjoin validates the pin; keep the stored value verbatim so that
            // serialization is idempotent.
            Level level = adjoin(tower, n, coeffs, pin)->level(tower->depth() + 1);
            level.approx_root = pin;
            tower = tower->extended(std::move(level));
        }
    }
    return tower;
}

Json algnum_to_json(const AlgNum &x, const FieldTower &tower) {
    if (tower.depth() == 0) {
        if (!x.is_rational())
            throw Error(ErrorKind::IncompatibleTowers,
                        "irrational value serialized over Q");
        return x.to_rational().get_str();
    }
    if (x.level() > 0 && !tower.shares_prefix(*x.tower(), x.level()))
        throw Error(ErrorKind::IncompatibleTowers,
                    "value does not live in the serialization tower");
    std::vector<Rational> coords = x.coords();
    coords.resize(tower.dim());
    return nest(tower, coords.data(), tower.depth());
}

AlgNum algnum_from_json(const Json &j, const TowerPtr &tower) {
    const std::size_t depth = nesting(j);
    if (depth != tower->depth() && depth != 0)
        parse_error("coefficient nesting " + std::to_string(depth) +
                    " does not match tower depth " + std::to_string(tower->depth()));
    if (depth == 0)
        return AlgNum(parse_rational(j));
    return decode_at(j, tower, depth);
}

TowerPtr common_tower(const MultiPoly &f) {
    TowerPtr best = FieldTower::rationals();
    std::size_t level = 0;
    for (const auto &[e, c] : f.terms())
        if (c.level() > level) {
            level = c.level();
            best = c.tower();
        }
    return best;
}

Json poly_to_json(const MultiPoly &f) {
    const TowerPtr tower = common_tower(f);
    Json terms = Json::array();
    for (const auto &[e, c] : f.terms())
        terms.push_back({{"exp", e}, {"coeff", algnum_to_json(c, *tower)}});
    Json j{{"n", f.n_vars()}, {"ring", ring_name(f.ring())}, {"terms", terms}};
    if (tower->depth() > 0)
        j["tower"] = tower_to_json(*tower);
    return j;
}

MultiPoly poly_from_json(const Json &j) {
    const int n = int_field(j, "n");
    const Json &ring = field(j, "ring");
    if (!ring.is_string() || (ring != "x" && ring != "y"))
        parse_error("ring must be \"x\" or \"y\"");
    const TowerPtr tower =
        j.contains("tower") ? tower_from_json(j.at("tower")) : FieldTower::rationals();
    MultiPoly f(n, ring == "x" ? Ring::Primal : Ring::Dual);
    const Json &terms = field(j, "terms");
    if (!terms.is_array())
        parse_error("'terms' must be an array");
    for (const auto &t : terms) {
        const Json &exp = field(t, "exp");
        if (!exp.is_array() || static_cast<int>(exp.size()) != n)
            parse_error("exponent of the wrong length: " + exp.dump());
        Exponent e;
        for (const auto &k : exp) {
            if (!k.is_number_integer() || k.get<int>() < 0)
                parse_error("bad exponent entry " + k.dump());
            e.push_back(k.get<int>());
        }
        f.add_term(e, algnum_from_json(field(t, "coeff"), tower));
    }
    return f;
}

Json decomposition_to_json(const Decomposition &d) {
    const FieldTower &tower = *d.tower;
    Json terms = Json::array();
    for (const auto &t : d.terms) {
        Json point = Json::array();
        for (const auto &x : t.point)
            point.push_back(algnum_to_json(x, tower));
        terms.push_back({{"coeff", algnum_to_json(t.coeff, tower)}, {"point", point}});
    }
    return Json{{"name", d.name},     {"paper_eq", d.origin},
                {"n", d.n},           {"s", d.s},
                {"tower", tower_to_json(tower)},
                {"scale", algnum_to_json(d.scale, tower)},
                {"terms", terms}};
}

Decomposition decomposition_from_json(const Json &j) {
    Decomposition d;
    const Json &name = field(j, "name");
    if (!name.is_string())
        parse_error("'name' must be a string");
    d.name = name.get<std::string>();
    if (j.contains("paper_eq") && j.at("paper_eq").is_string())
        d.origin = j.at("paper_eq").get<std::string>();
    d.n = int_field(j, "n");
    d.s = int_field(j, "s");
    if (d.n < 1 || d.s < 1)
        parse_error("n and s must be positive");
    d.tower = tower_from_json(field(j, "tower"));
    d.scale = algnum_from_json(field(j, "scale"), d.tower);
    const Json &terms = field(j, "terms");
    if (!terms.is_array())
        parse_error("'terms' must be an array");
    for (const auto &t : terms) {
        WaringTerm w;
        w.coeff = algnum_from_json(field(t, "coeff"), d.tower);
        const Json &point = field(t, "point");
        if (!point.is_array())
            parse_error("'point' must be an array");
        for (const auto &x : point)
            w.point.push_back(algnum_from_json(x, d.tower));
        d.terms.push_back(std::move(w));
    }
    return d;
}

Json numeric_json(const AlgNum &x, int precision_bits) {
    const ComplexInterval z = numeric_eval(x, precision_bits);
    return Json{{"exact", algnum_to_json(x, *x.tower())},
                {"decimal", decimal_preview(z)},
                {"interval",
                 {{"re", z.re_mid}, {"im", z.im_mid}, {"radius", z.radius}}}};
}

std::string export_points(const Decomposition &d, int precision_bits,
                          ExportFormat format) {
    if (precision_bits < 32)
        throw Error(ErrorKind::Precision, "export needs at least 32 bits");
    const NumericContext ctx(d.tower, precision_bits);
    const CaliberReport cal = caliber(d);

    std::vector<std::vector<ComplexInterval>> rows;
    bool complex_data = false;
    for (std::size_t i = 0; i < d.terms.size(); ++i) {
        std::vector<ComplexInterval> row;
        for (const auto &x : d.terms[i].point)
            row.push_back(ctx.eval(x));
        row.push_back(ctx.eval(cal.values[i]));
        for (const auto &z : row)
            complex_data = complex_data || !numerically_real(z);
        rows.push_back(std::move(row));
    }

    std::vector<std::string> names;
    for (int k = 1; k <= d.n; ++k)
        names.push_back("x" + std::to_string(k));
    names.push_back("caliber");

    if (format == ExportFormat::Json) {
        Json pts = Json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Json coords = Json::array();
            for (int k = 0; k < d.n; ++k)
                coords.push_back(complex_data ? Json{rows[i][k].re_mid, rows[i][k].im_mid}
                                              : Json(rows[i][k].re_mid));
            const ComplexInterval &c = rows[i].back();
            pts.push_back({{"index", i + 1},
                           {"point", coords},
                           {"caliber", complex_data ? Json{c.re_mid, c.im_mid}
                                                    : Json(c.re_mid)}});
        }
        const Json out{{"name", d.name},
                       {"n", d.n},
                       {"s", d.s},
                       {"precision", precision_bits},
                       {"complex", complex_data},
                       {"points", pts}};
        return out.dump(2) + "\n";
    }

    std::ostringstream csv;
    csv << "index";
    for (const auto &name : names)
        if (complex_data)
            csv << ',' << name << "_re," << name << "_im";
        else
            csv << ',' << name;
    csv << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
        csv << i + 1;
        for (const auto &z : rows[i]) {
            csv << ',' << z.re_mid;
            if (complex_data)
                csv << ',' << z.im_mid;
        }
        csv << '\n';
    }
    return csv.str();
}

} // namespace qw
