// qw: command-line front end for verifying, generating and certifying
// Waring decompositions of q_n^s.
//
// Exit codes: 0 success / verified, 1 verification failure, certificate
// inconclusive, unreadable input or tower error, 2 usage error.

#include "qw/apolar.hpp"
#include "qw/constants.hpp"
#include "qw/harmonic.hpp"
#include "qw/serialize.hpp"
#include "qw/tightness.hpp"
#include "qw/waring.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using qw::Json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    bool json = false;
    int precision = 64;
    std::string out;
    std::string tower;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read_json(const std::string &path) {
    try {
        return Json::parse(read_file(path));
    } catch (const Json::parse_error &e) {
        throw qw::Error(qw::ErrorKind::Parse, path + ": " + e.what());
    }
}

// Writes to --out when given, stdout otherwise.
void emit(const Options &opt, const std::string &text) {
    if (opt.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out);
    if (!f)
        throw std::runtime_error("cannot write '" + opt.out + "'");
    f << text;
}

void emit(const Options &opt, const Json &j) { emit(opt, j.dump(2) + "\n"); }

std::string decimal(const qw::AlgNum &x, int precision) {
    return qw::numeric_json(x, precision)["decimal"].get<std::string>();
}

std::string str(const qw::Integer &v) { return v.get_str(); }
std::string str(const qw::Rational &v) { return v.get_str(); }

// ---------------------------------------------------------------------------
// verify

Json caliber_json(const qw::CaliberReport &c, int precision) {
    Json distinct = Json::array();
    for (const auto &v : c.distinct)
        distinct.push_back(qw::numeric_json(v, precision));
    return Json{{"distinct", distinct},
                {"distinct_count", c.distinct_count},
                {"tight", c.tight},
                {"first_caliber", c.first_caliber},
                {"expected_tight_value", str(c.expected_tight)},
                {"total", qw::numeric_json(c.total, precision)}};
}

struct VerifyOutcome {
    std::string name;
    std::size_t size = 0;
    bool ok = false;
    std::size_t residual_terms = 0;
    std::string error;
    Json residual;
    Json caliber;
};

VerifyOutcome verify_one(const qw::Decomposition &d, int precision) {
    VerifyOutcome o;
    o.name = d.name;
    o.size = d.size();
    const qw::VerifyResult r = qw::verify(d);
    o.ok = r.ok;
    o.residual_terms = r.residual.size();
    o.residual = qw::poly_to_json(r.residual);
    o.caliber = caliber_json(qw::caliber(d), precision);
    return o;
}

unsigned thread_cap() {
    unsigned n = std::max(1U, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("QW_NUM_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1)
            n = static_cast<unsigned>(v);
    }
    return n;
}

std::vector<VerifyOutcome> verify_all(const std::vector<std::string> &names,
                                       int precision) {
    std::vector<VerifyOutcome> results(names.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < names.size();) {
            try {
                results[i] = verify_one(qw::catalog_entry(names[i]), precision);
            } catch (const std::exception &e) {
                results[i].name = names[i];
                results[i].error = e.what();
            }
        }
    };
    const unsigned count =
        std::min<unsigned>(thread_cap(), static_cast<unsigned>(names.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < count; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
        t.join();
    return results;
}

int cmd_verify(const Options &opt, const std::string &catalog_name, bool all,
               const std::string &file) {
    std::vector<VerifyOutcome> results;
    if (all) {
        results = verify_all(qw::reproduction_instances(), opt.precision);
    } else if (!catalog_name.empty()) {
        results.push_back(verify_one(qw::catalog_entry(catalog_name), opt.precision));
    } else if (!file.empty()) {
        Json j = read_json(file);
        if (!j.contains("tower") && !opt.tower.empty())
            j["tower"] = read_json(opt.tower);
        results.push_back(verify_one(qw::decomposition_from_json(j), opt.precision));
    } else {
        throw UsageError("verify needs --catalog <name>, --all or a file");
    }

    bool ok = true;
    for (const auto &r : results)
        ok = ok && r.ok && r.error.empty();
    if (opt.json) {
        Json arr = Json::array();
        for (const auto &r : results) {
            Json e{{"name", r.name}, {"ok", r.ok && r.error.empty()}, {"size", r.size}};
            if (r.error.empty()) {
                e["residual"] = r.residual;
                e["caliber"] = r.caliber;
            } else
                e["error"] = r.error;
            arr.push_back(std::move(e));
        }
        emit(opt, all ? Json{{"results", arr}, {"all_ok", ok}} : arr.front());
    } else {
        std::ostringstream os;
        for (const auto &r : results) {
            if (!r.error.empty()) {
                os << r.name << ": error: " << r.error << "\n";
                continue;
            }
            os << r.name << ": " << (r.ok ? "verified" : "FAILED") << ", size "
               << r.size << ", residual: "
               << (r.ok ? "0" : std::to_string(r.residual_terms) + " nonzero terms")
               << "\n";
        }
        if (all)
            os << (ok ? "all " : "NOT all ") << results.size()
               << " decompositions verified\n";
        emit(opt, os.str());
    }
    return ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// catalog / gen / export

int cmd_catalog(const Options &opt, const std::string &name) {
    if (!name.empty()) {
        const qw::Decomposition d = qw::catalog_entry(name);
        if (opt.json || !opt.out.empty()) {
            emit(opt, qw::decomposition_to_json(d));
            return kExitOk;
        }
        const qw::CaliberReport c = qw::caliber(d);
        std::ostringstream os;
        os << d.name << ": q_" << d.n << "^" << d.s << ", " << d.size()
           << " terms, " << d.origin << "\n"
           << "tower depth " << d.tower->depth() << ", degree " << d.tower->dim()
           << "\ncaliber: " << c.distinct_count << " distinct value"
           << (c.distinct_count == 1 ? "" : "s");
        for (const auto &v : c.distinct)
            os << " " << decimal(v, opt.precision);
        os << (c.tight ? " (tight)" : "") << "\n";
        emit(opt, os.str());
        return kExitOk;
    }
    const auto names = qw::catalog_names();
    if (opt.json) {
        Json arr = Json::array();
        for (const auto &n : names) {
            const qw::Decomposition d = qw::catalog_entry(n);
            arr.push_back({{"name", n},
                           {"n", d.n},
                           {"s", d.s},
                           {"size", d.size()},
                           {"paper_eq", d.origin}});
        }
        emit(opt, Json{{"catalog", arr}});
    } else {
        std::ostringstream os;
        for (const auto &n : names) {
            const qw::Decomposition d = qw::catalog_entry(n);
            os << n << "  q_" << d.n << "^" << d.s << "  " << d.size() << " terms  "
               << d.origin << "\n";
        }
        os << "families: gen_binary:<s>, gen_stroud_q2:<n>[:-1], "
              "reznick_family_q_n2:<n>, stroud_s3:<n>, bhmt_q_n3:<n>, "
              "firstcaliber_odd:<n>[:-1], firstcaliber_even:<n>[:-1]\n";
        emit(opt, os.str());
    }
    return kExitOk;
}

int cmd_gen(const Options &opt, const std::string &family, int param, int branch) {
    qw::Decomposition d;
    if (family == "binary")
        d = qw::gen_binary(param);
    else if (family == "stroud")
        d = qw::gen_stroud_q2(param, branch);
    else if (family == "q8")
        d = qw::gen_q8();
    else
        throw UsageError("gen family must be binary, stroud or q8");
    const qw::VerifyResult r = qw::verify(d);
    if (opt.json || !opt.out.empty()) {
        emit(opt, qw::decomposition_to_json(d));
    } else {
        std::ostringstream os;
        os << d.name << ": " << d.size() << " terms, "
           << (r.ok ? "verified" : "FAILED") << "\n";
        for (const auto &t : d.terms) {
            os << "  " << decimal(t.coeff, 32) << " * (";
            for (std::size_t k = 0; k < t.point.size(); ++k)
                os << (k ? ", " : "") << decimal(t.point[k], 32);
            os << ")\n";
        }
        emit(opt, os.str());
    }
    return r.ok ? kExitOk : kExitFailure;
}

int cmd_export(const Options &opt, const std::string &name, const std::string &format) {
    if (format != "csv" && format != "json")
        throw UsageError("--format must be csv or json");
    const qw::Decomposition d = qw::catalog_entry(name);
    emit(opt, qw::export_points(d, opt.precision,
                                format == "csv" ? qw::ExportFormat::Csv
                                                : qw::ExportFormat::Json));
    return kExitOk;
}

// ---------------------------------------------------------------------------
// apolarity / harmonics

int cmd_cat_rank(const Options &opt, int n, int s, int k) {
    if (n < 1 || s < 0 || k < 0 || k > 2 * s)
        throw UsageError("cat-rank needs n >= 1 and 0 <= k <= 2s");
    const auto cat = qw::catalecticant(qw::q_power(n, s, false), k);
    const std::size_t rank = qw::exact_rank(cat);
    const std::size_t nullity = cat.cols.size() - rank;
    if (opt.json)
        emit(opt, Json{{"n", n}, {"s", s}, {"k", k}, {"rows", cat.rows.size()},
                       {"cols", cat.cols.size()}, {"rank", rank}, {"nullity", nullity}});
    else
        emit(opt, "rank Cat(q_" + std::to_string(n) + "^" + std::to_string(s) + ", " +
                      std::to_string(k) + ") = " + std::to_string(rank) + " (" +
                      std::to_string(cat.rows.size()) + "x" +
                      std::to_string(cat.cols.size()) + ", nullity " +
                      std::to_string(nullity) + ")\n");
    return kExitOk;
}

int cmd_harmonic_dim(const Options &opt, int n, int d) {
    const qw::Integer dim = qw::harmonic_dim(n, d);
    if (opt.json)
        emit(opt, Json{{"n", n}, {"d", d}, {"dim", str(dim)}});
    else
        emit(opt, "dim H_{" + std::to_string(n) + "," + std::to_string(d) + "} = " +
                      str(dim) + "\n");
    return kExitOk;
}

int cmd_harmonic_basis(const Options &opt, int n, int d) {
    const qw::HarmonicBasis b = qw::harmonic_basis(n, d);
    if (opt.json) {
        Json arr = Json::array();
        for (const auto &f : b.elements)
            arr.push_back(qw::poly_to_json(f));
        emit(opt, Json{{"n", n}, {"d", d}, {"basis", arr}});
    } else {
        std::ostringstream os;
        for (const auto &f : b.elements)
            os << f.to_string() << "\n";
        emit(opt, os.str());
    }
    return kExitOk;
}

int cmd_ann_dims(const Options &opt, int n, int s) {
    Json arr = Json::array();
    std::ostringstream os;
    bool ok = true;
    for (int deg = 0; deg <= 2 * s + 1; ++deg) {
        const qw::Integer dim = qw::ann_component_dim(n, s, deg);
        const qw::Integer formula = qw::ann_component_formula(n, s, deg);
        ok = ok && dim == formula;
        arr.push_back({{"degree", deg}, {"dim", str(dim)}, {"formula", str(formula)}});
        os << "dim Ann(q_" << n << "^" << s << ")_" << deg << " = " << dim
           << (dim == formula ? "" : "  (formula disagrees: " + str(formula) + ")")
           << "\n";
    }
    if (opt.json)
        emit(opt, Json{{"n", n}, {"s", s}, {"components", arr}, {"consistent", ok}});
    else
        emit(opt, os.str());
    return ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------
// tightness and ranks

Json verdict_json(const qw::TightVerdict &v) {
    return Json{{"n", v.n},
                {"s", v.s},
                {"status", qw::to_string(v.status)},
                {"witness", v.witness},
                {"theorem", v.theorem},
                {"scope", v.scope},
                {"notes", v.notes}};
}

int cmd_tight(const Options &opt, int n, int s) {
    const qw::TightVerdict v = qw::tight_verdict(n, s);
    if (opt.json) {
        Json j = verdict_json(v);
        const qw::Constants c = qw::constants(n, s);
        j["tight_size"] = str(c.tight_size);
        j["tight_value"] = str(c.tight_value);
        emit(opt, j);
    } else {
        std::ostringstream os;
        os << "q_" << n << "^" << s << ": " << qw::to_string(v.status);
        if (!v.witness.empty())
            os << " (witness: " << v.witness << ")";
        if (!v.theorem.empty())
            os << " [" << v.theorem << ", " << v.scope << "]";
        os << "\n";
        if (!v.notes.empty())
            os << "  " << v.notes << "\n";
        emit(opt, os.str());
    }
    return kExitOk;
}

Json bounds_json(const qw::RankBounds &b) {
    Json j{{"n", b.n}, {"s", b.s}, {"lower", str(b.lower)}, {"exact", b.exact},
           {"lower_reason", b.lower_reason}};
    if (b.upper) {
        j["upper"] = str(*b.upper);
        j["upper_witness"] = b.upper_witness;
    } else {
        j["upper"] = nullptr;
    }
    return j;
}

std::string bounds_text(const qw::RankBounds &b) {
    const std::string rk = "rk(q_" + std::to_string(b.n) + "^" + std::to_string(b.s) + ")";
    if (b.exact)
        return rk + " = " + str(b.lower) + "\n";
    std::string out = str(b.lower) + " <= " + rk;
    if (b.upper)
        out += " <= " + str(*b.upper);
    return out + "\n";
}

int cmd_rank_bounds(const Options &opt, int n, int s) {
    const qw::RankBounds b = qw::rank_bounds(n, s);
    if (opt.json) {
        emit(opt, bounds_json(b));
    } else {
        std::string text = bounds_text(b);
        text += "  lower: " + b.lower_reason + "\n";
        if (b.upper)
            text += "  upper: " + b.upper_witness + "\n";
        emit(opt, text);
    }
    return kExitOk;
}

int cmd_cert_rank(const Options &opt, int n, int s) {
    const qw::AngleCertificate cert = qw::angle_certificate(n, s);
    const qw::RankBounds b = qw::rank_bounds(n, s);
    const bool ok = cert.conclusion == qw::CertConclusion::NoTight;
    if (opt.json) {
        Json products = Json::array(), squares = Json::array(), evals = Json::array();
        for (const auto &v : cert.admissible_products)
            products.push_back(qw::numeric_json(v, opt.precision));
        for (const auto &v : cert.admissible_squares)
            squares.push_back(qw::numeric_json(v, opt.precision));
        for (const auto &e : cert.evaluations)
            evals.push_back({{"poly", e.poly.label()},
                             {"x1", qw::numeric_json(e.x1, opt.precision)},
                             {"x2", qw::numeric_json(e.x2, opt.precision)},
                             {"value", qw::numeric_json(e.value, opt.precision)}});
        emit(opt, Json{{"n", n},
                       {"s", s},
                       {"tower", qw::tower_to_json(*cert.tower)},
                       {"admissible_products", products},
                       {"admissible_squares", squares},
                       {"squares_avoid_one_value", cert.squares_avoid_one_value},
                       {"evaluations", evals},
                       {"conclusion", qw::to_string(cert.conclusion)},
                       {"rank_bounds", bounds_json(b)}});
    } else {
        std::ostringstream os;
        os << "angle certificate for q_" << n << "^" << s << ": "
           << qw::to_string(cert.conclusion) << " (" << cert.evaluations.size()
           << " nonzero evaluations)\n"
           << bounds_text(b);
        emit(opt, os.str());
    }
    return ok ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------------------

int run(int argc, char **argv) {
    CLI::App app{"Exact verification and certification of Waring decompositions "
                 "of powers of the quadratic form q_n = x_1^2 + ... + x_n^2",
                 "qw"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_flag("--json", opt.json, "structured JSON output");
    app.add_option("--precision", opt.precision, "bits for numeric previews")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", opt.out, "write output to a file");
    app.add_option("--tower", opt.tower, "tower JSON for decomposition files without one")
        ->check(CLI::ExistingFile);

    std::function<int()> action;
    int n = 0, s = 0, k = 0, d = 0;

    auto *verify = app.add_subcommand("verify", "verify decompositions exactly");
    std::string catalog_name, file;
    bool all = false;
    verify->add_option("--catalog", catalog_name, "catalogue entry or family instance");
    verify->add_flag("--all", all, "every catalogue entry and reproduction instance");
    verify->add_option("file", file, "decomposition JSON file");
    verify->callback([&] { action = [&] { return cmd_verify(opt, catalog_name, all, file); }; });

    auto *catalog = app.add_subcommand("catalog", "list or dump catalogue entries");
    std::string entry;
    catalog->add_option("name", entry, "entry to describe");
    catalog->callback([&] { action = [&] { return cmd_catalog(opt, entry); }; });

    auto *cat_rank = app.add_subcommand("cat-rank", "rank of the catalecticant of q_n^s");
    cat_rank->add_option("n", n)->required();
    cat_rank->add_option("s", s)->required();
    cat_rank->add_option("k", k)->required();
    cat_rank->callback([&] { action = [&] { return cmd_cat_rank(opt, n, s, k); }; });

    auto *hdim = app.add_subcommand("harmonic-dim", "dimension of H_{n,d}");
    hdim->add_option("n", n)->required();
    hdim->add_option("d", d)->required();
    hdim->callback([&] { action = [&] { return cmd_harmonic_dim(opt, n, d); }; });

    auto *hbasis = app.add_subcommand("harmonic-basis", "basis of H_{n,d}");
    hbasis->add_option("n", n)->required();
    hbasis->add_option("d", d)->required();
    hbasis->callback([&] { action = [&] { return cmd_harmonic_basis(opt, n, d); }; });

    auto *ann = app.add_subcommand("ann-dims", "graded dimensions of Ann(q_n^s)");
    ann->add_option("n", n)->required();
    ann->add_option("s", s)->required();
    ann->callback([&] { action = [&] { return cmd_ann_dims(opt, n, s); }; });

    auto *tight = app.add_subcommand("tight", "existence of tight decompositions");
    tight->add_option("n", n)->required();
    tight->add_option("s", s)->required();
    tight->callback([&] { action = [&] { return cmd_tight(opt, n, s); }; });

    auto *cert = app.add_subcommand("cert-rank", "angle certificate and rank of q_n^s");
    cert->add_option("n", n)->required();
    cert->add_option("s", s)->required();
    cert->callback([&] { action = [&] { return cmd_cert_rank(opt, n, s); }; });

    auto *gen = app.add_subcommand("gen", "generate a family member");
    std::string family;
    int param = 0, branch = 1;
    gen->add_option("family", family, "binary, stroud or q8")->required();
    gen->add_option("param", param, "s for binary, n for stroud");
    gen->add_option("--branch", branch, "sign branch for stroud (+1 or -1)");
    gen->callback([&] { action = [&] { return cmd_gen(opt, family, param, branch); }; });

    auto *bounds = app.add_subcommand("rank-bounds", "known bounds on rk(q_n^s)");
    bounds->add_option("n", n)->required();
    bounds->add_option("s", s)->required();
    bounds->callback([&] { action = [&] { return cmd_rank_bounds(opt, n, s); }; });

    auto *exp = app.add_subcommand("export", "numeric point export");
    std::string format = "csv";
    exp->add_option("name", entry, "catalogue entry")->required();
    exp->add_option("--format", format, "csv or json");
    exp->callback([&] { action = [&] { return cmd_export(opt, entry, format); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cerr << "qw: " << e.what() << "\n\n" << app.help();
        return kExitUsage;
    }

    try {
        return action();
    } catch (const UsageError &e) {
        std::cerr << "qw: " << e.what() << "\n";
        return kExitUsage;
    } catch (const qw::Error &e) {
        std::cerr << "qw: " << e.what() << "\n";
        switch (e.kind()) {
        case qw::ErrorKind::OutOfRange:
        case qw::ErrorKind::UnsupportedN:
        case qw::ErrorKind::UnsupportedExponent:
        case qw::ErrorKind::Precision:
            return kExitUsage;
        default:
            return kExitFailure;
        }
    } catch (const std::exception &e) {
        std::cerr << "qw: " << e.what() << "\n";
        return kExitFailure;
    }
}

} // namespace

int main(int argc, char **argv) { return run(argc, argv); }
