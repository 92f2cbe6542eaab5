// ps-toolkit: command-line front end for the counting, exponential-sum and
// exponent-algebra library. Every subcommand prints one JSON report (or CSV
// rows with --format csv); apart from the timing field the output is
// byte-identical across runs and worker counts.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "pst/analysis.hpp"
#include "pst/coprime.hpp"
#include "pst/errors.hpp"
#include "pst/exponent.hpp"
#include "pst/expsum.hpp"
#include "pst/psseq.hpp"
#include "pst/realpow.hpp"

using nlohmann::json;
using namespace pst;

namespace {

struct GlobalOpts {
    std::string format = "json";
    std::string out_path;
    int workers = 0;
    Budgets budgets;
};

// Exact value plus decimal rendering, the house style for numeric output.
json val_json(const mpz_class& v) {
    return json{{"exact", v.get_str()}, {"approx", v.get_d()}};
}
json val_json(int64_t v) { return val_json(mpz_class(static_cast<long>(v))); }
json val_json(uint64_t v) { return val_json(mpz_class(static_cast<unsigned long>(v))); }
json val_json(const Rat& v) {
    return json{{"exact", rat_str(v)}, {"approx", rat_double(v)}};
}

json monomial_json(const LogMonomial& m) {
    json j = json::object();
    for (const auto& [name, e] : m.exps()) j[name] = rat_str(e);
    return j;
}

std::vector<OrderSpec> parse_orders(const std::string& text) {
    std::vector<OrderSpec> orders;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) orders.push_back(OrderSpec::parse(tok));
    if (orders.empty()) throw ParseError("no orders given");
    return orders;
}

std::string orders_str(const std::vector<OrderSpec>& orders) {
    std::string s;
    for (const OrderSpec& c : orders) {
        if (!s.empty()) s += ";";
        s += c.str();
    }
    return s;
}

// Grid specification: either "lo:hi:ratio" or an explicit comma list.
std::vector<double> parse_grid(const std::string& grid_spec, const std::string& xs) {
    if (!grid_spec.empty() && !xs.empty())
        throw ParseError("--grid and --xs are mutually exclusive");
    if (!grid_spec.empty()) {
        double lo = 0, hi = 0, ratio = 2;
        if (std::sscanf(grid_spec.c_str(), "%lf:%lf:%lf", &lo, &hi, &ratio) != 3)
            throw ParseError("bad grid spec (want lo:hi:ratio): " + grid_spec);
        return geometric_grid(lo, hi, ratio);
    }
    if (xs.empty()) throw ParseError("give --grid lo:hi:ratio or --xs x1,x2,...");
    std::vector<double> grid;
    std::stringstream ss(xs);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            grid.push_back(std::stod(tok));
        } catch (const std::logic_error&) {
            throw ParseError("bad cutoff: " + tok);
        }
    }
    return grid;
}

std::string csv_num(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// A finished report: JSON object plus the CSV rendering of the same data.
// A nonzero exit code still prints the report (two-route disagreement must
// show both counts before the process signals the failure).
struct Report {
    json body;
    std::string csv;
    int exit_code = 0;
};

void emit(const GlobalOpts& g, const std::string& command, const json& params, Report&& report,
          double ms) {
    std::string text;
    if (g.format == "csv") {
        text = report.csv;
    } else {
        json doc;
        doc["schema"] = 1;
        doc["command"] = command;
        doc["params"] = params;
        doc["result"] = std::move(report.body);
        doc["timing_ms"] = ms;
        text = doc.dump(2) + "\n";
    }
    if (g.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(g.out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file " + g.out_path);
        out << text;
    }
}

// ---- error-curve / fit plumbing ---------------------------------------

Report curve_report(const ErrorCurve& curve) {
    const double e = theoretical_exponent(curve);
    Report rep;
    rep.body["exponent"] = e;
    rep.body["rows"] = json::array();
    std::string csv = "x,observed,theoretical,ratio\n";
    for (const auto& s : curve.samples) {
        const double theo = std::pow(s.x, e);
        const double ratio = s.observed / theo;
        rep.body["rows"].push_back(
            json{{"x", s.x}, {"observed", s.observed}, {"theoretical", theo}, {"ratio", ratio}});
        csv += csv_num(s.x) + "," + csv_num(s.observed) + "," + csv_num(theo) + "," +
               csv_num(ratio) + "\n";
    }
    rep.csv = std::move(csv);
    return rep;
}

ErrorCurve curve_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    ErrorCurve curve;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string xs, os;
        if (!std::getline(ss, xs, ',') || !std::getline(ss, os, ',')) continue;
        try {
            const double x = std::stod(xs);
            const double obs = std::stod(os);
            curve.samples.push_back({x, obs});
        } catch (const std::logic_error&) {
            continue; // header or stray text row
        }
    }
    if (curve.samples.empty()) throw ParseError("no samples found in " + path);
    return curve;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Counting toolkit for integer-part power sequences"};
    // --h is the phase numerator on several subcommands, so help is long-form
    // only (the default -h would collide with it).
    app.set_help_flag("--help", "Print help and exit");
    app.require_subcommand(1);
    // Let --format/--out/--workers/--max-bits appear after the subcommand.
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", g.out_path, "Write output to a file instead of stdout");
    app.add_option("--workers", g.workers, "OpenMP thread count (0 = library default)");
    app.add_option("--max-bits", g.budgets.max_bits, "Precision escalation cap in bits")
        ->envname("PS_TOOLKIT_MAX_BITS");
    app.add_option("--start-bits", g.budgets.start_bits, "Initial working precision in bits");
    app.add_option("--max-brute", g.budgets.max_bruteforce,
                   "Brute-force evaluation guard (tuple count)");
    app.add_option("--rho-budget", g.budgets.rho_budget, "Factorization iteration budget");
    app.add_option("--max-terms", g.budgets.max_terms, "Exponential sum length cap");
    app.add_option("--trial-limit", g.budgets.trial_limit, "Trial-division prime bound");

    // Subcommand state. CLI11 callbacks run after parsing; each one fills
    // `run` with the actual computation.
    std::function<Report(json&)> run;
    std::string command;

    auto finish = [&](const std::string& name, std::function<Report(json&)> fn) {
        command = name;
        run = std::move(fn);
    };

    // ---- floor ---------------------------------------------------------
    {
        auto* sc = app.add_subcommand("floor", "Certified floor(n^c)");
        auto n = std::make_shared<uint64_t>(1);
        auto c = std::make_shared<std::string>("1");
        sc->add_option("--n", *n, "Argument n >= 1")->required();
        sc->add_option("--c", *c, "Order (\"3/2\", \"sqrt:2\", \"2.7\")")->required();
        sc->callback([&, n, c] {
            finish("floor", [&, n, c](json& params) {
                const OrderSpec order = OrderSpec::parse(*c);
                params = {{"n", *n}, {"c", order.str()}};
                const CertifiedFloor f = floor_pow(*n, order, g.budgets);
                Report rep;
                rep.body = {{"value", val_json(f.value)},
                            {"bits", static_cast<int64_t>(f.bits)},
                            {"exact", f.exact}};
                rep.csv = "n,c,value,bits,exact\n" + std::to_string(*n) + "," + order.str() + "," +
                          f.value.get_str() + "," + std::to_string(f.bits) + "," +
                          (f.exact ? "1" : "0") + "\n";
                return rep;
            });
        });
    }

    // ---- frac-part -----------------------------------------------------
    {
        auto* sc = app.add_subcommand("frac-part", "Fractional part of h*n^c/q");
        auto n = std::make_shared<uint64_t>(1);
        auto h = std::make_shared<uint64_t>(1);
        auto q = std::make_shared<uint64_t>(1);
        auto c = std::make_shared<std::string>("1");
        auto eps = std::make_shared<double>(1e-12);
        sc->add_option("--n", *n)->required();
        sc->add_option("--h", *h);
        sc->add_option("--q", *q);
        sc->add_option("--c", *c)->required();
        sc->add_option("--eps", *eps, "Certified absolute error");
        sc->callback([&, n, h, q, c, eps] {
            finish("frac-part", [&, n, h, q, c, eps](json& params) {
                const OrderSpec order = OrderSpec::parse(*c);
                params = {{"n", *n}, {"h", *h}, {"q", *q}, {"c", order.str()}, {"eps", *eps}};
                const double v = frac_part_scaled(*n, *h, *q, order, *eps, g.budgets);
                Report rep;
                rep.body = {{"value", v}};
                rep.csv = "n,h,q,c,eps,value\n" + std::to_string(*n) + "," + std::to_string(*h) +
                          "," + std::to_string(*q) + "," + order.str() + "," + csv_num(*eps) + "," +
                          csv_num(v) + "\n";
                return rep;
            });
        });
    }

    // ---- is-exact-power --------------------------------------------------
    {
        auto* sc = app.add_subcommand("is-exact-power", "Detect integer n^c");
        auto n = std::make_shared<uint64_t>(1);
        auto c = std::make_shared<std::string>("1");
        sc->add_option("--n", *n)->required();
        sc->add_option("--c", *c)->required();
        sc->callback([&, n, c] {
            finish("is-exact-power", [&, n, c](json& params) {
                const OrderSpec order = OrderSpec::parse(*c);
                params = {{"n", *n}, {"c", order.str()}};
                const auto v = is_exact_power(*n, order);
                Report rep;
                rep.body = {{"exact", v.has_value()}};
                if (v) rep.body["value"] = val_json(*v);
                rep.csv = "n,c,exact,value\n" + std::to_string(*n) + "," + order.str() + "," +
                          (v ? "1" : "0") + "," + (v ? v->get_str() : "") + "\n";
                return rep;
            });
        });
    }

    // ---- count-ap --------------------------------------------------------
    {
        auto* sc = app.add_subcommand("count-ap", "Count n <= x with floor(n^c) = a mod q");
        auto x = std::make_shared<double>(1);
        auto a = std::make_shared<int64_t>(0);
        auto q = std::make_shared<uint64_t>(1);
        auto c = std::make_shared<std::string>("1");
        sc->add_option("--x", *x)->required();
        sc->add_option("--a", *a)->required();
        sc->add_option("--q", *q)->required();
        sc->add_option("--c", *c)->required();
        sc->callback([&, x, a, q, c] {
            finish("count-ap", [&, x, a, q, c](json& params) {
                const OrderSpec order = OrderSpec::parse(*c);
                params = {{"x", *x}, {"a", *a}, {"q", *q}, {"c", order.str()}};
                const int64_t count = count_ap(*x, *a, *q, order, g.budgets);
                const double main = *x / static_cast<double>(*q);
                Report rep;
                rep.body = {{"count", val_json(count)},
                            {"main_term", main},
                            {"error", static_cast<double>(count) - main}};
                rep.csv = "x,a,q,c,count\n" + csv_num(*x) + "," + std::to_string(*a) + "," +
                          std::to_string(*q) + "," + order.str() + "," + std::to_string(count) +
                          "\n";
                return rep;
            });
        });
    }

    // ---- residue-profile ---------------------------------------------------
    {
        auto* sc = app.add_subcommand("residue-profile", "Counts for every residue class mod q");
        auto x = std::make_shared<double>(1);
        auto q = std::make_shared<uint64_t>(1);
        auto c = std::make_shared<std::string>("1");
        sc->add_option("--x", *x)->required();
        sc->add_option("--q", *q)->required();
        sc->add_option("--c", *c)->required();
        sc->callback([&, x, q, c] {
            finish("residue-profile", [&, x, q, c](json& params) {
                const OrderSpec order = OrderSpec::parse(*c);
                params = {{"x", *x}, {"q", *q}, {"c", order.str()}};
                const ResidueProfile profile = residue_profile(*x, *q, order, g.budgets);
                Report rep;
                rep.body = {{"sparse", profile.sparse}, {"total", profile.total()}};
                json rows = json::array();
                std::string csv = "a,count\n";
                if (profile.sparse) {
                    for (const auto& [a, n] : profile.sparse_counts) {
                        rows.push_back(json{{"a", a}, {"count", n}});
                        csv += std::to_string(a) + "," + std::to_string(n) + "\n";
                    }
                } else {
                    for (uint64_t a = 0; a < profile.q; ++a) {
                        rows.push_back(json{{"a", a}, {"count", profile.dense[a]}});
                        csv += std::to_string(a) + "," + std::to_string(profile.dense[a]) + "\n";
                    }
                }
                rep.body["rows"] = std::move(rows);
                rep.csv = std::move(csv);
                return rep;
            });
        });
    }

    // ---- divisor-count -----------------------------------------------------
    {
        auto* sc = app.add_subcommand("divisor-count", "Count n <= x with d | floor(n^c)");
        auto x = std::make_shared<double>(1);
        auto d = std::make_shared<uint64_t>(1);
        auto c = std::make_shared<std::string>("1");
        sc->add_option("--x", *x)->required();
        sc->add_option("--d", *d)->required();
        sc->add_option("--c", *c)->required();
        sc->callback([&, x, d, c] {
            finish("divisor-count", [&, x, d, c](json& params) {
                const OrderSpec order = OrderSpec::parse(*c);
                params = {{"x", *x}, {"d", *d}, {"c", order.str()}};
                const int64_t count = divisor_count(*x, *d, order, g.budgets);
                Report rep;
                rep.body = {{"count", val_json(count)}};
                rep.csv = "x,d,c,count\n" + csv_num(*x) + "," + std::to_string(*d) + "," +
                          order.str() + "," + std::to_string(count) + "\n";
                return rep;
            });
        });
    }

    // ---- ap-error ------------------------------------------------------------
    {
        auto* sc = app.add_subcommand("ap-error", "Observed vs predicted residue-count error");
        auto x = std::make_shared<double>(1);
        auto a = std::make_shared<int64_t>(0);
        auto q = std::make_shared<uint64_t>(1);
        auto c = std::make_shared<std::string>("1");
        auto k = std::make_shared<int>(1);
        sc->add_option("--x", *x)->required();
        sc->add_option("--a", *a)->required();
        sc->add_option("--q", *q)->required();
        sc->add_option("--c", *c)->required();
        sc->add_option("--k", *k, "Derivative-test level")->required();
        sc->callback([&, x, a, q, c, k] {
            finish("ap-error", [&, x, a, q, c, k](json& params) {
                const OrderSpec order = OrderSpec::parse(*c);
                params = {{"x", *x}, {"a", *a}, {"q", *q}, {"c", order.str()}, {"k", *k}};
                const ApErrorReport r = ap_error_report(*x, *a, *q, order, *k, g.budgets);
                Report rep;
                rep.body = {{"observed", r.observed},
                            {"theoretical", r.theoretical},
                            {"ratio", r.observed / r.theoretical},
                            {"k", r.k}};
                rep.csv = "x,a,q,c,k,observed,theoretical,ratio\n" + csv_num(*x) + "," +
                          std::to_string(*a) + "," + std::to_string(*q) + "," + order.str() + "," +
                          std::to_string(*k) + "," + csv_num(r.observed) + "," +
                          csv_num(r.theoretical) + "," + csv_num(r.observed / r.theoretical) + "\n";
                return rep;
            });
        });
    }

    // ---- coprime-pairs / coprime-tuples ------------------------------------
    auto add_coprime = [&](const std::string& name, bool pairs) {
        auto* sc = app.add_subcommand(
            name, pairs ? "Count coprime pairs (floor(m^c), floor(n^c))"
                        : "Count r-tuples with coprime floor values");
        auto x = std::make_shared<double>(1);
        auto c = std::make_shared<std::string>("1");
        auto orders = std::make_shared<std::string>();
        auto route = std::make_shared<std::string>("mobius");
        sc->add_option("--x", *x)->required();
        if (pairs)
            sc->add_option("--c", *c)->required();
        else
            sc->add_option("--orders", *orders, "Comma-separated orders")->required();
        sc->add_option("--route", *route)->check(CLI::IsMember({"brute", "mobius", "both"}));
        sc->callback([&, x, c, orders, route, pairs, name] {
            finish(name, [&, x, c, orders, route, pairs](json& params) {
                const std::vector<OrderSpec> ords =
                    pairs ? std::vector<OrderSpec>{OrderSpec::parse(*c), OrderSpec::parse(*c)}
                          : parse_orders(*orders);
                const TupleSpec spec(ords, *x);
                params = {{"x", *x}, {"orders", orders_str(spec.orders)}, {"route", *route}};
                std::optional<int64_t> brute, mobius;
                if (*route == "brute" || *route == "both")
                    brute = coprime_tuples_bruteforce(spec, g.budgets);
                if (*route == "mobius" || *route == "both")
                    mobius = coprime_tuples_mobius(spec, default_factorizer(), g.budgets);
                const int64_t count = mobius ? *mobius : *brute;
                Report rep;
                rep.body["count"] = val_json(count);
                rep.body["main_term"] = main_term(*x, spec.r());
                if (brute) rep.body["count_brute"] = val_json(*brute);
                if (mobius) rep.body["count_mobius"] = val_json(*mobius);
                std::string csv = "x,orders,route,count\n";
                if (brute)
                    csv += csv_num(*x) + "," + orders_str(spec.orders) + ",brute," +
                           std::to_string(*brute) + "\n";
                if (mobius)
                    csv += csv_num(*x) + "," + orders_str(spec.orders) + ",mobius," +
                           std::to_string(*mobius) + "\n";
                rep.csv = std::move(csv);
                if (brute && mobius) {
                    rep.body["agreement"] = *brute == *mobius;
                    if (*brute != *mobius) rep.exit_code = 4;
                }
                return rep;
            });
        });
    };
    add_coprime("coprime-pairs", true);
    add_coprime("coprime-tuples", false);

    // ---- dd-count -------------------------------------------------------------
    {
        auto* sc = app.add_subcommand("dd-count", "Count n <= x with gcd(n, floor(n^c)) = 1");
        auto x = std::make_shared<double>(1);
        auto c = std::make_shared<std::string>("1");
        sc->add_option("--x", *x)->required();
        sc->add_option("--c", *c)->required();
        sc->callback([&, x, c] {
            finish("dd-count", [&, x, c](json& params) {
                const OrderSpec order = OrderSpec::parse(*c);
                params = {{"x", *x}, {"c", order.str()}};
                const int64_t count = dd_coprime_count(*x, order, g.budgets);
                const double limit = 1.0 / zeta(2);
                Report rep;
                rep.body = {{"count", val_json(count)},
                            {"ratio", static_cast<double>(count) / *x},
                            {"density_limit", limit}};
                rep.csv = "x,c,count,ratio,density_limit\n" + csv_num(*x) + "," + order.str() +
                          "," + std::to_string(count) + "," +
                          csv_num(static_cast<double>(count) / *x) + "," + csv_num(limit) + "\n";
                return rep;
            });
        });
    }

    // ---- tau-sum ---------------------------------------------------------------
    {
        auto* sc = app.add_subcommand("tau-sum", "Sum of the divisor function over floor(n^c)");
        auto x = std::make_shared<double>(1);
        auto c = std::make_shared<std::string>("1");
        sc->add_option("--x", *x)->required();
        sc->add_option("--c", *c)->required();
        sc->callback([&, x, c] {
            finish("tau-sum", [&, x, c](json& params) {
                const OrderSpec order = OrderSpec::parse(*c);
                params = {{"x", *x}, {"c", order.str()}};
                const uint64_t total = tau_sum(*x, order, default_factorizer(), g.budgets);
                Report rep;
                rep.body = {{"sum", val_json(total)}};
                rep.csv = "x,c,sum\n" + csv_num(*x) + "," + order.str() + "," +
                          std::to_string(total) + "\n";
                return rep;
            });
        });
    }

    // ---- weyl-sum ----------------------------------------------------------------
    {
        auto* sc = app.add_subcommand("weyl-sum", "Sum of e(h n^c / q) over a dyadic block");
        auto m = std::make_shared<double>(1);
        auto m2 = std::make_shared<double>(2);
        auto h = std::make_shared<uint64_t>(1);
        auto q = std::make_shared<uint64_t>(1);
        auto c = std::make_shared<std::string>("1");
        auto eps = std::make_shared<double>(1e-12);
        sc->add_option("--m", *m, "Block start (exclusive)")->required();
        sc->add_option("--m2", *m2, "Block end (inclusive)")->required();
        sc->add_option("--h", *h);
        sc->add_option("--q", *q);
        sc->add_option("--c", *c)->required();
        sc->add_option("--eps", *eps);
        sc->callback([&, m, m2, h, q, c, eps] {
            finish("weyl-sum", [&, m, m2, h, q, c, eps](json& params) {
                const OrderSpec order = OrderSpec::parse(*c);
                params = {{"m", *m},       {"m2", *m2}, {"h", *h},
                          {"q", *q},       {"c", order.str()}, {"eps", *eps}};
                const DyadicBlock block(*m, *m2);
                const PhaseParams phase{*h, *q, order};
                const std::complex<double> s = weyl_sum(block, phase, *eps, false, g.budgets);
                Report rep;
                rep.body = {{"re", s.real()},
                            {"im", s.imag()},
                            {"abs", std::abs(s)},
                            {"terms", block.terms()}};
                rep.csv = "m,m2,h,q,c,re,im,abs,terms\n" + csv_num(*m) + "," + csv_num(*m2) + "," +
                          std::to_string(*h) + "," + std::to_string(*q) + "," + order.str() + "," +
                          csv_num(s.real()) + "," + csv_num(s.imag()) + "," + csv_num(std::abs(s)) +
                          "," + std::to_string(block.terms()) + "\n";
                return rep;
            });
        });
    }

    // ---- vdc-bound -----------------------------------------------------------------
    {
        auto* sc = app.add_subcommand("vdc-bound", "Derivative-test bound for a sum of length N");
        auto F = std::make_shared<double>(1);
        auto N = std::make_shared<double>(1);
        auto k = std::make_shared<int>(2);
        sc->add_option("--F", *F, "Phase size parameter")->required();
        sc->add_option("--N", *N, "Number of terms")->required();
        sc->add_option("--k", *k, "Derivative order >= 2")->required();
        sc->callback([&, F, N, k] {
            finish("vdc-bound", [&, F, N, k](json& params) {
                params = {{"F", *F}, {"N", *N}, {"k", *k}};
                const double b = vdc_bound(*F, *N, *k);
                Report rep;
                rep.body = {{"bound", b}};
                rep.csv = "F,N,k,bound\n" + csv_num(*F) + "," + csv_num(*N) + "," +
                          std::to_string(*k) + "," + csv_num(b) + "\n";
                return rep;
            });
        });
    }

    // ---- phase-scale / falling-product ------------------------------------------------
    {
        auto* sc = app.add_subcommand("phase-scale", "Phase size F = h q^-1 M^c");
        auto h = std::make_shared<uint64_t>(1);
        auto q = std::make_shared<uint64_t>(1);
        auto M = std::make_shared<double>(1);
        auto c = std::make_shared<std::string>("1");
        sc->add_option("--h", *h);
        sc->add_option("--q", *q);
        sc->add_option("--M", *M)->required();
        sc->add_option("--c", *c)->required();
        sc->callback([&, h, q, M, c] {
            finish("phase-scale", [&, h, q, M, c](json& params) {
                const OrderSpec order = OrderSpec::parse(*c);
                params = {{"h", *h}, {"q", *q}, {"M", *M}, {"c", order.str()}};
                const double v = phase_scale(PhaseParams{*h, *q, order}, *M);
                Report rep;
                rep.body = {{"value", v}};
                rep.csv = "h,q,M,c,value\n" + std::to_string(*h) + "," + std::to_string(*q) + "," +
                          csv_num(*M) + "," + order.str() + "," + csv_num(v) + "\n";
                return rep;
            });
        });
    }
    {
        auto* sc = app.add_subcommand("falling-product", "c(c-1)...(c-r+1)");
        auto c = std::make_shared<std::string>("1");
        auto r = std::make_shared<int>(1);
        sc->add_option("--c", *c)->required();
        sc->add_option("--r", *r)->required();
        sc->callback([&, c, r] {
            finish("falling-product", [&, c, r](json& params) {
                const OrderSpec order = OrderSpec::parse(*c);
                params = {{"c", order.str()}, {"r", *r}};
                const double v = falling_product(order, *r);
                Report rep;
                rep.body = {{"value", v}};
                rep.csv = "c,r,value\n" + order.str() + "," + std::to_string(*r) + "," +
                          csv_num(v) + "\n";
                return rep;
            });
        });
    }

    // ---- et-sides --------------------------------------------------------------------
    {
        auto* sc = app.add_subcommand(
            "et-sides", "Discrepancy inequality sides for fractional parts of h n^c / q");
        auto n = std::make_shared<uint64_t>(1);
        auto h = std::make_shared<uint64_t>(1);
        auto q = std::make_shared<uint64_t>(1);
        auto c = std::make_shared<std::string>("1");
        auto alpha = std::make_shared<double>(0);
        auto beta = std::make_shared<double>(1);
        auto H = std::make_shared<double>(1);
        auto eps = std::make_shared<double>(1e-12);
        auto in_file = std::make_shared<std::string>();
        sc->add_option("--n", *n, "Sequence length N");
        sc->add_option("--h", *h);
        sc->add_option("--q", *q);
        sc->add_option("--c", *c);
        sc->add_option("--alpha", *alpha)->required();
        sc->add_option("--beta", *beta)->required();
        sc->add_option("--H", *H)->required();
        sc->add_option("--eps", *eps);
        sc->add_option("--in", *in_file, "Read fractional parts from a file (one per line)");
        sc->callback([&, n, h, q, c, alpha, beta, H, eps, in_file] {
            finish("et-sides", [&, n, h, q, c, alpha, beta, H, eps, in_file](json& params) {
                EtBoundInput input;
                input.alpha = *alpha;
                input.beta = *beta;
                input.H = *H;
                if (!in_file->empty()) {
                    std::ifstream in(*in_file);
                    if (!in) throw ParseError("cannot open " + *in_file);
                    double v = 0;
                    while (in >> v) input.fracs.push_back(v);
                    params = {{"in", *in_file}};
                } else {
                    if (*n == 0) throw ParseError("give --n or --in");
                    const OrderSpec order = OrderSpec::parse(*c);
                    input.fracs = phase_fracs(*n, PhaseParams{*h, *q, order}, *eps, g.budgets);
                    params = {{"n", *n}, {"h", *h}, {"q", *q}, {"c", order.str()}};
                }
                params["alpha"] = *alpha;
                params["beta"] = *beta;
                params["H"] = *H;
                const EtSides sides = et_sides(input);
                Report rep;
                rep.body = {{"lhs", sides.lhs},
                            {"rhs", sides.rhs},
                            {"ratio", sides.lhs / sides.rhs},
                            {"terms", input.fracs.size()}};
                rep.csv = "n,alpha,beta,H,lhs,rhs,ratio\n" + std::to_string(input.fracs.size()) +
                          "," + csv_num(*alpha) + "," + csv_num(*beta) + "," + csv_num(*H) + "," +
                          csv_num(sides.lhs) + "," + csv_num(sides.rhs) + "," +
                          csv_num(sides.lhs / sides.rhs) + "\n";
                return rep;
            });
        });
    }

    // ---- optimize ----------------------------------------------------------------------
    {
        auto* sc = app.add_subcommand(
            "optimize", "Minimise the max of monotone monomial families over one variable");
        auto var = std::make_shared<std::string>("H");
        auto inc = std::make_shared<std::vector<std::string>>();
        auto dec = std::make_shared<std::vector<std::string>>();
        auto upper = std::make_shared<std::string>();
        auto lower = std::make_shared<std::string>();
        auto aux = std::make_shared<std::vector<std::string>>();
        sc->add_option("--var", *var, "Optimisation variable")->required();
        sc->add_option("--inc", *inc, "Increasing term, e.g. H^1/6*q^-1/6*M^11/12")->required();
        sc->add_option("--dec", *dec, "Decreasing term")->required();
        sc->add_option("--upper", *upper, "Right endpoint monomial (default: open)");
        sc->add_option("--lower", *lower, "Left endpoint monomial (default: open at 0)");
        sc->add_option("--aux", *aux, "Numeric log value, e.g. q=7/2 (enables exact totals)");
        sc->callback([&, var, inc, dec, upper, lower, aux] {
            finish("optimize", [&, var, inc, dec, upper, lower, aux](json& params) {
                auto parse_monomial = [](const std::string& text) {
                    LogMonomial m;
                    std::stringstream ss(text);
                    std::string tok;
                    while (std::getline(ss, tok, '*')) {
                        const auto care = tok.find('^');
                        if (care == std::string::npos) {
                            m.set_exp(tok, m.exp_of(tok) + 1);
                        } else {
                            const std::string name = tok.substr(0, care);
                            m.set_exp(name, m.exp_of(name) +
                                                rat_from_string(tok.substr(care + 1)));
                        }
                    }
                    return m;
                };
                OptProblem p;
                p.var = *var;
                for (const std::string& t : *inc) p.increasing.push_back(parse_monomial(t));
                for (const std::string& t : *dec) p.decreasing.push_back(parse_monomial(t));
                if (!upper->empty()) p.upper = parse_monomial(*upper);
                if (!lower->empty()) p.lower = parse_monomial(*lower);
                for (const std::string& t : *aux) {
                    const auto eq = t.find('=');
                    if (eq == std::string::npos) throw ParseError("bad aux assignment: " + t);
                    p.aux_log[t.substr(0, eq)] = rat_from_string(t.substr(eq + 1));
                }
                params = {{"var", *var}, {"inc", *inc}, {"dec", *dec}};
                if (!upper->empty()) params["upper"] = *upper;
                if (!lower->empty()) params["lower"] = *lower;
                if (!aux->empty()) params["aux"] = *aux;

                const OptResult r = optimize(p);
                Report rep;
                rep.body["unbounded"] = r.unbounded;
                std::string where;
                switch (r.where) {
                    case OptWhere::lower_endpoint: where = "lower"; break;
                    case OptWhere::upper_endpoint: where = "upper"; break;
                    case OptWhere::interior: where = "interior"; break;
                }
                if (!r.unbounded) {
                    rep.body["value"] = monomial_json(r.value);
                    rep.body["where"] = where;
                    if (r.arg) rep.body["argmin"] = monomial_json(*r.arg);
                    if (r.value_log) rep.body["value_log"] = rat_str(*r.value_log);
                    if (r.arg_log) rep.body["arg_log"] = rat_str(*r.arg_log);
                }
                rep.csv = "unbounded,where,value,argmin\n" +
                          std::string(r.unbounded ? "1" : "0") + "," + where + "," +
                          (r.unbounded ? "" : r.value.str()) + "," +
                          (r.arg ? r.arg->str() : "") + "\n";
                return rep;
            });
        });
    }

    // ---- exponent algebra ---------------------------------------------------------------
    {
        auto* sc = app.add_subcommand("ap-exponent", "Residue-count error exponent pair");
        auto k = std::make_shared<int>(1);
        auto c = std::make_shared<std::string>("1");
        sc->add_option("--k", *k)->required();
        sc->add_option("--c", *c)->required();
        sc->callback([&, k, c] {
            finish("ap-exponent", [&, k, c](json& params) {
                const Rat order = rat_from_string(*c);
                params = {{"k", *k}, {"c", rat_str(order)}};
                const auto [ex, eq] = ap_exponent(*k, order);
                Report rep;
                rep.body = {{"x_exp", val_json(ex)}, {"q_exp", val_json(eq)}};
                rep.csv = "k,c,x_exp,q_exp\n" + std::to_string(*k) + "," + rat_str(order) + "," +
                          rat_str(ex) + "," + rat_str(eq) + "\n";
                return rep;
            });
        });
    }
    {
        auto* sc = app.add_subcommand("best-k", "Winning level for modulus q = x^theta");
        auto c = std::make_shared<std::string>("1");
        auto theta = std::make_shared<std::string>("0");
        sc->add_option("--c", *c)->required();
        sc->add_option("--theta", *theta, "log_x q as an exact rational")->required();
        sc->callback([&, c, theta] {
            finish("best-k", [&, c, theta](json& params) {
                const Rat order = rat_from_string(*c);
                const Rat th = rat_from_string(*theta);
                params = {{"c", rat_str(order)}, {"theta", rat_str(th)}};
                const int k = best_k_for_modulus(order, th);
                Report rep;
                rep.body = {{"k", k}};
                rep.csv = "c,theta,k\n" + rat_str(order) + "," + rat_str(th) + "," +
                          std::to_string(k) + "\n";
                return rep;
            });
        });
    }
    {
        auto* sc = app.add_subcommand("pair-exponent", "Tuple-count error exponent");
        auto k = std::make_shared<int>(2);
        auto c = std::make_shared<std::string>("1");
        auto r = std::make_shared<int>(2);
        sc->add_option("--k", *k)->required();
        sc->add_option("--c", *c)->required();
        sc->add_option("--r", *r)->required();
        sc->callback([&, k, c, r] {
            finish("pair-exponent", [&, k, c, r](json& params) {
                const Rat order = rat_from_string(*c);
                params = {{"k", *k}, {"c", rat_str(order)}, {"r", *r}};
                const Rat e = pair_error_exponent(*k, order, *r);
                Report rep;
                rep.body = {{"exponent", val_json(e)}};
                rep.csv = "k,c,r,exponent,approx\n" + std::to_string(*k) + "," + rat_str(order) +
                          "," + std::to_string(*r) + "," + rat_str(e) + "," +
                          csv_num(rat_double(e)) + "\n";
                return rep;
            });
        });
    }
    {
        auto* sc = app.add_subcommand("choose-k", "Level selection from the order alone");
        auto c = std::make_shared<std::string>("1");
        sc->add_option("--c", *c)->required();
        sc->callback([&, c] {
            finish("choose-k", [&, c](json& params) {
                const Rat order = rat_from_string(*c);
                params = {{"c", rat_str(order)}};
                const int k = choose_k_special(order);
                Report rep;
                rep.body = {{"k", k}};
                rep.csv = "c,k\n" + rat_str(order) + "," + std::to_string(k) + "\n";
                return rep;
            });
        });
    }

    // ---- zeta / main term -----------------------------------------------------------------
    {
        auto* sc = app.add_subcommand("zeta", "Riemann zeta at an integer r >= 2");
        auto r = std::make_shared<int>(2);
        sc->add_option("--r", *r)->required();
        sc->callback([&, r] {
            finish("zeta", [&, r](json& params) {
                params = {{"r", *r}};
                Report rep;
                rep.body = {{"value", zeta(*r)}};
                rep.csv = "r,value\n" + std::to_string(*r) + "," + csv_num(zeta(*r)) + "\n";
                return rep;
            });
        });
    }
    {
        auto* sc = app.add_subcommand("main-term", "Leading-order tuple count x^r / zeta(r)");
        auto x = std::make_shared<double>(1);
        auto r = std::make_shared<int>(2);
        sc->add_option("--x", *x)->required();
        sc->add_option("--r", *r)->required();
        sc->callback([&, x, r] {
            finish("main-term", [&, x, r](json& params) {
                params = {{"x", *x}, {"r", *r}};
                Report rep;
                rep.body = {{"value", main_term(*x, *r)}};
                rep.csv = "x,r,value\n" + csv_num(*x) + "," + std::to_string(*r) + "," +
                          csv_num(main_term(*x, *r)) + "\n";
                return rep;
            });
        });
    }

    // ---- error-curve / fit -------------------------------------------------------------------
    {
        auto* sc = app.add_subcommand("error-curve", "Observed error sizes along a cutoff grid");
        auto kind = std::make_shared<std::string>("pairs");
        auto c = std::make_shared<std::string>("1");
        auto orders = std::make_shared<std::string>();
        auto grid_spec = std::make_shared<std::string>();
        auto xs = std::make_shared<std::string>();
        auto a = std::make_shared<int64_t>(0);
        auto q = std::make_shared<uint64_t>(1);
        sc->add_option("--kind", *kind)->check(CLI::IsMember({"pairs", "tuples", "ap", "dd"}));
        sc->add_option("--c", *c, "Order (pairs/ap/dd)");
        sc->add_option("--orders", *orders, "Comma-separated orders (tuples)");
        sc->add_option("--grid", *grid_spec, "lo:hi:ratio geometric grid");
        sc->add_option("--xs", *xs, "Explicit comma-separated cutoffs");
        sc->add_option("--a", *a, "Residue (ap)");
        sc->add_option("--q", *q, "Modulus (ap)");
        sc->callback([&, kind, c, orders, grid_spec, xs, a, q] {
            finish("error-curve", [&, kind, c, orders, grid_spec, xs, a, q](json& params) {
                const std::vector<double> grid = parse_grid(*grid_spec, *xs);
                ErrorCurve curve;
                if (*kind == "pairs") {
                    const OrderSpec order = OrderSpec::parse(*c);
                    params = {{"kind", *kind}, {"c", order.str()}};
                    curve = error_curve_pairs(grid, order, default_factorizer(), g.budgets);
                } else if (*kind == "tuples") {
                    const std::vector<OrderSpec> ords = parse_orders(*orders);
                    params = {{"kind", *kind}, {"orders", orders_str(ords)}};
                    curve = error_curve_tuples(grid, ords, default_factorizer(), g.budgets);
                } else if (*kind == "ap") {
                    const OrderSpec order = OrderSpec::parse(*c);
                    params = {{"kind", *kind}, {"c", order.str()}, {"a", *a}, {"q", *q}};
                    curve = error_curve_ap(grid, *a, *q, order, g.budgets);
                } else {
                    const OrderSpec order = OrderSpec::parse(*c);
                    params = {{"kind", *kind}, {"c", order.str()}};
                    curve = error_curve_dd(grid, order, g.budgets);
                }
                return curve_report(curve);
            });
        });
    }
    {
        auto* sc = app.add_subcommand("fit", "Log-log slope fit of an error curve CSV");
        auto in_file = std::make_shared<std::string>();
        sc->add_option("--in", *in_file, "CSV with x,observed columns")->required();
        sc->callback([&, in_file] {
            finish("fit", [&, in_file](json& params) {
                params = {{"in", *in_file}};
                const ErrorCurve curve = curve_from_csv(*in_file);
                const SlopeFit fit = fit_slope(curve);
                Report rep;
                rep.body = {{"slope", fit.slope},
                            {"intercept", fit.intercept},
                            {"residual_rms", fit.residual_rms},
                            {"n_points", fit.n_points},
                            {"dropped_zeros", fit.dropped_zeros}};
                rep.csv = "slope,intercept,residual_rms,n_points,dropped_zeros\n" +
                          csv_num(fit.slope) + "," + csv_num(fit.intercept) + "," +
                          csv_num(fit.residual_rms) + "," + std::to_string(fit.n_points) + "," +
                          std::to_string(fit.dropped_zeros) + "\n";
                return rep;
            });
        });
    }

    // ---- parse & dispatch ------------------------------------------------------------------
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (g.workers > 0) omp_set_num_threads(g.workers);

    try {
        json params;
        const auto t0 = std::chrono::steady_clock::now();
        Report rep = run(params);
        const auto t1 = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        const int code = rep.exit_code;
        emit(g, command, params, std::move(rep), ms);
        if (code == 4) std::cerr << "route disagreement: counts differ\n";
        return code;
    } catch (const PrecisionError& e) {
        std::cerr << "precision budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "bad input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
