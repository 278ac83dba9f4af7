#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <ostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "barnes/barnes_functions.hpp"
#include "barnes/integral_rep.hpp"
#include "barnes/limit_rep.hpp"
#include "barnes/oracles.hpp"
#include "barnes/series_rep.hpp"

namespace barnes::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string g17(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
}

// "RE" or "RE,IM"
Complex parse_complex(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) return parse_double(s);
    return {parse_double(s.substr(0, comma)), parse_double(s.substr(comma + 1))};
}

// weight token: "x", "x+yi", "x-yi"
Complex parse_weight(const std::string& s) {
    static const std::regex re(R"(^\s*([-+]?[0-9.eE]+(?:[eE][-+]?\d+)?)\s*(?:([-+])\s*([0-9.eE]+(?:[eE][-+]?\d+)?)?i)?\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw UsageError("bad weight: '" + s + "'");
    double re_part = parse_double(m[1]);
    double im = 0;
    if (m[2].matched) {
        im = m[3].matched ? parse_double(m[3]) : 1.0;
        if (m[2] == "-") im = -im;
    }
    return {re_part, im};
}

std::vector<Complex> parse_weights(const std::string& s) {
    std::vector<Complex> w;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) w.push_back(parse_weight(tok));
    if (w.empty()) throw UsageError("--w: empty weight list");
    return w;
}

json cjson(Complex z) { return json::array({z.real(), z.imag()}); }

json result_json(const EvalResult& r) {
    json j;
    j["value"] = cjson(r.value);
    j["est_error"] = r.abs_error_estimate;
    j["method"] = method_name(r.method);
    j["diagnostics"] = json::object();
    for (const auto& [k, v] : r.diagnostics) j["diagnostics"][k] = v;
    return j;
}

void print_result(const EvalResult& r, bool as_json, std::ostream& out) {
    if (as_json) {
        out << result_json(r).dump() << "\n";
        return;
    }
    out << "value: " << g17(r.value.real());
    if (r.value.imag() != 0.0) out << (r.value.imag() < 0 ? " - " : " + ") << g17(std::abs(r.value.imag())) << "i";
    out << "\nest_error: " << g17(r.abs_error_estimate) << "\nmethod: " << method_name(r.method) << "\n";
}

// Closed-form Hurwitz reductions: d = 1, equal weights, and w = (s, n s).
Complex reduce_value(Complex alpha, Complex a, std::span<const Complex> w) {
    const int d = static_cast<int>(w.size());
    if (d == 1) return oracles::d1_value(alpha, a, w[0]);
    bool equal = true;
    for (auto x : w) equal = equal && x == w[0];
    if (equal) return oracles::isotropic_reduction(alpha, a, w[0], d);
    if (d == 2) {
        for (int i = 0; i < 2; ++i) {
            Complex s = w[i], r = w[1 - i] / s;
            double n = std::round(r.real());
            if (r.imag() == 0.0 && n >= 1 && r.real() == n)
                return std::exp(-alpha * std::log(s)) * oracles::rational_d2_reduction(alpha, a / s, int(n));
        }
    }
    throw UsageError("no Hurwitz reduction for these weights (d = 1, equal weights, or w = (s, n s) only)");
}

// Points with n_i >= 1 and n_j = 0 for j < i give zeta_B(alpha, w_i | w_i..w_d).
Complex reduce_value_h(Complex alpha, std::span<const Complex> w) {
    Complex s(0.0);
    for (std::size_t i = 0; i < w.size(); ++i) s += reduce_value(alpha, w[i], w.subspan(i));
    return s;
}

EvalConfig base_config(bool flag_tol = false) {
    EvalConfig c;
    if (flag_tol) return c;
    if (const char* env = std::getenv("BARNES_ZETA_TOL")) {
        try {
            c.rel_tol = parse_double(env);
        } catch (const UsageError&) {
            throw UsageError(std::string("BARNES_ZETA_TOL: not a number: '") + env + "'");
        }
    }
    return c;
}

// Flags shared by the evaluation commands.
struct Common {
    std::string alpha = "0", a = "1", w, method = "series";
    bool homogeneous = false, as_json = false;
    std::optional<double> tol;
    int q = 1;

    void add_params(CLI::App* app, bool with_alpha) {
        if (with_alpha) app->add_option("--alpha", alpha, "RE or RE,IM")->required();
        app->add_option("--a", a, "RE or RE,IM (default 1)");
        app->add_option("--w", w, "comma-separated weights; x or x+yi")->required();
        app->add_flag("--homogeneous", homogeneous, "homogeneous zeta (a = 0, origin dropped)");
        app->add_option("--tol", tol, "relative tolerance (overrides BARNES_ZETA_TOL)");
        app->add_flag("--json", as_json, "JSON output");
    }
    EvalConfig config() const {
        EvalConfig c = base_config(tol.has_value());
        if (tol) c.rel_tol = *tol;
        return c;
    }
    BarnesParams params() const { return {homogeneous ? Complex(0.0) : parse_complex(a), parse_weights(w)}; }
};

EvalResult closed_result(Complex v, Method m) {
    EvalResult r;
    r.value = v;
    r.method = m;
    return r;
}

EvalResult eval_value(const Common& o, Complex alpha, const BarnesParams& p);

// Attach the closed-form residue when the raising route did not.
EvalResult cmd_eval(const Common& o) {
    Complex alpha = parse_complex(o.alpha);
    BarnesParams p = o.params();
    try {
        return eval_value(o, alpha, p);
    } catch (const PoleError& e) {
        if (e.residue) throw;
        throw PoleError(e.what(), e.pole, o.homogeneous ? residue_bh(e.pole, p.w) : residue(e.pole, p));
    }
}

EvalResult eval_value(const Common& o, Complex alpha, const BarnesParams& p) {
    EvalConfig c = o.config();
    const std::string& m = o.method;
    if (o.homogeneous) {
        if (m == "series") return zeta_bh_series(alpha, p.w, c);
        if (m == "integral") return zeta_bh_integral(alpha, p.w, IntegralControls(c));
        if (m == "direct") return oracles::direct_sum_bh(alpha, p.w, c);
        if (m == "reduction") {
            validate_weights(p.w);
            check_pole(alpha, int(p.dim()));
            return closed_result(reduce_value_h(alpha, p.w), Method::Reduction);
        }
    } else {
        if (m == "series") return barnes_zeta_series(alpha, p, c);
        if (m == "integral") return barnes_zeta_integral(alpha, p, IntegralControls(c));
        if (m == "direct") return oracles::direct_sum(alpha, p, c);
        if (m == "reduction") {
            validate_params(p);
            check_pole(alpha, int(p.dim()));
            return closed_result(reduce_value(alpha, p.a, p.w), Method::Reduction);
        }
    }
    throw UsageError("eval: --method must be series|integral|direct|reduction");
}

EvalResult cmd_fp(const Common& o) {
    BarnesParams p = o.params();
    EvalConfig c = o.config();
    const std::string& m = o.method;
    if (o.homogeneous) {
        if (m == "series") return fp_bh_series(o.q, p.w, c);
        if (m == "limit") return fp_bh_limit(o.q, p.w, c);
        if (m == "integral") return fp_bh_integral(o.q, p.w, c);
    } else {
        if (m == "series") return fp_barnes_series(o.q, p, c);
        if (m == "limit") return fp_barnes_limit(o.q, p, c);
        if (m == "integral") return fp_barnes_integral(o.q, p, c);
    }
    throw UsageError("fp: --method must be series|limit|integral");
}

EvalResult cmd_deriv0(const Common& o) {
    BarnesParams p = o.params();
    EvalConfig c = o.config();
    const std::string& m = o.method;
    if (o.homogeneous) {
        if (m == "series") return deriv0_bh_series(p.w, c);
        if (m == "limit") return deriv0_bh_limit(p.w, c);
        if (m == "integral") return deriv0_bh_integral(p.w, c);
    } else {
        if (m == "series") return deriv0_barnes_series(p, c);
        if (m == "limit") return deriv0_barnes_limit(p, c);
        if (m == "integral") return deriv0_barnes_integral(p, c);
    }
    throw UsageError("deriv0: --method must be series|limit|integral");
}

Route parse_route(const std::string& s) {
    if (s == "series") return Route::Series;
    if (s == "limit") return Route::Limit;
    if (s == "integral") return Route::Integral;
    if (s == "best") return Route::Best;
    throw UsageError("gamma: --method must be series|limit|integral|best");
}

EvalResult cmd_gamma(const Common& o, const std::string& fn, int d) {
    MethodChoice mc;
    mc.route = parse_route(o.method);
    mc.config = o.config();
    if (fn == "multigamma") {
        if (d < 1) throw UsageError("gamma --fn multigamma needs --d >= 1");
        return multiple_gamma(parse_complex(o.a), d, mc);
    }
    auto w = parse_weights(o.w);
    if (fn == "logrho") return log_rho(w, mc);
    if (fn == "gammadq") return gamma_dq(o.q, w, mc);
    BarnesParams p{parse_complex(o.a), w};
    if (fn == "loggammaB") return log_gamma_B(p, mc);
    if (fn == "psiB") return psi_B(o.q, p, mc);
    throw UsageError("gamma: --fn must be loggammaB|psiB|logrho|gammadq|multigamma");
}

// ---- compare ----

struct Entry {
    std::string name, route;
    EvalResult r;
};

struct Quantity {
    std::string name;
    std::vector<Entry> entries;
    double max_diff = 0.0, tolerance = 0.0;
    bool pass = true;
    std::string error;
};

int cmd_compare(const Common& o, std::vector<std::string> routes, std::optional<double> agree_tol,
                const std::string& out_path, bool csv, std::ostream& out) {
    BarnesParams p = o.params();
    validate_params(p);
    EvalConfig c = base_config();
    const int d = static_cast<int>(p.dim());
    for (const auto& r : routes)
        if (r != "series" && r != "limit" && r != "integral" && r != "reduction")
            throw UsageError("compare: routes must be series|limit|integral|reduction");
    if (routes.empty()) throw UsageError("compare: empty route list");
    // Limit and Series disagree at O(1e-5) for d <= 2 and O(1e-4) for d = 3
    const double tol = agree_tol ? *agree_tol : (d <= 2 ? 1e-5 : 1e-4);
    auto has = [&](const std::string& r) { return std::find(routes.begin(), routes.end(), r) != routes.end(); };

    // one cube pass per evaluator serves all limit quantities
    std::optional<detail::LimitEvaluator> ev, evh;
    if (has("limit")) {
        auto sched = limit_schedule(c, d);
        ev.emplace(p.a, p.w, sched, false);
        evh.emplace(Complex(0.0), p.w, sched, true);
    }
    using Fn = std::function<EvalResult()>;
    struct Plan {
        std::string name;
        std::vector<std::pair<std::string, Fn>> by_route;
    };
    std::vector<Plan> plans;
    auto closed = [](Complex v) { return [v] { return closed_result(v, Method::Reduction); }; };
    for (int q = 1; q <= d; ++q) {
        Plan s{"fp_B(q=" + std::to_string(q) + ")", {}};
        s.by_route.push_back({"series", [&, q] { return fp_barnes_series(q, p, c); }});
        if (ev) s.by_route.push_back({"limit", [&, q] { return detail::fp_limit_from(*ev, q, c); }});
        s.by_route.push_back({"integral", [&, q] { return fp_barnes_integral(q, p, c); }});
        if (d == 1) s.by_route.push_back({"reduction", [&] { return closed(oracles::d1_fp(p.a, p.w[0]))(); }});
        plans.push_back(s);
    }
    {
        Plan s{"deriv0_B", {}};
        s.by_route.push_back({"series", [&] { return deriv0_barnes_series(p, c); }});
        if (ev) s.by_route.push_back({"limit", [&] { return detail::deriv0_limit_from(*ev, c); }});
        s.by_route.push_back({"integral", [&] { return deriv0_barnes_integral(p, c); }});
        if (d == 1) s.by_route.push_back({"reduction", [&] { return closed(oracles::d1_deriv0(p.a, p.w[0]))(); }});
        plans.push_back(s);
    }
    for (int q = 1; q <= d; ++q) {
        Plan s{"fp_Bh(q=" + std::to_string(q) + ")", {}};
        s.by_route.push_back({"series", [&, q] { return fp_bh_series(q, p.w, c); }});
        if (evh) s.by_route.push_back({"limit", [&, q] { return detail::fp_bh_limit_from(*evh, q, c); }});
        s.by_route.push_back({"integral", [&, q] { return fp_bh_integral(q, p.w, c); }});
        if (d == 1) s.by_route.push_back({"reduction", [&] { return closed(oracles::d1_fp_h(p.w[0]))(); }});
        plans.push_back(s);
    }
    {
        Plan s{"deriv0_Bh", {}};
        s.by_route.push_back({"series", [&] { return deriv0_bh_series(p.w, c); }});
        if (evh) s.by_route.push_back({"limit", [&] { return detail::deriv0_bh_limit_from(*evh, c); }});
        s.by_route.push_back({"integral", [&] { return deriv0_bh_integral(p.w, c); }});
        if (d == 1) s.by_route.push_back({"reduction", [&] { return closed(oracles::d1_deriv0_h(p.w[0]))(); }});
        plans.push_back(s);
    }

    std::vector<Quantity> qs;
    bool all_pass = true;
    for (const auto& s : plans) {
        Quantity qt{s.name, {}, 0.0, tol, true, ""};
        for (const auto& [route, fn] : s.by_route) {
            if (!has(route)) continue;
            try {
                qt.entries.push_back({s.name, route, fn()});
            } catch (const BarnesError& e) {
                qt.pass = false;
                qt.error += route + ": " + e.what() + "; ";
            }
        }
        double scale = qt.entries.empty() ? 0.0 : std::abs(qt.entries.front().r.value);
        for (std::size_t i = 0; i < qt.entries.size(); ++i)
            for (std::size_t j = i + 1; j < qt.entries.size(); ++j)
                qt.max_diff = std::max(qt.max_diff, std::abs(qt.entries[i].r.value - qt.entries[j].r.value));
        if (qt.max_diff > tol * (1.0 + scale)) qt.pass = false;
        all_pass = all_pass && qt.pass;
        qs.push_back(qt);
    }

    json rep;
    rep["params"] = {{"a", cjson(p.a)}, {"w", json::array()}};
    for (auto x : p.w) rep["params"]["w"].push_back(cjson(x));
    rep["quantities"] = json::array();
    rep["agreement_matrix"] = json::array();
    for (const auto& qt : qs) {
        for (const auto& e : qt.entries)
            rep["quantities"].push_back(
                {{"name", e.name}, {"route", e.route}, {"value", cjson(e.r.value)}, {"est_error", e.r.abs_error_estimate}});
        json a = {{"name", qt.name}, {"max_diff", qt.max_diff}, {"tolerance", qt.tolerance}, {"pass", qt.pass}};
        if (!qt.error.empty()) a["error"] = qt.error;
        rep["agreement_matrix"].push_back(a);
    }
    rep["pass"] = all_pass;

    std::ostringstream table;
    table << "quantity,route,value_re,value_im,est_error,max_diff,tolerance,pass\n";
    for (const auto& qt : qs)
        for (const auto& e : qt.entries)
            table << qt.name << ',' << e.route << ',' << g17(e.r.value.real()) << ',' << g17(e.r.value.imag()) << ','
                  << g17(e.r.abs_error_estimate) << ',' << g17(qt.max_diff) << ',' << g17(qt.tolerance) << ','
                  << (qt.pass ? "true" : "false") << '\n';

    if (!out_path.empty()) {
        std::ofstream fj(out_path), fc(out_path + ".csv");
        if (!fj || !fc) throw UsageError("cannot write " + out_path);
        fj << rep.dump(2) << "\n";
        fc << table.str();
    } else if (csv) {
        out << table.str();
    } else {
        out << rep.dump(2) << "\n";
    }
    return all_pass ? kOk : kCompareFail;
}

// ---- table ----

std::vector<double> parse_grid(const std::string& s) {
    static const std::regex re(R"(^([^:]+):([^:]+):(\d+)$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw UsageError("grid must be START:STOP:N");
    double a = parse_double(m[1]), b = parse_double(m[2]);
    int n = std::stoi(m[3]);
    if (n < 1) throw UsageError("grid needs N >= 1");
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    return g;
}

int error_code(const std::exception_ptr& e, std::ostream& err);

int cmd_table(Common o, const std::string& grid, double alpha_im, std::ostream& out, std::ostream& err) {
    auto g = parse_grid(grid);
    o.params();  // validate flags before printing anything
    int code = kOk;
    out << "alpha_re,alpha_im,value_re,value_im,est_error,method\n";
    for (double x : g) {
        Common row = o;
        row.alpha = g17(x) + "," + g17(alpha_im);
        const double nan = std::numeric_limits<double>::quiet_NaN();
        EvalResult r;
        std::string method = o.method;
        try {
            r = cmd_eval(row);
            method = method_name(r.method);
        } catch (const UsageError&) {
            throw;
        } catch (...) {
            int c = error_code(std::current_exception(), err);
            if (code == kOk) code = c;
            r.value = {nan, nan};
            r.abs_error_estimate = nan;
        }
        out << g17(x) << ',' << g17(alpha_im) << ',' << g17(r.value.real()) << ',' << g17(r.value.imag()) << ','
            << g17(r.abs_error_estimate) << ',' << method << '\n';
    }
    return code;
}

// Error class -> exit code, with the message on err.
int error_code(const std::exception_ptr& e, std::ostream& err) {
    try {
        std::rethrow_exception(e);
    } catch (const UsageError& x) {
        err << "error: " << x.what() << "\n";
        return kUsage;
    } catch (const PoleError& x) {
        err << "error: " << x.what() << "\n";
        if (x.residue) err << "hint: residue at alpha = " << x.pole << " is " << g17(x.residue->real())
                           << (x.residue->imag() != 0.0 ? " + " + g17(x.residue->imag()) + "i" : "") << "\n";
        return kPole;
    } catch (const DomainError& x) {
        err << "error: " << x.what() << "\n";
        return kUsage;
    } catch (const DimensionError& x) {
        err << "error: " << x.what() << "\n";
        return kUsage;
    } catch (const BarnesError& x) {
        // convergence, quadrature, truncation, resource
        err << "error: " << x.what() << "\n";
        return kNumeric;
    } catch (const std::exception& x) {
        err << "error: " << x.what() << "\n";
        return kNumeric;
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Barnes zeta functions: series, limit and integral representations"};
    app.require_subcommand(1);

    Common ev, fp, dv, gm, cmp, tb;
    auto* s_eval = app.add_subcommand("eval", "zeta_B(alpha, a | w) or zeta_Bh(alpha | w)");
    ev.add_params(s_eval, true);
    s_eval->add_option("--method", ev.method, "series|integral|direct|reduction");

    auto* s_fp = app.add_subcommand("fp", "finite part at alpha = q");
    fp.add_params(s_fp, false);
    s_fp->add_option("--q", fp.q, "pole, 1 <= q <= d")->required();
    s_fp->add_option("--method", fp.method, "series|limit|integral");

    auto* s_dv = app.add_subcommand("deriv0", "derivative in alpha at 0");
    dv.add_params(s_dv, false);
    s_dv->add_option("--method", dv.method, "series|limit|integral");

    auto* s_gm = app.add_subcommand("gamma", "Gamma-family functions");
    std::string fn;
    int dim = 0;
    gm.method = "best";
    s_gm->add_option("--fn", fn, "loggammaB|psiB|logrho|gammadq|multigamma")->required();
    s_gm->add_option("--a", gm.a, "RE or RE,IM");
    s_gm->add_option("--w", gm.w, "comma-separated weights");
    s_gm->add_option("--q", gm.q, "1 <= q <= d");
    s_gm->add_option("--d", dim, "dimension for multigamma");
    s_gm->add_option("--method", gm.method, "series|limit|integral|best");
    s_gm->add_option("--tol", gm.tol, "relative tolerance");
    s_gm->add_flag("--json", gm.as_json, "JSON output");

    auto* s_cmp = app.add_subcommand("compare", "cross-representation report");
    std::vector<std::string> routes{"series", "limit", "integral", "reduction"};
    std::optional<double> cmp_tol;
    std::string out_path;
    bool cmp_csv = false;
    s_cmp->add_option("--a", cmp.a, "RE or RE,IM");
    s_cmp->add_option("--w", cmp.w, "comma-separated weights")->required();
    s_cmp->add_option("--routes", routes, "routes to run")->delimiter(',');
    s_cmp->add_option("--tol", cmp_tol, "agreement tolerance, |diff| <= tol (1 + |value|)");
    s_cmp->add_option("--out", out_path, "write JSON to PATH and the CSV matrix to PATH.csv");
    s_cmp->add_flag("--csv", cmp_csv, "print the CSV matrix instead of JSON");

    auto* s_tb = app.add_subcommand("table", "CSV over an alpha grid");
    std::string grid;
    double alpha_im = 0.0;
    tb.add_params(s_tb, false);
    s_tb->add_option("--alpha-grid", grid, "START:STOP:N")->required();
    s_tb->add_option("--alpha-im", alpha_im, "imaginary part of alpha");
    s_tb->add_option("--method", tb.method, "series|integral|direct|reduction");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (s_eval->parsed()) print_result(cmd_eval(ev), ev.as_json, out);
        else if (s_fp->parsed()) print_result(cmd_fp(fp), fp.as_json, out);
        else if (s_dv->parsed()) print_result(cmd_deriv0(dv), dv.as_json, out);
        else if (s_gm->parsed()) print_result(cmd_gamma(gm, fn, dim), gm.as_json, out);
        else if (s_cmp->parsed()) return cmd_compare(cmp, routes, cmp_tol, out_path, cmp_csv, out);
        else if (s_tb->parsed()) return cmd_table(tb, grid, alpha_im, out, err);
    } catch (...) {
        return error_code(std::current_exception(), err);
    }
    return kOk;
}

}  // namespace barnes::cli
