#include "barnes/barnes_functions.hpp"

#include <cmath>

#include "barnes/integral_rep.hpp"
#include "barnes/limit_rep.hpp"
#include "barnes/series_rep.hpp"

namespace barnes {

namespace {

bool integral_applies(Complex a, std::span<const Complex> w) {
    if (!(a.real() > 0.0)) return false;
    for (auto x : w)
        if (!(x.real() > 0.0)) return false;
    return true;
}

double sign_pow(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

// One quantity across the three routes.
template <class S, class L, class I>
EvalResult dispatch(const MethodChoice& m, bool integral_ok, S series, L limit, I integral) {
    switch (m.route) {
        case Route::Series:
            return series();
        case Route::Limit:
            return limit();
        case Route::Integral:
            if (!integral_ok) throw DomainError("integral route requires Re(a) > 0 and Re(w_i) > 0");
            return integral();
        case Route::Best:
            break;
    }
    EvalResult r = series();
    if (integral_ok) {
        EvalResult x = integral();
        r.diagnostics["integral_crosscheck"] = std::abs(r.value - x.value);
    }
    return r;
}

EvalResult combine(EvalResult base, Complex value, double err_scale) {
    base.value = value;
    base.abs_error_estimate *= err_scale;
    return base;
}

}  // namespace

const char* route_name(Route r) {
    switch (r) {
        case Route::Series: return "series";
        case Route::Limit: return "limit";
        case Route::Integral: return "integral";
        case Route::Best: return "best";
    }
    return "?";
}

EvalResult log_rho(std::span<const Complex> w, const MethodChoice& m) {
    validate_weights(w);
    const auto& c = m.config;
    EvalResult r = dispatch(
        m, integral_applies(1.0, w), [&] { return deriv0_bh_series(w, c); },
        [&] { return deriv0_bh_limit(w, c); }, [&] { return deriv0_bh_integral(w, c); });
    r.value = -r.value;
    return r;
}

EvalResult log_gamma_B(const BarnesParams& p, const MethodChoice& m) {
    validate_params(p);
    const auto& c = m.config;
    EvalResult r = dispatch(
        m, integral_applies(p.a, p.w), [&] { return deriv0_barnes_series(p, c); },
        [&] { return deriv0_barnes_limit(p, c); }, [&] { return deriv0_barnes_integral(p, c); });
    // log rho on the same route; Best keeps both cross-checks
    MethodChoice mr = m;
    if (m.route == Route::Integral && !integral_applies(1.0, p.w)) mr.route = Route::Series;
    EvalResult rho = log_rho(p.w, mr);
    r.value += rho.value;
    r.abs_error_estimate += rho.abs_error_estimate;
    if (auto it = rho.diagnostics.find("integral_crosscheck"); it != rho.diagnostics.end())
        r.diagnostics["integral_crosscheck"] += it->second;
    return r;
}

EvalResult psi_B(int q, const BarnesParams& p, const MethodChoice& m) {
    validate_params(p);
    const auto& c = m.config;
    EvalResult fp = dispatch(
        m, integral_applies(p.a, p.w), [&] { return fp_barnes_series(q, p, c); },
        [&] { return fp_barnes_limit(q, p, c); }, [&] { return fp_barnes_integral(q, p, c); });
    const double f = sign_pow(q) * factorial(q - 1);
    Complex v = f * (fp.value + harmonic_value(q - 1) * residue(q, p));
    EvalResult r = combine(fp, v, std::abs(f));
    if (auto it = r.diagnostics.find("integral_crosscheck"); it != r.diagnostics.end()) it->second *= std::abs(f);
    return r;
}

EvalResult gamma_dq(int q, std::span<const Complex> w, const MethodChoice& m) {
    validate_weights(w);
    const auto& c = m.config;
    EvalResult fp = dispatch(
        m, integral_applies(1.0, w), [&] { return fp_bh_series(q, w, c); },
        [&] { return fp_bh_limit(q, w, c); }, [&] { return fp_bh_integral(q, w, c); });
    const double f = sign_pow(q - 1) * factorial(q - 1);
    Complex v = f * (fp.value + harmonic_value(q - 1) * residue_bh(q, w));
    EvalResult r = combine(fp, v, std::abs(f));
    if (auto it = r.diagnostics.find("integral_crosscheck"); it != r.diagnostics.end()) it->second *= std::abs(f);
    return r;
}

EvalResult multiple_gamma(Complex a, int d, const MethodChoice& m) {
    if (d < 1) throw DomainError("d >= 1 required");
    if (!(a.real() > 0.0)) throw DomainError("a: Re(a) > 0 required");
    return log_gamma_B({a, std::vector<Complex>(d, Complex(1.0))}, m);
}

Complex fp_from_psi(int q, Complex psi, Complex res) {
    return sign_pow(q) / factorial(q - 1) * psi - harmonic_value(q - 1) * res;
}

Complex fp_h_from_gamma_dq(int q, Complex g, Complex res_h) {
    return sign_pow(q - 1) / factorial(q - 1) * g - harmonic_value(q - 1) * res_h;
}

}  // namespace barnes
