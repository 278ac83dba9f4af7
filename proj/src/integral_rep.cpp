#include "barnes/integral_rep.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "barnes/bernoulli.hpp"
#include "barnes/quadrature.hpp"
#include "barnes/special.hpp"

namespace barnes {

namespace {

// Terms past the subtraction order kept in the small-t series.
constexpr int kSeriesExtra = 60;

void require_half_plane(const BarnesParams& p) {
    if (!(p.a.real() > 0.0)) throw DomainError("a: Re(a) > 0 required for the integral representation");
}

void require_weights(std::span<const Complex> w) {
    validate_weights(w);
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!(w[i].real() > 0.0)) {
            std::ostringstream os;
            os << "w index " << i + 1 << ": Re(w_" << i + 1 << ") > 0 required for the integral representation";
            throw DomainError(os.str());
        }
}

void check_q(int q, int d) {
    if (q < 1 || q > d) {
        std::ostringstream os;
        os << "q = " << q << " outside 1.." << d;
        throw DomainError(os.str());
    }
}

int pole_at(Complex alpha, int d) {
    if (alpha.imag() != 0.0) return 0;
    double r = alpha.real();
    if (r == std::round(r) && r >= 1 && r <= d) return int(r);
    return 0;
}

int default_M(Complex alpha, int d) { return std::max(0, int(std::ceil(d - alpha.real()))) + 1; }

int resolve_M(const IntegralControls& ic, Complex alpha, int d) {
    int M = ic.M ? *ic.M : default_M(alpha, d);
    if (M < 0) throw DomainError("M >= 0 required");
    if (!(alpha.real() > d - M - 1)) {
        std::ostringstream os;
        os << "Re(alpha) > d - M - 1 required (d = " << d << ", M = " << M << ")";
        throw DomainError(os.str());
    }
    return M;
}

double min_re(std::span<const Complex> w) {
    double m = w[0].real();
    for (auto x : w) m = std::min(m, x.real());
    return m;
}

double max_abs(std::span<const Complex> w) {
    double m = 0.0;
    for (auto x : w) m = std::max(m, std::abs(x));
    return m;
}

// prod 1/(1 - e^{-w t}) - 1 without cancellation at large t
Complex prod_inv_minus_one(std::span<const Complex> w, double t) {
    Complex lg(0.0), den(1.0);
    for (auto x : w) {
        Complex e = std::exp(-x * t);
        lg += special::log1p(-e);
        den *= 1.0 - e;
    }
    return -special::expm1(lg) / den;
}

QuadratureResult integrate(const std::function<Complex(double)>& f, double order, double decay, const EvalConfig& c) {
    QuadratureProblem prob;
    prob.integrand = f;
    prob.small_t_order = order;
    prob.decay_rate = decay;
    prob.rel_tol = c.quad_rel_tol;
    prob.split_point = c.quad_split_point;
    return quad_semiinfinite(prob);
}

EvalResult make_result(Complex v, double err, long evals, int M) {
    EvalResult r;
    r.value = v;
    r.abs_error_estimate = err;
    r.method = Method::Integral;
    r.diagnostics = {{"quadrature_evaluations", double(evals)}, {"M", double(M)}};
    return r;
}

}  // namespace

namespace detail {

std::function<Complex(double)> i_m_integrand(Complex alpha, Complex a, std::span<const Complex> w, int M) {
    const int d = static_cast<int>(w.size());
    const int N = std::min(M + kSeriesExtra, kBernoulliCap);
    auto bs = bernoulli_scaled(w, N);  // B_k(w)/k!
    const Complex pw = prod(w);
    const double t_series = special::kPi / max_abs(w);
    std::vector<Complex> wv(w.begin(), w.end());
    return [=](double t) -> Complex {
        if (t <= 0.0) return 0.0;
        const Complex pref = std::exp(-a * t + (alpha - double(d) - 1.0) * std::log(t)) / pw;
        Complex diff(0.0);
        if (t <= t_series) {
            // E(t) - P_M(t) = sum_{k>M} (B_k(w)/k!) (-t)^k
            double tk = std::pow(-t, M + 1);
            for (int k = M + 1; k <= N; ++k) {
                Complex term = bs[k] * tk;
                diff += term;
                // pairs: odd terms vanish for some weights
                if (k > M + 4 && std::abs(term) + std::abs(bs[k - 1] * tk / t) < 1e-18 * std::abs(diff)) break;
                tk *= -t;
            }
        } else {
            Complex E(1.0), P(0.0);
            for (auto x : wv) E *= x * t / (-special::expm1(-x * t));
            double tk = 1.0;
            for (int k = 0; k <= M; ++k) {
                P += bs[k] * tk;
                tk *= -t;
            }
            diff = E - P;
        }
        return pref * diff;
    };
}

std::function<Complex(double)> j_mc_integrand(Complex alpha, std::span<const Complex> w, int M, Complex c) {
    const int d = static_cast<int>(w.size());
    const int N = std::min(M + kSeriesExtra, kBernoulliCap);
    auto bc = bernoulli_poly_scaled(N, -c, w);  // B_k(-c|w)/k!
    const Complex pw = prod(w);
    const double t_series = special::kPi / max_abs(w);
    const int n_exp = M - d;  // e^{-ct} sum_{k <= M-d} (ct)^k/k!, empty if negative
    std::vector<Complex> wv(w.begin(), w.end());
    return [=](double t) -> Complex {
        if (t <= 0.0) return 0.0;
        const Complex ect = std::exp(-c * t);
        const Complex ta1 = std::exp((alpha - 1.0) * std::log(t));
        Complex bern, poly;  // t^{-d}/prod w (E - e^{-ct} P^c_M) and the exponential-polynomial part
        if (t <= t_series) {
            // e^{ct} E(t) - P^c_M(t) = sum_{k>M} (B_k(-c|w)/k!) (-t)^k
            Complex s(0.0);
            double tk = std::pow(-t, M + 1);
            for (int k = M + 1; k <= N; ++k) {
                Complex term = bc[k] * tk;
                s += term;
                if (k > M + 4 && std::abs(term) + std::abs(bc[k - 1] * tk / t) < 1e-18 * std::abs(s)) break;
                tk *= -t;
            }
            bern = ect * s * std::pow(t, -d) / pw;
            // -1 + e^{-ct} sum_{k<=n}(ct)^k/k! = -e^{-ct} sum_{k>n} (ct)^k/k!
            Complex tail(0.0), term(1.0);
            const Complex ct = c * t;
            int k0 = std::max(n_exp + 1, 0);
            for (int k = 1; k <= k0; ++k) term *= ct / double(k);
            for (int k = k0; k < k0 + 200; ++k) {
                tail += term;
                if (std::abs(term) < 1e-18 * std::abs(tail)) break;
                term *= ct / double(k + 1);
            }
            poly = -ect * tail;
            return ta1 * (bern + poly);
        }
        Complex P(0.0);
        double tk = 1.0;
        for (int k = 0; k <= M; ++k) {
            P += bc[k] * tk;
            tk *= -t;
        }
        Complex ex(0.0), term(1.0);
        for (int k = 0; k <= n_exp; ++k) {
            ex += term;
            term *= c * t / double(k + 1);
        }
        return ta1 * (prod_inv_minus_one(wv, t) - ect * P * std::pow(t, -d) / pw + ect * ex);
    };
}

}  // namespace detail

Complex residue(int q, const BarnesParams& p) {
    const int d = static_cast<int>(p.dim());
    check_q(q, d);
    validate_weights(p.w);
    Complex B = bernoulli_poly(d - q, p.a, p.w);
    double sgn = ((d - q) % 2 == 0) ? 1.0 : -1.0;
    return sgn * B / (factorial(q - 1) * factorial(d - q) * prod(p.w));
}

Complex residue_bh(int q, std::span<const Complex> w) {
    return residue(q, BarnesParams{0.0, std::vector<Complex>(w.begin(), w.end())});
}

EvalResult barnes_zeta_integral(Complex alpha, const BarnesParams& p, const IntegralControls& ic) {
    validate_params(p);
    require_half_plane(p);
    require_weights(p.w);
    validate_config(ic);
    const int d = static_cast<int>(p.dim());
    if (int q = pole_at(alpha, d)) {
        std::ostringstream os;
        os << "pole at alpha = " << q;
        throw PoleError(os.str(), q, residue(q, p));
    }
    const int M = resolve_M(ic, alpha, d);
    auto bs = bernoulli_scaled(p.w, M);
    const Complex la = std::log(p.a);
    CompensatedSum<Complex> pre;
    for (int k = 0; k <= M; ++k) {
        // Gamma(alpha-d+k)/Gamma(alpha) stays finite off the true poles
        Complex term = bs[k] * special::gamma_ratio(alpha, k - d) * std::exp(-(alpha - double(d - k)) * la);
        pre += (k % 2 == 0) ? term : -term;
    }
    Complex prefactor = pre.value() / prod(p.w);
    Complex rg = special::rgamma(alpha);
    if (rg == Complex(0.0)) return make_result(prefactor, 1e-15 * std::abs(prefactor), 0, M);
    auto f = detail::i_m_integrand(alpha, p.a, p.w, M);
    auto qr = integrate(f, alpha.real() - d + M, p.a.real(), ic);
    Complex v = prefactor + rg * qr.value;
    return make_result(v, std::abs(rg) * qr.error + 1e-15 * std::abs(prefactor), qr.evaluations, M);
}

EvalResult zeta_bh_integral(Complex alpha, std::span<const Complex> w, const IntegralControls& ic) {
    require_weights(w);
    validate_config(ic);
    if (!(ic.c.real() > 0.0)) throw DomainError("c: Re(c) > 0 required");
    const int d = static_cast<int>(w.size());
    if (int q = pole_at(alpha, d)) {
        std::ostringstream os;
        os << "pole at alpha = " << q;
        throw PoleError(os.str(), q, residue_bh(q, w));
    }
    const int M = resolve_M(ic, alpha, d);
    const Complex c = ic.c, lc = std::log(c);
    auto bc = bernoulli_poly_scaled(M, -c, w);
    CompensatedSum<Complex> pre;
    for (int k = 0; k <= M; ++k) {
        Complex term = bc[k] * special::gamma_ratio(alpha, k - d) * std::exp(-(alpha - double(d - k)) * lc);
        pre += (k % 2 == 0) ? term : -term;
    }
    Complex prefactor = pre.value() / prod(w);
    CompensatedSum<Complex> corr;
    double kf = 1.0;
    for (int k = 0; k <= M - d; ++k) {
        if (k > 0) kf *= k;
        corr += special::gamma_ratio(alpha, k) / kf;
    }
    prefactor -= std::exp(-alpha * lc) * corr.value();
    Complex rg = special::rgamma(alpha);
    if (rg == Complex(0.0)) return make_result(prefactor, 1e-15 * std::abs(prefactor), 0, M);
    auto f = detail::j_mc_integrand(alpha, w, M, c);
    auto qr = integrate(f, alpha.real() - d + M, std::min(min_re(w), c.real()), ic);
    Complex v = prefactor + rg * qr.value;
    return make_result(v, std::abs(rg) * qr.error + 1e-15 * std::abs(prefactor), qr.evaluations, M);
}

EvalResult fp_barnes_integral(int q, const BarnesParams& p, const EvalConfig& c) {
    validate_params(p);
    require_half_plane(p);
    require_weights(p.w);
    validate_config(c);
    const int d = static_cast<int>(p.dim());
    check_q(q, d);
    const int M = d - q;
    auto bs = bernoulli_scaled(p.w, M);
    const Complex la = std::log(p.a);
    const double Hq = harmonic_value(q - 1);
    CompensatedSum<Complex> s;
    for (int k = 0; k <= M; ++k)
        s += std::pow(p.a, M - k) * bs[k] / factorial(M - k) * (harmonic_value(M - k) - Hq - la);
    double sgn = (M % 2 == 0) ? 1.0 : -1.0;
    Complex closed = sgn * s.value() / (prod(p.w) * factorial(q - 1));
    auto f = detail::i_m_integrand(double(q), p.a, p.w, M);
    auto qr = integrate(f, 0.0, p.a.real(), c);
    double rg = 1.0 / factorial(q - 1);
    return make_result(closed + rg * qr.value, rg * qr.error + 1e-15 * std::abs(closed), qr.evaluations, M);
}

EvalResult deriv0_barnes_integral(const BarnesParams& p, const EvalConfig& c) {
    validate_params(p);
    require_half_plane(p);
    require_weights(p.w);
    validate_config(c);
    const int d = static_cast<int>(p.dim());
    IntegralControls ic(c);
    ic.M = d + 1;
    const double h = c.alpha_step;
    long evals = 0;
    double qerr = 0.0;
    auto z = [&](double x) {
        auto r = barnes_zeta_integral(x, p, ic);
        evals += long(r.diagnostics["quadrature_evaluations"]);
        qerr = std::max(qerr, r.abs_error_estimate);
        return r.value;
    };
    Complex D1 = (z(h) - z(-h)) / (2.0 * h);
    Complex D2 = (z(h / 2) - z(-h / 2)) / h;
    Complex v = (4.0 * D2 - D1) / 3.0;
    // Richardson step size plus quadrature noise amplified by 1/h
    double err = std::abs(D2 - D1) / 3.0 + 2.0 * qerr / h;
    EvalResult r = make_result(v, err, evals, d + 1);
    r.diagnostics["alpha_step"] = h;
    return r;
}

EvalResult fp_bh_integral(int q, std::span<const Complex> w, const EvalConfig& c) {
    require_weights(w);
    validate_config(c);
    const int d = static_cast<int>(w.size());
    check_q(q, d);
    const int m0 = d - q;
    auto bs = bernoulli_scaled(w, m0);  // B_j(w)/j!
    CompensatedSum<Complex> s;
    s += ((m0 + 1) % 2 == 0 ? 1.0 : -1.0) * bs[m0] * harmonic_value(q - 1);
    for (int j = 0; j < m0; ++j) {
        int m = m0 - j;
        s += ((j + 1) % 2 == 0 ? 1.0 : -1.0) * bs[j] / (factorial(m) * m);
    }
    Complex closed = s.value() / (prod(w) * factorial(q - 1));
    auto f = detail::j_mc_integrand(double(q), w, m0, 1.0);
    auto qr = integrate(f, 0.0, std::min(min_re(w), 1.0), c);
    double rg = 1.0 / factorial(q - 1);
    return make_result(closed + rg * qr.value, rg * qr.error + 1e-15 * std::abs(closed), qr.evaluations, m0);
}

EvalResult deriv0_bh_integral(std::span<const Complex> w, const EvalConfig& c) {
    require_weights(w);
    validate_config(c);
    const int d = static_cast<int>(w.size());
    auto bs = bernoulli_scaled(w, d);
    CompensatedSum<Complex> s;
    for (int j = 0; j < d; ++j) {
        int m = d - j;
        s += ((j + 1) % 2 == 0 ? 1.0 : -1.0) * bs[j] / (factorial(m) * m);
    }
    Complex closed = s.value() / prod(w);
    // d/dalpha [J/Gamma(alpha)] at 0 is the integral of t^{-1}(...) with M = d, c = 1
    auto f = detail::j_mc_integrand(0.0, w, d, 1.0);
    auto qr = integrate(f, 0.0, std::min(min_re(w), 1.0), c);
    return make_result(closed + qr.value, qr.error + 1e-15 * std::abs(closed), qr.evaluations, d);
}

}  // namespace barnes
