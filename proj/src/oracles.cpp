#include "barnes/oracles.hpp"

#include <cmath>

#include "barnes/bernoulli.hpp"
#include "barnes/combinatorics.hpp"
#include "barnes/extrapolation.hpp"
#include "barnes/special.hpp"

namespace barnes::oracles {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;

// B_{2k}/(2k)!
using CL = std::complex<long double>;

long double b2k_scaled(int k) {
    static const auto t = [] {
        std::vector<long double> v(33);
        for (int j = 1; j <= 32; ++j) v[j] = classical_bernoulli_ld(2 * j, true);
        return v;
    }();
    return t.at(k);
}

Complex cpow(Complex x, Complex s) { return std::exp(s * std::log(x)); }

int shift_for(Complex s, const EulerMaclaurinControls& c) {
    return std::max(c.shift_N, static_cast<int>(std::abs(s)) + 4);
}

}  // namespace

// Evaluated in long double: for Re s < 0 the head sum cancels heavily.
Complex hurwitz_zeta(Complex s, Complex a, const EulerMaclaurinControls& c) {
    if (s == Complex(1.0, 0.0)) throw PoleError("hurwitz_zeta: pole at s = 1", 1, Complex(1.0));
    const CL S(s), A(a);
    const int N = shift_for(s, c);
    CompensatedSum<CL> sum;
    for (int n = 0; n < N; ++n) sum += std::exp(-S * std::log(A + (long double)n));
    CL X = A + (long double)N;
    CL lx = std::log(X);
    sum += std::exp((1.0L - S) * lx) / (S - 1.0L);
    sum += 0.5L * std::exp(-S * lx);
    CL poch = S;  // (s)_{2k-1}
    CL xp = std::exp((-S - 1.0L) * lx);
    CL ix2 = 1.0L / (X * X);
    for (int k = 1; k <= c.bernoulli_terms; ++k) {
        sum += b2k_scaled(k) * poch * xp;
        poch *= (S + (long double)(2 * k - 1)) * (S + (long double)(2 * k));
        xp *= ix2;
    }
    CL v = sum.value();
    return {double(v.real()), double(v.imag())};
}

Complex hurwitz_zeta_ds(Complex s, Complex a, const EulerMaclaurinControls& c) {
    if (s == Complex(1.0, 0.0)) throw PoleError("hurwitz_zeta_ds: pole at s = 1", 1, Complex(1.0));
    const CL S(s), A(a);
    const int N = shift_for(s, c);
    CompensatedSum<CL> sum;
    for (int n = 0; n < N; ++n) {
        CL l = std::log(A + (long double)n);
        sum += -l * std::exp(-S * l);
    }
    CL X = A + (long double)N;
    CL lx = std::log(X);
    CL x1s = std::exp((1.0L - S) * lx);
    sum += -x1s * lx / (S - 1.0L) - x1s / ((S - 1.0L) * (S - 1.0L));
    sum += -0.5L * lx * std::exp(-S * lx);
    for (int k = 1; k <= c.bernoulli_terms; ++k) {
        int n = 2 * k - 1;
        CL poch(1.0L), dpoch(0.0L);
        for (int i = 0; i < n; ++i) {
            // product rule for d/ds prod (s + i)
            dpoch = dpoch * (S + (long double)i) + poch;
            poch *= S + (long double)i;
        }
        CL xp = std::exp((-S - (long double)n) * lx);
        sum += b2k_scaled(k) * xp * (dpoch - poch * lx);
    }
    CL v = sum.value();
    return {double(v.real()), double(v.imag())};
}

Complex hurwitz_fp1(Complex a, const EulerMaclaurinControls& c) {
    const CL A(a);
    CompensatedSum<CL> sum;
    for (int n = 0; n < c.shift_N; ++n) sum += 1.0L / (A + (long double)n);
    CL X = A + (long double)c.shift_N;
    sum += -std::log(X);
    sum += 0.5L / X;
    CL ix2 = 1.0L / (X * X), xp = ix2;
    for (int k = 1; k <= c.bernoulli_terms; ++k) {
        sum += classical_bernoulli_ld(2 * k) / (2.0L * k) * xp;
        xp *= ix2;
    }
    CL v = sum.value();
    return {double(v.real()), double(v.imag())};
}

Complex digamma_ref(Complex a) { return -hurwitz_fp1(a); }

Complex log_gamma_ref(Complex a) { return hurwitz_zeta_ds(0.0, a) + kHalfLog2Pi; }

namespace {

struct DirectPlan {
    int R0;
    int levels;
};

DirectPlan direct_plan(int d) {
    switch (d) {
        case 1: return {64, 7};
        case 2: return {32, 6};
        case 3: return {6, 7};
        default: return {8, 4};
    }
}

EvalResult direct_impl(Complex alpha, Complex a, std::span<const Complex> w, bool homogeneous,
                       const EvalConfig&) {
    const int d = static_cast<int>(w.size());
    if (!(alpha.real() > d + 0.5))
        throw ConvergenceError("direct_sum: Re(alpha) > d + 1/2 required for direct summation");
    auto plan = direct_plan(d);
    const int Rmax = plan.R0 << (plan.levels - 1);
    bool real = alpha.imag() == 0.0 && a.imag() == 0.0;
    for (auto x : w) real = real && x.imag() == 0.0;

    std::vector<Complex> partial;
    CompensatedSum<Complex> total;
    int next_R = plan.R0;
    long points = 0;
    for (int k = 0; k < Rmax; ++k) {
        CompensatedSum<Complex> shell;
        for_each_shell_point(k, d, [&](const IndexVector& n) {
            bool origin = true;
            Complex A = a;
            for (int i = 0; i < d; ++i) {
                A += double(n[i]) * w[i];
                origin = origin && n[i] == 0;
            }
            if (homogeneous && origin) return;
            ++points;
            if (real)
                shell += Complex(std::pow(A.real(), -alpha.real()));
            else
                shell += cpow(A, -alpha);
        });
        total += shell.value();
        if (k + 1 == next_R) {
            partial.push_back(total.value());
            next_R *= 2;
        }
    }
    std::vector<Complex> exps;
    for (int j = 0; j < plan.levels; ++j) exps.push_back(alpha - double(d) + double(j));
    auto rr = richardson_doubling(partial, exps);
    EvalResult r;
    r.value = rr.value;
    r.abs_error_estimate = rr.error + 1e-15 * std::abs(rr.value);
    r.method = Method::Direct;
    r.diagnostics = {{"lattice_points", double(points)}, {"R_max", double(Rmax)},
                     {"levels", double(plan.levels)}};
    return r;
}

}  // namespace

EvalResult direct_sum(Complex alpha, const BarnesParams& p, const EvalConfig& c) {
    validate_params(p);
    return direct_impl(alpha, p.a, p.w, false, c);
}

EvalResult direct_sum_bh(Complex alpha, std::span<const Complex> w, const EvalConfig& c) {
    validate_weights(w);
    return direct_impl(alpha, 0.0, w, true, c);
}

Complex isotropic_reduction(Complex alpha, Complex a, Complex scale, int d) {
    if (d < 1) throw DomainError("isotropic_reduction: d >= 1 required");
    if (!(a.real() > 0) || !(scale.real() > 0)) throw DomainError("isotropic_reduction: Re(a), Re(scale) > 0");
    // C(n+d-1, d-1) = prod_{i=1}^{d-1} (n+i) / (d-1)!, coefficients in n
    std::vector<Rational> cn{Rational(1)};
    for (int i = 1; i <= d - 1; ++i) {
        std::vector<Rational> next(cn.size() + 1, Rational(0));
        for (std::size_t k = 0; k < cn.size(); ++k) {
            next[k] += cn[k] * Rational(i);
            next[k + 1] += cn[k];
        }
        cn = next;
    }
    for (auto& x : cn) x /= Rational(factorial_exact(d - 1));
    // re-expand in y = n + b: n = y - b
    Complex b = a / scale;
    std::vector<Complex> pj(d, Complex(0.0));
    for (int i = 0; i < d; ++i) {
        Complex mb(1.0);
        for (int j = i; j >= 0; --j) {
            // term c_i C(i,j) y^j (-b)^{i-j}
            pj[j] += boost::rational_cast<double>(cn[i] * binomial_exact(i, j)) * mb;
            mb *= -b;
        }
    }
    double pmax = 0;
    for (auto x : pj) pmax = std::max(pmax, std::abs(x));
    CompensatedSum<Complex> sum;
    for (int j = 0; j < d; ++j) {
        Complex s = alpha - double(j);
        if (s == Complex(1.0, 0.0)) {
            if (std::abs(pj[j]) > 1e-14 * pmax)
                throw PoleError("isotropic_reduction: pole", int(std::lround(alpha.real())));
            continue;
        }
        sum += pj[j] * hurwitz_zeta(s, b);
    }
    return std::exp(-alpha * std::log(scale)) * sum.value();
}

Complex rational_d2_reduction(Complex alpha, Complex a, int n) {
    if (n < 1) throw DomainError("rational_d2_reduction: n >= 1 required");
    if (!(a.real() > 0)) throw DomainError("rational_d2_reduction: Re(a) > 0 required");
    if (alpha == Complex(1.0) || alpha == Complex(2.0))
        throw PoleError("rational_d2_reduction: pole", int(alpha.real()));
    CompensatedSum<Complex> sum;
    for (int r = 0; r < n; ++r) {
        Complex b = (a + double(r)) / double(n);
        sum += hurwitz_zeta(alpha - 1.0, b);
        sum += (1.0 - b) * hurwitz_zeta(alpha, b);
    }
    return std::exp(-alpha * std::log(double(n))) * sum.value();
}

Complex d1_value(Complex alpha, Complex a, Complex w) {
    return std::exp(-alpha * std::log(w)) * hurwitz_zeta(alpha, a / w);
}

Complex d1_fp(Complex a, Complex w) { return (hurwitz_fp1(a / w) - std::log(w)) / w; }

Complex d1_deriv0(Complex a, Complex w) {
    Complex b = a / w;
    return -std::log(w) * (0.5 - b) + hurwitz_zeta_ds(0.0, b);
}

Complex d1_fp_h(Complex w) { return (hurwitz_fp1(1.0) - std::log(w)) / w; }

Complex d1_deriv0_h(Complex w) { return 0.5 * std::log(w) + hurwitz_zeta_ds(0.0, 1.0); }

namespace {

Complex log1p_c(Complex z) {
    if (z.imag() == 0.0) return std::log1p(z.real());
    return special::log1p(z);
}

Complex extrapolate_in_inverse_n(const std::vector<int>& Ns, const std::vector<Complex>& v) {
    std::vector<double> h;
    for (int n : Ns) h.push_back(1.0 / n);
    return neville_to_zero(h, v).back().front();
}

}  // namespace

LogGammaReps log_gamma_rep_checks(Complex a) {
    if (!(a.real() > 0)) throw DomainError("log_gamma_rep_checks: Re(a) > 0 required");
    LogGammaReps out;
    out.reference = log_gamma_ref(a);
    const Complex head = a * (std::log(a) - 1.0) + 0.5 * std::log(2.0 * special::kPi / a);

    std::vector<int> Ns;
    for (int i = 0; i < 6; ++i) Ns.push_back(64 << i);

    {
        std::vector<Complex> partial;
        CompensatedSum<Complex> s;
        int n = 0;
        for (int N : Ns) {
            for (; n < N; ++n) {
                Complex x = a + double(n);
                s += (x + 0.5) * log1p_c(1.0 / x) - 1.0;
            }
            partial.push_back(s.value());
        }
        out.series = head + extrapolate_in_inverse_n(Ns, partial);
    }
    {
        std::vector<Complex> vals;
        CompensatedSum<Complex> logs;
        int n = 0;
        for (int M : Ns) {
            for (; n < M; ++n) logs += std::log(a + double(n));
            Complex aM = a + double(M);
            CompensatedSum<Complex> br;
            br += -double(M);
            br += (aM - 0.5) * std::log(aM);
            br += -logs.value();
            vals.push_back(br.value());
        }
        out.limit = kHalfLog2Pi - a + extrapolate_in_inverse_n(Ns, vals);
    }
    {
        // c_k = (-1)^k (k-1) / (2k(k+1))
        auto ck = [](int k) { return ((k % 2 == 0) ? 1.0 : -1.0) * (k - 1) / (2.0 * k * (k + 1)); };
        CompensatedSum<Complex> s;
        Complex base = a;
        if (std::abs(a) <= 1.0) {
            out.series2_split = true;
            s += (a + 0.5) * log1p_c(1.0 / a) - 1.0;
            base = a + 1.0;
        }
        int quiet = 0;
        bool ok = false;
        for (int k = 2; k <= 20000; ++k) {
            Complex t = ck(k) * hurwitz_zeta(double(k), base);
            s += t;
            if (std::abs(t) < 1e-17 * (1.0 + std::abs(s.value()))) {
                if (++quiet >= 3) {
                    ok = true;
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        if (!ok) throw ConvergenceError("log_gamma_rep_checks: zeta_H(k, a) series did not converge");
        out.series2 = head + s.value();
    }
    return out;
}

}  // namespace barnes::oracles
