#pragma once

#include <functional>
#include <optional>

#include "barnes/foundations.hpp"

namespace barnes {

struct IntegralControls : EvalConfig {
    IntegralControls() = default;
    IntegralControls(const EvalConfig& c) : EvalConfig(c) {}
    // subtraction order; default max(0, ceil(d - Re alpha)) + 1
    std::optional<int> M;
    // homogeneous regulator, Re c > 0
    Complex c{1.0, 0.0};
};

// Requires Re a > 0 and Re w_i > 0.
EvalResult barnes_zeta_integral(Complex alpha, const BarnesParams& p, const IntegralControls& ic = {});
EvalResult zeta_bh_integral(Complex alpha, std::span<const Complex> w, const IntegralControls& ic = {});
EvalResult fp_barnes_integral(int q, const BarnesParams& p, const EvalConfig& c = {});
// Central differences in alpha at steps h, h/2 (h = alpha_step), M = d + 1, Richardson-combined.
EvalResult deriv0_barnes_integral(const BarnesParams& p, const EvalConfig& c = {});
EvalResult fp_bh_integral(int q, std::span<const Complex> w, const EvalConfig& c = {});
EvalResult deriv0_bh_integral(std::span<const Complex> w, const EvalConfig& c = {});

// (-1)^{d-q} B_{d-q}(a|w) / ((q-1)! (d-q)! prod w)
Complex residue(int q, const BarnesParams& p);
Complex residue_bh(int q, std::span<const Complex> w);

namespace detail {

// Integrands without the 1/Gamma(alpha) factor.
// I_M: e^{-at} (t^{alpha-1}/prod(1-e^{-w t}) - t^{alpha-d-1}/prod w sum_{k<=M} (-1)^k B_k(w) t^k/k!)
std::function<Complex(double)> i_m_integrand(Complex alpha, Complex a, std::span<const Complex> w, int M);
// J_{M,c}: t^{alpha-1} (1/prod(1-e^{-w t}) - 1 - t^{-d} e^{-ct}/prod w sum_{k<=M} (-1)^k B_k(-c|w) t^k/k!
//                       + e^{-ct} sum_{k<=M-d} (ct)^k/k!)
std::function<Complex(double)> j_mc_integrand(Complex alpha, std::span<const Complex> w, int M, Complex c);

}  // namespace detail

}  // namespace barnes
