#pragma once

#include "barnes/foundations.hpp"

namespace barnes {

enum class Route { Series, Limit, Integral, Best };
const char* route_name(Route r);

// Best evaluates by Series and, when the integral route applies (Re a > 0, Re w_i > 0),
// records |Series - Integral| in diagnostics["integral_crosscheck"].
struct MethodChoice {
    Route route = Route::Best;
    EvalConfig config{};
};

// log rho_B(w) = -zeta_Bh'(0|w)
EvalResult log_rho(std::span<const Complex> w, const MethodChoice& m = {});
// Barnes normalization: log Gamma_B(a|w) = zeta_B'(0,a|w) + log rho_B(w).
// The other common normalization drops the log rho_B(w) term.
EvalResult log_gamma_B(const BarnesParams& p, const MethodChoice& m = {});
// Psi_B^(q) = (-1)^q (q-1)! (FP + H_{q-1} Res), 1 <= q <= d
EvalResult psi_B(int q, const BarnesParams& p, const MethodChoice& m = {});
// gamma_dq = (-1)^{q-1} (q-1)! (FP_h + H_{q-1} Res_h)
EvalResult gamma_dq(int q, std::span<const Complex> w, const MethodChoice& m = {});
// log Gamma_d(a) = log_gamma_B with w = (1, ..., 1)
EvalResult multiple_gamma(Complex a, int d, const MethodChoice& m = {});

// Forward relations, used to round-trip the inversions above.
Complex fp_from_psi(int q, Complex psi, Complex res);
Complex fp_h_from_gamma_dq(int q, Complex g, Complex res_h);

}  // namespace barnes
