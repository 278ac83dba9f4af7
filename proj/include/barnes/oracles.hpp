#pragma once

#include "barnes/foundations.hpp"

namespace barnes::oracles {

// shift_N is a floor; it is raised to |s| + 4 so the asymptotic tail stays small.
// Large shifts lose digits for Re s < 0, where the boundary terms grow like N^{1-s}.
struct EulerMaclaurinControls {
    int shift_N = 12;
    int bernoulli_terms = 16;
};

Complex hurwitz_zeta(Complex s, Complex a, const EulerMaclaurinControls& c = {});
Complex hurwitz_zeta_ds(Complex s, Complex a, const EulerMaclaurinControls& c = {});
// F.P. of zeta_H(s, a) at s = 1, which is -psi(a)
Complex hurwitz_fp1(Complex a, const EulerMaclaurinControls& c = {});
Complex digamma_ref(Complex a);
Complex log_gamma_ref(Complex a);

EvalResult direct_sum(Complex alpha, const BarnesParams& p, const EvalConfig& c = {});
EvalResult direct_sum_bh(Complex alpha, std::span<const Complex> w, const EvalConfig& c = {});

Complex isotropic_reduction(Complex alpha, Complex a, Complex scale, int d);
Complex rational_d2_reduction(Complex alpha, Complex a, int n);

// d = 1 closed forms: zeta_B(alpha, a | (w)) = w^{-alpha} zeta_H(alpha, a/w)
Complex d1_value(Complex alpha, Complex a, Complex w);
Complex d1_fp(Complex a, Complex w);
Complex d1_deriv0(Complex a, Complex w);
Complex d1_fp_h(Complex w);
Complex d1_deriv0_h(Complex w);

struct LogGammaReps {
    Complex series;     // n-sum representation
    Complex limit;      // M -> infinity form
    Complex series2;    // zeta_H(k, .) expansion
    bool series2_split = false;
    Complex reference;  // Lerch
};
LogGammaReps log_gamma_rep_checks(Complex a);

}  // namespace barnes::oracles
