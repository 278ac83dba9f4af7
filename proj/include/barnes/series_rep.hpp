#pragma once

#include "barnes/combinatorics.hpp"
#include "barnes/foundations.hpp"

namespace barnes {

struct SeriesControls : EvalConfig {
    SeriesControls() = default;
    SeriesControls(const EvalConfig& c) : EvalConfig(c) {}
    std::optional<int> k;
    int shell_stop_count = 3;
};

EvalResult barnes_zeta_series(Complex alpha, const BarnesParams& p, const SeriesControls& c = {});
EvalResult zeta_bh_series(Complex alpha, std::span<const Complex> w, const SeriesControls& c = {});
EvalResult fp_barnes_series(int q, const BarnesParams& p, const SeriesControls& c = {});
EvalResult deriv0_barnes_series(const BarnesParams& p, const SeriesControls& c = {});
EvalResult fp_bh_series(int q, std::span<const Complex> w, const SeriesControls& c = {});
EvalResult deriv0_bh_series(std::span<const Complex> w, const SeriesControls& c = {});

// Throws PoleError if alpha is in {1..d}.
void check_pole(Complex alpha, int d);

namespace detail {

enum class Quantity { Value, FinitePart, Deriv0 };

// Summand and closed part of the Barnes series with truncation K = k + d.
class SeriesKernel {
public:
    SeriesKernel(Quantity qty, Complex alpha, std::span<const Complex> w, int K);

    Complex summand(Complex A) const;
    Complex summand_explicit(Complex A) const;
    Complex summand_expansion(Complex A) const;
    bool uses_expansion(Complex A) const { return std::abs(A) > radius_; }
    // The merged n = 0 / outside contribution with base point b (b = a, or 0 for zeta_Bh).
    Complex closed_part(Complex b) const;
    // h_N = sum_{m<K} s_m/m! g_{N+d-m}; equals delta_{N0} below K
    std::vector<Complex> h_coefficients(int Nmax) const;

    int K() const { return K_; }
    int d() const { return d_; }

private:
    Complex P(int m) const;  // Gamma(1-alpha)/Gamma(d-alpha-m+1) at the working alpha
    Complex f_power(Complex b, int j) const;  // F[(b+x)^j], exact for 0 <= j <= d

    Quantity qty_;
    Complex alpha_;
    int q_ = 0;
    int d_;
    int K_;
    std::vector<Complex> w_;
    SubsetTable subsets_;
    Complex prod_w_;
    std::vector<Complex> sm_;   // s_m / m!
    std::vector<Complex> pm_;   // P_m(alpha) or P_m'(0) depending on quantity
    double sigma_;
    double radius_;
    std::vector<Complex> coef_;  // expansion coefficients, index N - K
};

}  // namespace detail
}  // namespace barnes
