#pragma once

#include <vector>

#include "barnes/foundations.hpp"

namespace barnes {

enum class D2Kind { FP1, FP2, Deriv0 };

struct LimitDiagnostics {
    std::vector<long> M_values;
    std::vector<Complex> raw_values;
    Complex extrapolated;
    double est_error = 0.0;
    // |v(M_{i+1}) - v(M_{i+2})| <= |v(M_i) - v(M_{i+1})| held along the schedule
    bool monotone = true;
};

// Default schedule: d <= 2 -> {1000, 2000, 4000}, d = 3 -> {60, 120, 240}, d >= 4 -> {16, 32, 64}.
std::vector<long> default_limit_schedule(int d);
// The configured schedule (or the default), validated.
std::vector<long> limit_schedule(const EvalConfig& c, int d);

EvalResult fp_barnes_limit(int q, const BarnesParams& p, const EvalConfig& c = {},
                           LimitDiagnostics* diag = nullptr);
EvalResult deriv0_barnes_limit(const BarnesParams& p, const EvalConfig& c = {},
                               LimitDiagnostics* diag = nullptr);
EvalResult fp_bh_limit(int q, std::span<const Complex> w, const EvalConfig& c = {},
                       LimitDiagnostics* diag = nullptr);
EvalResult deriv0_bh_limit(std::span<const Complex> w, const EvalConfig& c = {},
                           LimitDiagnostics* diag = nullptr);

// Closed d = 2 forms. homogeneous drops the origin and sets a = 0 (p.a is ignored).
EvalResult d2_fast_path(D2Kind kind, const BarnesParams& p, const EvalConfig& c = {},
                        bool homogeneous = false, LimitDiagnostics* diag = nullptr);

namespace detail {

using ComplexL = std::complex<long double>;

// Partial cube sums over C_{M-1} (origin dropped when homogeneous), for every M of a schedule:
// sum A^{-q} for q = 1..d and sum log A, A = a + n.w.
class LimitEvaluator {
public:
    LimitEvaluator(Complex a, std::span<const Complex> w, std::vector<long> schedule, bool homogeneous);
    Complex a() const { return a_; }
    const std::vector<Complex>& weights() const { return w_; }
    bool homogeneous() const { return homogeneous_; }
    const std::vector<long>& schedule() const { return schedule_; }
    ComplexL power_sum(std::size_t i, int q) const { return pow_sums_[i][q - 1]; }
    ComplexL log_sum(std::size_t i) const { return log_sums_[i]; }
    long points() const { return points_; }

private:
    Complex a_;
    std::vector<Complex> w_;
    bool homogeneous_;
    std::vector<long> schedule_;
    std::vector<std::vector<ComplexL>> pow_sums_;
    std::vector<ComplexL> log_sums_;
    long points_ = 0;
};

// _dS_m^(d)(0) = B_m(w) / prod w in long double, m = 0..d.
std::vector<ComplexL> dS_long(std::span<const Complex> w);

// The limit forms over an already summed cube; one pass serves every quantity.
// A homogeneous evaluator gives the homogeneous variants.
EvalResult fp_limit_from(const LimitEvaluator& ev, int q, const EvalConfig& c, LimitDiagnostics* diag = nullptr);
EvalResult deriv0_limit_from(const LimitEvaluator& ev, const EvalConfig& c, LimitDiagnostics* diag = nullptr);
EvalResult fp_bh_limit_from(const LimitEvaluator& ev, int q, const EvalConfig& c, LimitDiagnostics* diag = nullptr);
EvalResult deriv0_bh_limit_from(const LimitEvaluator& ev, const EvalConfig& c, LimitDiagnostics* diag = nullptr);
EvalResult d2_fast_from(const LimitEvaluator& ev, D2Kind kind, const EvalConfig& c, LimitDiagnostics* diag = nullptr);

}  // namespace detail

}  // namespace barnes
