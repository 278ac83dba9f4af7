#pragma once

#include <functional>

#include "barnes/foundations.hpp"

namespace barnes {

struct QuadratureProblem {
    std::function<Complex(double)> integrand;
    // Re of the leading power of t at 0; must exceed -1
    double small_t_order = 0.0;
    // slowest exponential decay rate at infinity; must be positive
    double decay_rate = 1.0;
    double rel_tol = 1e-12;
    double split_point = 1.0;
    long max_evals = 1000000;
};

struct QuadratureResult {
    Complex value;
    double error = 0.0;
    long evaluations = 0;
};

// Integral over (0, inf): [0, split] after t = split u^k, and the tail after
// t = split - log(1-u)/decay_rate, truncated where the remainder bound is below tolerance.
QuadratureResult quad_semiinfinite(const QuadratureProblem& prob);

// Global adaptive 21-point Gauss-Kronrod on [a, b]. Stops when the error is below
// max(abs_tol, rel_tol |I|, roundoff floor); evals counts against budget.
QuadratureResult quad_adaptive(const std::function<Complex(double)>& f, double a, double b, double rel_tol,
                               double abs_tol, long budget);

}  // namespace barnes
