#include "barnes/foundations.hpp"

#include <cmath>
#include <sstream>

namespace barnes {

const char* method_name(Method m) {
    switch (m) {
        case Method::Series: return "series";
        case Method::Limit: return "limit";
        case Method::Integral: return "integral";
        case Method::Direct: return "direct";
        case Method::Reduction: return "reduction";
    }
    return "unknown";
}

void validate_weights(std::span<const Complex> w) {
    if (w.empty()) throw DomainError("w: need at least one weight");
    if (w.size() > 16) throw DimensionError("w: at most 16 weights supported");
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!std::isfinite(w[i].real()) || !std::isfinite(w[i].imag()) || !(w[i].real() > 0.0)) {
            std::ostringstream os;
            os << "w index " << (i + 1) << ": Re(w_" << (i + 1) << ") > 0 required, got " << w[i];
            throw DomainError(os.str());
        }
    }
}

void validate_params(const BarnesParams& p) {
    if (!std::isfinite(p.a.real()) || !std::isfinite(p.a.imag()) || !(p.a.real() > 0.0)) {
        std::ostringstream os;
        os << "a: Re(a) > 0 required, got " << p.a;
        throw DomainError(os.str());
    }
    validate_weights(p.w);
}

void validate_config(const EvalConfig& c) {
    if (!(c.rel_tol > 0) || !(c.quad_rel_tol > 0) || !(c.alpha_step > 0) || !(c.limit_tol > 0))
        throw DomainError("config: tolerances must be positive");
    if (c.max_shells < 1) throw DomainError("config: max_shells must be positive");
    for (std::size_t i = 1; i < c.limit_M_schedule.size(); ++i)
        if (c.limit_M_schedule[i] <= c.limit_M_schedule[i - 1])
            throw DomainError("config: M schedule must be strictly increasing");
    for (long m : c.limit_M_schedule)
        if (m < 1) throw DomainError("config: M schedule entries must be >= 1");
}

Rational harmonic(int k) {
    if (k < 0) throw DomainError("harmonic: k >= 0 required");
    Rational h(0);
    for (int i = 1; i <= k; ++i) h += Rational(1, i);
    return h;
}

double harmonic_value(int k) {
    if (k < 0) throw DomainError("harmonic: k >= 0 required");
    if (k <= 30) return boost::rational_cast<double>(harmonic(k));
    double h = 0;
    for (int i = k; i >= 1; --i) h += 1.0 / i;
    return h;
}

double factorial(int n) {
    double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

long long factorial_exact(int n) {
    if (n > 20) throw DomainError("factorial_exact: n <= 20");
    long long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Rational binomial_exact(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    Rational r(1);
    for (int i = 1; i <= k; ++i) r = r * Rational(n - k + i, i);
    return r;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r < 9e15 ? std::round(r) : r;
}

Complex prod(std::span<const Complex> w) {
    Complex p(1.0, 0.0);
    for (auto x : w) p *= x;
    return p;
}

}  // namespace barnes
