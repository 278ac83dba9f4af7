#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace barnes {

// Principal branch everywhere: std::log / std::pow on std::complex use arg in (-pi, pi].
using Complex = std::complex<double>;
using Rational = boost::rational<long long>;

class BarnesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class DomainError : public BarnesError {
public:
    using BarnesError::BarnesError;
};
class PoleError : public BarnesError {
public:
    PoleError(const std::string& msg, int q, std::optional<Complex> res = std::nullopt)
        : BarnesError(msg), pole(q), residue(res) {}
    int pole;
    std::optional<Complex> residue;
};
class ConvergenceError : public BarnesError {
public:
    ConvergenceError(const std::string& msg, double achieved = 0.0)
        : BarnesError(msg), achieved_error(achieved) {}
    double achieved_error;
};
class QuadratureError : public BarnesError {
public:
    QuadratureError(const std::string& msg, double achieved = 0.0)
        : BarnesError(msg), achieved_error(achieved) {}
    double achieved_error;
};
class TruncationError : public BarnesError {
public:
    using BarnesError::BarnesError;
};
class ResourceError : public BarnesError {
public:
    using BarnesError::BarnesError;
};
class DimensionError : public BarnesError {
public:
    using BarnesError::BarnesError;
};

struct BarnesParams {
    Complex a;
    std::vector<Complex> w;
    std::size_t dim() const { return w.size(); }
};

struct EvalConfig {
    double rel_tol = 1e-10;
    long max_shells = 100000;
    // Empty means "pick by dimension" (see limit_rep).
    std::vector<long> limit_M_schedule{};
    double limit_tol = 1e-5;
    double quad_rel_tol = 1e-12;
    double quad_split_point = 1.0;
    double alpha_step = 1e-4;
};

enum class Method { Series, Limit, Integral, Direct, Reduction };
const char* method_name(Method m);

struct EvalResult {
    Complex value{};
    double abs_error_estimate = 0.0;
    Method method = Method::Series;
    std::map<std::string, double> diagnostics;
};

void validate_weights(std::span<const Complex> w);
void validate_params(const BarnesParams& p);
void validate_config(const EvalConfig& c);

Rational harmonic(int k);
double harmonic_value(int k);
// n! as a double (exact for n <= 22).
double factorial(int n);
long long factorial_exact(int n);
Rational binomial_exact(int n, int k);
double binomial(int n, int k);

Complex prod(std::span<const Complex> w);

// Neumaier compensated sum.
template <class T>
class CompensatedSum {
public:
    void add(const T& x) {
        if constexpr (std::is_same_v<T, std::complex<double>> ||
                      std::is_same_v<T, std::complex<long double>>) {
            auto re = part(sum_.real(), c_re_, x.real());
            auto im = part(sum_.imag(), c_im_, x.imag());
            sum_ = T(re, im);
        } else {
            sum_ = part(sum_, c_re_, x);
        }
    }
    CompensatedSum& operator+=(const T& x) {
        add(x);
        return *this;
    }
    T value() const {
        if constexpr (std::is_same_v<T, std::complex<double>> ||
                      std::is_same_v<T, std::complex<long double>>)
            return T(sum_.real() + c_re_, sum_.imag() + c_im_);
        else
            return sum_ + c_re_;
    }

private:
    template <class R>
    static R part(R s, R& c, R x) {
        R t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        return t;
    }
    T sum_{};
    using Real = decltype(std::abs(std::declval<T>()));
    Real c_re_{}, c_im_{};
};

}  // namespace barnes
