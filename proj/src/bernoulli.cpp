#include "barnes/bernoulli.hpp"

#include <cmath>
#include <mutex>

#include <boost/multiprecision/cpp_int.hpp>

namespace barnes {

namespace {

using boost::multiprecision::cpp_rational;

constexpr int kExactLimit = 64;

std::vector<cpp_rational> exact_bernoulli_table() {
    // sum_{k=0}^{n} C(n+1,k) B_k = 0
    std::vector<cpp_rational> B(kExactLimit + 1);
    B[0] = 1;
    for (int n = 1; n <= kExactLimit; ++n) {
        cpp_rational s = 0;
        cpp_rational c = 1;  // C(n+1, k)
        for (int k = 0; k < n; ++k) {
            s += c * B[k];
            c = c * (n + 1 - k) / (k + 1);
        }
        B[n] = -s / (n + 1);
    }
    return B;
}

const std::vector<cpp_rational>& exact_table() {
    static const std::vector<cpp_rational> t = exact_bernoulli_table();
    return t;
}

}  // namespace

double classical_bernoulli(int n) {
    if (n < 0 || n > kExactLimit) throw TruncationError("classical_bernoulli: index out of exact range");
    return exact_table()[n].convert_to<double>();
}

long double classical_bernoulli_ld(int n, bool scaled) {
    if (n < 0 || n > kExactLimit) throw TruncationError("classical_bernoulli_ld: index out of exact range");
    cpp_rational v = exact_table()[n];
    if (scaled)
        for (int i = 2; i <= n; ++i) v /= i;
    return v.convert_to<long double>();
}

const std::vector<double>& classical_bernoulli_scaled(int N) {
    static std::mutex mu;
    static std::vector<double> cache;
    if (N > kBernoulliCap) throw TruncationError("Bernoulli table size exceeds cap 256");
    std::lock_guard<std::mutex> lock(mu);
    if (static_cast<int>(cache.size()) <= N) {
        cache.clear();
        const auto& B = exact_table();
        cpp_rational fact = 1;
        for (int n = 0; n <= kBernoulliCap; ++n) {
            if (n > 0) fact *= n;
            if (n <= kExactLimit) {
                cache.push_back(cpp_rational(B[n] / fact).convert_to<double>());
            } else if (n % 2 == 1) {
                cache.push_back(0.0);
            } else {
                // B_n/n! = (-1)^{n/2+1} 2 zeta(n) / (2 pi)^n, zeta(n) = 1 to double precision
                double v = 2.0 * std::pow(2.0 * 3.14159265358979323846, -double(n));
                cache.push_back((n / 2) % 2 == 1 ? v : -v);
            }
        }
    }
    return cache;
}

std::vector<Complex> bernoulli_scaled(std::span<const Complex> w, int N) {
    if (N < 0) throw DomainError("bernoulli: N >= 0 required");
    if (N > kBernoulliCap) throw TruncationError("Bernoulli table size exceeds cap 256");
    const auto& b = classical_bernoulli_scaled(N);
    std::vector<Complex> acc(N + 1, Complex(0.0, 0.0));
    acc[0] = 1.0;
    std::vector<Complex> one(N + 1), next(N + 1);
    for (const Complex& wi : w) {
        Complex p(1.0, 0.0);
        for (int n = 0; n <= N; ++n) {
            one[n] = b[n] * p;
            p *= wi;
        }
        for (int n = 0; n <= N; ++n) {
            Complex s(0.0, 0.0);
            for (int k = 0; k <= n; ++k) s += acc[k] * one[n - k];
            next[n] = s;
        }
        acc.swap(next);
    }
    return acc;
}

BernoulliTable bernoulli_numbers(std::span<const Complex> w, int N) {
    auto scaled = bernoulli_scaled(w, N);
    BernoulliTable t;
    t.w.assign(w.begin(), w.end());
    t.N = N;
    t.numbers.resize(N + 1);
    long double f = 1.0L;
    for (int n = 0; n <= N; ++n) {
        if (n > 0) f *= n;
        t.numbers[n] = Complex(static_cast<double>(f * scaled[n].real()),
                               static_cast<double>(f * scaled[n].imag()));
    }
    return t;
}

Complex bernoulli_poly(int n, Complex a, std::span<const Complex> w) {
    if (n < 0) throw DomainError("bernoulli_poly: n >= 0 required");
    auto t = bernoulli_numbers(w, n);
    // sum_l C(n,l) a^l B_{n-l}(w); the l = 0 term first, so a = 0 reproduces B_n(w) exactly
    Complex s = t.numbers[n];
    if (a == Complex(0.0, 0.0)) return s;
    Complex ap(1.0, 0.0);
    for (int l = 1; l <= n; ++l) {
        ap *= a;
        s += binomial(n, l) * ap * t.numbers[n - l];
    }
    return s;
}

std::vector<Complex> bernoulli_poly_scaled(int N, Complex a, std::span<const Complex> w) {
    auto b = bernoulli_scaled(w, N);
    std::vector<Complex> e(N + 1);
    Complex p(1.0, 0.0);
    for (int l = 0; l <= N; ++l) {
        e[l] = p;
        p *= a / double(l + 1);
    }
    std::vector<Complex> out(N + 1);
    for (int n = 0; n <= N; ++n) {
        Complex s(0.0, 0.0);
        for (int l = 0; l <= n; ++l) s += e[l] * b[n - l];
        out[n] = s;
    }
    return out;
}

Complex bernoullian_dS(int m, std::span<const Complex> w) {
    if (m < 0) throw DomainError("bernoullian_dS: m >= 0 required");
    const int d = static_cast<int>(w.size());
    // _dS_m'(a) = m!/((m+d-1)! prod w) B_{m+d-1}(a|w); differentiate d-1 more times
    // with d/da B_n(a|w) = n B_{n-1}(a|w), then set a = 0.
    int n = m + d - 1;
    double coeff = 1.0;
    for (int i = m + 1; i <= n; ++i) coeff /= i;
    for (int step = 0; step < d - 1; ++step) {
        coeff *= n;
        --n;
    }
    return coeff * bernoulli_poly(n, 0.0, w) / prod(w);
}

}  // namespace barnes
