#include "barnes/series_rep.hpp"

#include <cmath>
#include <deque>
#include <sstream>

#include "barnes/bernoulli.hpp"

namespace barnes {

void check_pole(Complex alpha, int d) {
    if (alpha.imag() != 0.0) return;
    double r = alpha.real();
    if (r == std::round(r) && r >= 1 && r <= d) {
        std::ostringstream os;
        os << "pole at alpha = " << int(r);
        throw PoleError(os.str(), int(r));
    }
}

namespace detail {

namespace {

// Gamma(1-alpha)/Gamma(d-alpha-m+1) as a finite product
Complex p_factor(Complex alpha, int d, int m) {
    int j = d - m;
    Complex r(1.0, 0.0);
    if (j >= 0) {
        for (int i = 1; i <= j; ++i) r *= double(i) - alpha;
        return 1.0 / r;
    }
    for (int i = 0; i < -j; ++i) r *= -alpha - double(i);
    return r;
}

// d/dalpha of p_factor at alpha = 0
double p_factor_deriv0(int d, int m) {
    int j = d - m;
    if (j >= 0) return harmonic_value(j) / factorial(j);
    int r = m - d;
    double v = factorial(r - 1);
    return (r % 2 == 0) ? v : -v;
}

// N!/(N+c)!
double fact_ratio(int N, int c) {
    double r = 1.0;
    if (c >= 0) {
        for (int i = 1; i <= c; ++i) r /= double(N + i);
    } else {
        for (int i = 0; i < -c; ++i) r *= double(N - i);
    }
    return r;
}

constexpr int kExpansionExtra = 200;
constexpr double kExpansionRadius = 2.0;

}  // namespace

SeriesKernel::SeriesKernel(Quantity qty, Complex alpha, std::span<const Complex> w, int K)
    : qty_(qty), alpha_(alpha), d_(static_cast<int>(w.size())), K_(K), w_(w.begin(), w.end()) {
    if (qty_ == Quantity::FinitePart) q_ = static_cast<int>(std::lround(alpha.real()));
    if (qty_ == Quantity::Deriv0) alpha_ = 0.0;
    subsets_ = make_subsets(w_);
    prod_w_ = prod(w_);

    auto b = bernoulli_scaled(w_, K_ - 1);
    sm_.resize(K_);
    for (int m = 0; m < K_; ++m) sm_[m] = b[m] / prod_w_;

    pm_.resize(K_);
    for (int m = 0; m < K_; ++m) {
        switch (qty_) {
            case Quantity::Value: pm_[m] = p_factor(alpha_, d_, m); break;
            case Quantity::FinitePart:
                pm_[m] = (m > d_ - q_) ? p_factor(double(q_), d_, m) : Complex(0.0);
                break;
            case Quantity::Deriv0: pm_[m] = p_factor_deriv0(d_, m); break;
        }
    }

    // Expansion in sigma/A with normalized weights (sum |w~| = 1)
    sigma_ = 0.0;
    for (auto x : w_) sigma_ += std::abs(x);
    radius_ = kExpansionRadius * sigma_;
    std::vector<Complex> wn;
    for (auto x : w_) wn.push_back(x / sigma_);
    auto bn = bernoulli_scaled(wn, K_ - 1);
    Complex pn = prod(wn);
    const int Nmax = K_ + kExpansionExtra;
    auto Gt = g_power_values(wn, Nmax + d_);
    Complex poch(1.0, 0.0);  // (alpha)_N / N!
    for (int N = 1; N < K_; ++N) poch *= (alpha_ + double(N - 1)) / double(N);
    for (int N = K_; N <= Nmax; ++N) {
        if (N >= 1) poch *= (alpha_ + double(N - 1)) / double(N);
        CompensatedSum<Complex> h;
        for (int m = 0; m < K_; ++m) h += (bn[m] / pn) * fact_ratio(N, d_ - m) * Gt[N + d_ - m];
        Complex lead = (qty_ == Quantity::Deriv0) ? Complex(1.0 / N) : poch;
        coef_.push_back(((N % 2 == 0) ? 1.0 : -1.0) * lead * h.value());
    }
}

Complex SeriesKernel::P(int m) const { return pm_[m]; }

Complex SeriesKernel::f_power(Complex b, int j) const {
    Complex g = (j == d_) ? factorial(d_) * prod_w_ : Complex(0.0);
    Complex bj = (j == 0) ? Complex(1.0) : std::pow(b, j);
    if (j > 0 && b == Complex(0.0)) bj = 0.0;
    return g - ((d_ % 2 == 0) ? 1.0 : -1.0) * bj;
}

std::vector<Complex> SeriesKernel::h_coefficients(int Nmax) const {
    auto g = g_power_values(w_, Nmax + d_);
    std::vector<Complex> h(Nmax + 1);
    for (int N = 0; N <= Nmax; ++N) {
        CompensatedSum<Complex> s;
        for (int m = 0; m < K_; ++m) {
            int j = N + d_ - m;
            if (j < 0) continue;
            s += sm_[m] * g[j] / factorial(j);
        }
        h[N] = s.value();
    }
    return h;
}

Complex SeriesKernel::summand(Complex A) const {
    return uses_expansion(A) ? summand_expansion(A) : summand_explicit(A);
}

Complex SeriesKernel::summand_expansion(Complex A) const {
    Complex z = sigma_ / A;
    Complex zp = std::pow(z, K_);
    CompensatedSum<Complex> s;
    int quiet = 0;
    for (std::size_t i = 0; i < coef_.size(); ++i) {
        Complex t = coef_[i] * zp;
        s += t;
        Complex cur = s.value();
        if (std::abs(t) <= 1e-18 * std::abs(cur)) {
            if (++quiet >= 2) break;
        } else {
            quiet = 0;
        }
        zp *= z;
    }
    if (qty_ == Quantity::Deriv0) return -s.value();
    return -std::exp(-alpha_ * std::log(A)) * s.value();
}

Complex SeriesKernel::summand_explicit(Complex A) const {
    const std::size_t S = subsets_.masks.size();
    const double sign0 = (d_ % 2 == 0) ? 1.0 : -1.0;
    std::vector<Complex> y(S + 1), L(S + 1), inv(S + 1);
    std::vector<double> sg(S + 1);
    y[0] = A;
    sg[0] = sign0;
    for (std::size_t s = 0; s < S; ++s) {
        y[s + 1] = A + subsets_.sums[s];
        sg[s + 1] = subsets_.signs[s];
    }
    for (std::size_t s = 0; s <= S; ++s) {
        L[s] = std::log(y[s]);
        inv[s] = 1.0 / y[s];
    }
    CompensatedSum<Complex> total;

    if (qty_ == Quantity::Value) {
        std::vector<Complex> cur(S + 1);
        for (std::size_t s = 0; s <= S; ++s) cur[s] = std::exp((double(d_) - alpha_) * L[s]);
        total += std::exp(-alpha_ * L[0]);
        for (int m = 0; m < K_; ++m) {
            CompensatedSum<Complex> g;
            for (std::size_t s = 0; s <= S; ++s) {
                g += sg[s] * cur[s];
                cur[s] *= inv[s];
            }
            total += -sm_[m] * pm_[m] * g.value();
        }
        return total.value();
    }

    // integer powers y^k, k = -K..d
    const int lo = K_, hi = d_;
    std::vector<std::vector<Complex>> pw(S + 1, std::vector<Complex>(lo + hi + 1));
    for (std::size_t s = 0; s <= S; ++s) {
        pw[s][lo] = 1.0;
        for (int k = 1; k <= hi; ++k) pw[s][lo + k] = pw[s][lo + k - 1] * y[s];
        for (int k = 1; k <= lo; ++k) pw[s][lo - k] = pw[s][lo - k + 1] * inv[s];
    }
    auto g_pow = [&](int k) {
        CompensatedSum<Complex> g;
        for (std::size_t s = 0; s <= S; ++s) g += sg[s] * pw[s][lo + k];
        return g.value();
    };
    auto g_pow_log = [&](int k) {
        CompensatedSum<Complex> g;
        for (std::size_t s = 0; s <= S; ++s) g += sg[s] * pw[s][lo + k] * L[s];
        return g.value();
    };

    if (qty_ == Quantity::FinitePart) {
        const int q = q_;
        total += pw[0][lo - q];
        const double qf = factorial(q - 1);
        const double sgn = (q % 2 == 0) ? -1.0 : 1.0;  // (-1)^{q+1}
        for (int m = 0; m < K_; ++m) {
            int j = d_ - q - m;
            Complex X = (j >= 0) ? sgn / (qf * factorial(j)) * g_pow_log(j) : pm_[m] * g_pow(j);
            total += -sm_[m] * X;
        }
        return total.value();
    }

    // Deriv0
    total += -L[0];
    total += -harmonic_value(d_);
    for (int m = 0; m < K_; ++m) {
        if (m <= d_)
            total += sm_[m] / factorial(d_ - m) * g_pow_log(d_ - m);
        else
            total += -sm_[m] * pm_[m] * g_pow(d_ - m);
    }
    return total.value();
}

Complex SeriesKernel::closed_part(Complex b) const {
    const std::size_t S = subsets_.masks.size();
    std::vector<Complex> y(S), L(S);
    for (std::size_t s = 0; s < S; ++s) {
        y[s] = b + subsets_.sums[s];
        L[s] = std::log(y[s]);
    }
    auto f_gen = [&](Complex p) {
        CompensatedSum<Complex> f;
        for (std::size_t s = 0; s < S; ++s) f += double(subsets_.signs[s]) * std::exp(p * L[s]);
        return f.value();
    };
    auto f_int = [&](int k) {
        CompensatedSum<Complex> f;
        for (std::size_t s = 0; s < S; ++s) f += double(subsets_.signs[s]) * std::pow(y[s], k);
        return f.value();
    };
    auto f_int_log = [&](int k) {
        CompensatedSum<Complex> f;
        for (std::size_t s = 0; s < S; ++s) {
            Complex yk(1.0);
            for (int i = 0; i < k; ++i) yk *= y[s];
            f += double(subsets_.signs[s]) * yk * L[s];
        }
        return f.value();
    };

    CompensatedSum<Complex> total;
    switch (qty_) {
        case Quantity::Value:
            for (int m = 0; m < K_; ++m)
                total += -sm_[m] * pm_[m] * f_gen(double(d_) - alpha_ - double(m));
            break;
        case Quantity::FinitePart: {
            const int q = q_;
            const double sq = (q % 2 == 0) ? 1.0 : -1.0;
            const double hq = harmonic_value(q - 1);
            for (int m = 0; m < K_; ++m) {
                int j = d_ - q - m;
                if (j >= 0) {
                    Complex br = (harmonic_value(j) - hq) * f_power(b, j) - f_int_log(j);
                    total += -sm_[m] * sq / (factorial(q - 1) * factorial(j)) * br;
                } else {
                    total += -sm_[m] * pm_[m] * f_int(j);
                }
            }
            break;
        }
        case Quantity::Deriv0:
            for (int m = 0; m < K_; ++m) {
                if (m <= d_) {
                    int j = d_ - m;
                    Complex br = harmonic_value(j) * f_power(b, j) - f_int_log(j);
                    total += -sm_[m] / factorial(j) * br;
                } else {
                    total += -sm_[m] * pm_[m] * f_int(d_ - m);
                }
            }
            break;
    }
    return total.value();
}

}  // namespace detail

namespace {

using detail::Quantity;
using detail::SeriesKernel;

constexpr int kDecayOrder = 10;

int choose_k(Quantity qty, Complex alpha, int d, const SeriesControls& c) {
    double re = alpha.real();
    if (c.k) {
        int k = *c.k;
        if (k <= -d) throw DomainError("series: k > -d required");
        if (!(re > -k)) throw DomainError("series: Re(alpha) > -k required");
        return k;
    }
    switch (qty) {
        case Quantity::Value:
            return std::max({1, int(std::ceil(-re)) + 1, int(std::ceil(kDecayOrder - re))});
        case Quantity::FinitePart: {
            int q = int(std::lround(re));
            return std::max(1 - q, kDecayOrder - q);
        }
        case Quantity::Deriv0: return kDecayOrder;
    }
    return 1;
}

EvalResult run_series(Quantity qty, Complex alpha, Complex base, Complex head,
                      std::span<const Complex> w, const SeriesControls& c) {
    validate_config(c);
    if (c.shell_stop_count < 1) throw DomainError("series: shell_stop_count >= 1 required");
    const int d = static_cast<int>(w.size());
    const int k = choose_k(qty, alpha, d, c);
    const int K = k + d;
    SeriesKernel ker(qty, alpha, w, K);

    CompensatedSum<Complex> total;
    total += head;
    Complex closed = ker.closed_part(base);
    total += closed;
    const double closed_scale = std::max(std::abs(head), std::abs(closed));

    std::deque<double> recent;
    int quiet = 0;
    long points = 0, expansion_points = 0;
    long shell = 1;
    double max_shell = 0.0;
    bool done = false;
    for (; shell <= c.max_shells; ++shell) {
        CompensatedSum<Complex> acc;
        for_each_shell_point(int(shell), d, [&](const IndexVector& n) {
            Complex A = base;
            for (int i = 0; i < d; ++i) A += double(n[i]) * w[i];
            if (ker.uses_expansion(A)) ++expansion_points;
            acc += ker.summand(A);
            ++points;
        });
        Complex sv = acc.value();
        total += sv;
        double mag = std::abs(sv);
        max_shell = std::max(max_shell, mag);
        recent.push_back(mag);
        if (static_cast<int>(recent.size()) > c.shell_stop_count) recent.pop_front();
        double scale = std::max(std::abs(total.value()), 1e-6 * std::max(closed_scale, max_shell));
        if (mag <= 0.1 * c.rel_tol * scale)
            ++quiet;
        else
            quiet = 0;
        if (quiet >= c.shell_stop_count) {
            done = true;
            break;
        }
    }
    double tail = 0.0;
    for (double m : recent) tail += m;
    if (!done) {
        std::ostringstream os;
        os << "series: no convergence after " << c.max_shells << " shells (last shells sum "
           << tail << ", k = " << k << ")";
        throw ConvergenceError(os.str(), tail);
    }
    EvalResult r;
    r.value = total.value();
    r.abs_error_estimate = tail + 1e-15 * std::max({closed_scale, max_shell, std::abs(r.value)});
    r.method = Method::Series;
    r.diagnostics = {{"shells", double(shell)},
                     {"k", double(k)},
                     {"K", double(K)},
                     {"lattice_points", double(points)},
                     {"expansion_points", double(expansion_points)}};
    return r;
}

void check_q(int q, int d) {
    if (q < 1 || q > d) throw DomainError("finite part: 1 <= q <= d required");
}

}  // namespace

EvalResult barnes_zeta_series(Complex alpha, const BarnesParams& p, const SeriesControls& c) {
    validate_params(p);
    check_pole(alpha, int(p.dim()));
    Complex head = std::exp(-alpha * std::log(p.a));
    return run_series(Quantity::Value, alpha, p.a, head, p.w, c);
}

EvalResult zeta_bh_series(Complex alpha, std::span<const Complex> w, const SeriesControls& c) {
    validate_weights(w);
    check_pole(alpha, int(w.size()));
    return run_series(Quantity::Value, alpha, 0.0, 0.0, w, c);
}

EvalResult fp_barnes_series(int q, const BarnesParams& p, const SeriesControls& c) {
    validate_params(p);
    check_q(q, int(p.dim()));
    Complex head = 1.0 / std::pow(p.a, q);
    return run_series(Quantity::FinitePart, double(q), p.a, head, p.w, c);
}

EvalResult deriv0_barnes_series(const BarnesParams& p, const SeriesControls& c) {
    validate_params(p);
    return run_series(Quantity::Deriv0, 0.0, p.a, -std::log(p.a), p.w, c);
}

EvalResult fp_bh_series(int q, std::span<const Complex> w, const SeriesControls& c) {
    validate_weights(w);
    check_q(q, int(w.size()));
    return run_series(Quantity::FinitePart, double(q), 0.0, 0.0, w, c);
}

EvalResult deriv0_bh_series(std::span<const Complex> w, const SeriesControls& c) {
    validate_weights(w);
    return run_series(Quantity::Deriv0, 0.0, 0.0, 0.0, w, c);
}

}  // namespace barnes
