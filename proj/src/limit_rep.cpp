#include "barnes/limit_rep.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "barnes/bernoulli.hpp"
#include "barnes/combinatorics.hpp"
#include "barnes/extrapolation.hpp"

namespace barnes {

using detail::ComplexL;

std::vector<long> default_limit_schedule(int d) {
    if (d <= 2) return {1000, 2000, 4000};
    if (d == 3) return {60, 120, 240};
    return {16, 32, 64};
}

namespace detail {

std::vector<ComplexL> dS_long(std::span<const Complex> w) {
    const int d = static_cast<int>(w.size());
    // prod_i sum_k (B_k/k!) (w_i z)^k, truncated at z^d
    std::vector<ComplexL> acc(d + 1, ComplexL(0)), next(d + 1);
    acc[0] = 1.0L;
    ComplexL pw = 1.0L;
    for (const auto& wi : w) {
        ComplexL x(wi.real(), wi.imag());
        pw *= x;
        std::fill(next.begin(), next.end(), ComplexL(0));
        for (int i = 0; i <= d; ++i) {
            ComplexL xk = 1.0L;
            for (int k = 0; i + k <= d; ++k) {
                next[i + k] += acc[i] * classical_bernoulli_ld(k, true) * xk;
                xk *= x;
            }
        }
        acc.swap(next);
    }
    long double fact = 1.0L;
    for (int m = 0; m <= d; ++m) {
        if (m > 0) fact *= m;
        acc[m] *= fact / pw;
    }
    return acc;
}

LimitEvaluator::LimitEvaluator(Complex a, std::span<const Complex> w, std::vector<long> schedule,
                               bool homogeneous)
    : a_(a), w_(w.begin(), w.end()), homogeneous_(homogeneous), schedule_(std::move(schedule)) {
    const int d = static_cast<int>(w.size());
    bool real = a.imag() == 0.0;
    for (auto x : w) real = real && x.imag() == 0.0;

    std::vector<CompensatedSum<ComplexL>> pw(d);
    CompensatedSum<ComplexL> lg;
    std::size_t next = 0;
    const long Mmax = schedule_.back();
    for (long k = 0; k < Mmax; ++k) {
        // one shell accumulated plainly, then folded in compensated
        std::vector<ComplexL> shell_pw(d, ComplexL(0));
        ComplexL shell_lg = 0.0L;
        for_each_shell_point(static_cast<int>(k), d, [&](const IndexVector& n) {
            if (homogeneous && k == 0) return;
            ++points_;
            // per-point work in double, accumulation in long double
            if (real) {
                double A = a.real();
                for (int i = 0; i < d; ++i) A += n[i] * w[i].real();
                const double inv = 1.0 / A;
                double p = inv;
                for (int q = 0; q < d; ++q) {
                    shell_pw[q] += (long double)p;
                    p *= inv;
                }
                shell_lg += (long double)std::log(A);
            } else {
                double x = a.real(), y = a.imag();
                for (int i = 0; i < d; ++i) {
                    x += n[i] * w[i].real();
                    y += n[i] * w[i].imag();
                }
                // A stays in the right half plane and far from overflow, so the
                // library's scaled complex division and hypot are not needed
                const double r2 = x * x + y * y;
                const double ir = x / r2, ii = -y / r2;
                double pr = ir, pi = ii;
                for (int q = 0; q < d; ++q) {
                    shell_pw[q] += ComplexL(pr, pi);
                    const double t = pr * ir - pi * ii;
                    pi = pr * ii + pi * ir;
                    pr = t;
                }
                shell_lg += ComplexL(0.5 * std::log(r2), std::atan2(y, x));
            }
        });
        for (int q = 0; q < d; ++q) pw[q] += shell_pw[q];
        lg += shell_lg;
        if (next < schedule_.size() && k + 1 == schedule_[next]) {
            std::vector<ComplexL> row(d);
            for (int q = 0; q < d; ++q) row[q] = pw[q].value();
            pow_sums_.push_back(row);
            log_sums_.push_back(lg.value());
            ++next;
        }
    }
}

}  // namespace detail

namespace {

using detail::LimitEvaluator;

ComplexL to_l(Complex z) { return {z.real(), z.imag()}; }
Complex to_d(ComplexL z) { return {double(z.real()), double(z.imag())}; }

long double harmonic_l(int k) {
    long double h = 0.0L;
    for (int i = 1; i <= k; ++i) h += 1.0L / i;
    return h;
}

long double fact_l(int n) {
    long double f = 1.0L;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void check_q(int q, int d) {
    if (q < 1 || q > d) {
        std::ostringstream os;
        os << "q = " << q << " outside 1.." << d;
        throw DomainError(os.str());
    }
}

std::vector<long> schedule_for(const EvalConfig& c, int d) {
    validate_config(c);
    std::vector<long> s = c.limit_M_schedule.empty() ? default_limit_schedule(d) : c.limit_M_schedule;
    if (s.size() < 2) throw DomainError("limit_M_schedule: at least two values required");
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 1) throw DomainError("limit_M_schedule: values must be positive");
        if (i > 0 && s[i] <= s[i - 1]) throw DomainError("limit_M_schedule: values must increase");
    }
    return s;
}

// Subsets of the weights as (sign, sum) in long double.
struct SubsetsL {
    std::vector<int> sign;
    std::vector<ComplexL> sum;
};

SubsetsL subsets_l(std::span<const Complex> w) {
    auto t = make_subsets(w);
    SubsetsL s;
    const int d = static_cast<int>(w.size());
    for (std::size_t i = 0; i < t.masks.size(); ++i) {
        ComplexL acc = 0.0L;
        for (int j = 0; j < d; ++j)
            if (t.masks[i] >> j & 1u) acc += to_l(w[j]);
        s.sign.push_back(t.signs[i]);
        s.sum.push_back(acc);
    }
    return s;
}

// F[(a+x)^j log(a+x)]_{x=M w}
ComplexL f_pow_log(const SubsetsL& S, ComplexL a, long double M, int j) {
    CompensatedSum<ComplexL> acc;
    for (std::size_t i = 0; i < S.sum.size(); ++i) {
        ComplexL z = a + M * S.sum[i];
        ComplexL zj = 1.0L;
        for (int r = 0; r < j; ++r) zj *= z;
        acc += (long double)S.sign[i] * zj * std::log(z);
    }
    return acc.value();
}

// F[x^j log x]_{x=w}
ComplexL f_pow_log_h(const SubsetsL& S, int j) { return f_pow_log(S, 0.0L, 1.0L, j); }

using Bracket = std::function<ComplexL(std::size_t i, long double M)>;

EvalResult finish(const LimitEvaluator& ev, const Bracket& bracket, ComplexL constant,
                  const EvalConfig& c, const char* what, LimitDiagnostics* diag) {
    const auto& sched = ev.schedule();
    std::vector<double> h;
    std::vector<Complex> raw;
    for (std::size_t i = 0; i < sched.size(); ++i) {
        h.push_back(1.0 / double(sched[i]));
        raw.push_back(to_d(bracket(i, (long double)sched[i]) + constant));
    }
    auto tab = neville_to_zero(h, raw);
    Complex v = tab.back()[0];
    const auto& prev = tab[tab.size() - 2];
    double err = std::abs(v - prev.back());

    bool monotone = true;
    double scale = std::max(1.0, std::abs(v));
    for (std::size_t i = 0; i + 2 < raw.size(); ++i)
        if (std::abs(raw[i + 1] - raw[i + 2]) > std::abs(raw[i] - raw[i + 1]) + 1e-12 * scale) monotone = false;

    if (diag) {
        diag->M_values = sched;
        diag->raw_values = raw;
        diag->extrapolated = v;
        diag->est_error = err;
        diag->monotone = monotone;
    }
    if (err > 10.0 * c.limit_tol * (1.0 + std::abs(v))) {
        std::ostringstream os;
        os << what << ": limit extrapolants disagree by " << err;
        throw ConvergenceError(os.str(), err);
    }
    EvalResult r;
    r.value = v;
    r.abs_error_estimate = err;
    r.method = Method::Limit;
    r.diagnostics = {{"M_max", double(sched.back())},
                     {"M_count", double(sched.size())},
                     {"lattice_points", double(ev.points())},
                     {"monotone", monotone ? 1.0 : 0.0}};
    return r;
}

}  // namespace

namespace detail {

EvalResult fp_limit_from(const LimitEvaluator& ev, int q, const EvalConfig& c, LimitDiagnostics* diag) {
    if (ev.homogeneous()) return fp_bh_limit_from(ev, q, c, diag);
    const auto& w = ev.weights();
    const int d = static_cast<int>(w.size());
    check_q(q, d);
    const auto s = dS_long(w);
    const auto S = subsets_l(w);
    const ComplexL a = to_l(ev.a());
    const long double sgn = (q % 2 == 0) ? 1.0L : -1.0L;
    const long double qf = fact_l(q - 1);

    ComplexL constant = 0.0L;
    for (int m = 0; m <= d - q; ++m) {
        int j = d - q - m;
        ComplexL aj = 1.0L;
        for (int r = 0; r < j; ++r) aj *= a;
        constant += s[m] * aj / (fact_l(m) * fact_l(j)) * (harmonic_l(q - 1) - harmonic_l(j));
    }
    constant *= ((d - q + 1) % 2 == 0 ? 1.0L : -1.0L) / qf;

    auto bracket = [&](std::size_t i, long double M) {
        CompensatedSum<ComplexL> acc;
        for (int m = 0; m <= d - q; ++m) {
            int j = d - q - m;
            acc += sgn / qf * s[m] / (fact_l(m) * fact_l(j)) * f_pow_log(S, a, M, j);
        }
        acc += ev.power_sum(i, q);
        return acc.value();
    };
    return finish(ev, bracket, constant, c, "fp_barnes_limit", diag);
}

EvalResult deriv0_limit_from(const LimitEvaluator& ev, const EvalConfig& c, LimitDiagnostics* diag) {
    if (ev.homogeneous()) return deriv0_bh_limit_from(ev, c, diag);
    const auto& w = ev.weights();
    const int d = static_cast<int>(w.size());
    const auto s = dS_long(w);
    const auto S = subsets_l(w);
    const ComplexL a = to_l(ev.a());

    ComplexL constant = 0.0L;
    for (int m = 0; m <= d; ++m) {
        ComplexL aj = 1.0L;
        for (int r = 0; r < d - m; ++r) aj *= a;
        constant += s[m] * harmonic_l(d - m) / (fact_l(m) * fact_l(d - m)) * aj;
    }
    if (d % 2 == 1) constant = -constant;

    const long double Hd = harmonic_l(d);
    auto bracket = [&](std::size_t i, long double M) {
        CompensatedSum<ComplexL> acc;
        acc += -Hd * std::pow(M, (long double)d);
        for (int m = 0; m <= d; ++m)
            acc += s[m] / (fact_l(m) * fact_l(d - m)) * f_pow_log(S, a, M, d - m);
        acc += -ev.log_sum(i);
        return acc.value();
    };
    return finish(ev, bracket, constant, c, "deriv0_barnes_limit", diag);
}

EvalResult fp_bh_limit_from(const LimitEvaluator& ev, int q, const EvalConfig& c, LimitDiagnostics* diag) {
    const auto& w = ev.weights();
    const int d = static_cast<int>(w.size());
    check_q(q, d);
    const auto s = dS_long(w);
    const auto S = subsets_l(w);
    const long double sgn = (q % 2 == 0) ? 1.0L : -1.0L;
    const long double qf = fact_l(q - 1);
    // coefficient of log M, and of H_{q-1} in the constant
    const ComplexL cq = s[d - q] * (((d + q + 1) % 2 == 0) ? 1.0L : -1.0L) / (qf * fact_l(d - q));
    std::vector<ComplexL> Fj(d - q + 1);
    for (int j = 0; j <= d - q; ++j) Fj[j] = f_pow_log_h(S, j);

    auto bracket = [&](std::size_t i, long double M) {
        CompensatedSum<ComplexL> acc;
        for (int m = 0; m <= d - q; ++m) {
            int j = d - q - m;
            acc += sgn / qf * s[m] / (fact_l(m) * fact_l(j)) * Fj[j] * std::pow(M, (long double)j);
        }
        acc += cq * std::log(M);
        acc += ev.power_sum(i, q);
        return acc.value();
    };
    return finish(ev, bracket, cq * harmonic_l(q - 1), c, "fp_bh_limit", diag);
}

EvalResult deriv0_bh_limit_from(const LimitEvaluator& ev, const EvalConfig& c, LimitDiagnostics* diag) {
    const auto& w = ev.weights();
    const int d = static_cast<int>(w.size());
    const auto s = dS_long(w);
    const auto S = subsets_l(w);
    std::vector<ComplexL> Fj(d + 1);
    for (int j = 0; j <= d; ++j) Fj[j] = f_pow_log_h(S, j);
    const long double Hd = harmonic_l(d);
    const ComplexL clog = s[d] / fact_l(d) * ((d - 1) % 2 == 0 ? 1.0L : -1.0L);

    auto bracket = [&](std::size_t i, long double M) {
        CompensatedSum<ComplexL> acc;
        const long double Md = std::pow(M, (long double)d);
        acc += Md * (std::log(M) - Hd);
        for (int m = 0; m <= d; ++m)
            acc += s[m] / (fact_l(m) * fact_l(d - m)) * Fj[d - m] * std::pow(M, (long double)(d - m));
        acc += clog * std::log(M);
        acc += -ev.log_sum(i);
        return acc.value();
    };
    return finish(ev, bracket, 0.0L, c, "deriv0_bh_limit", diag);
}

EvalResult d2_fast_from(const LimitEvaluator& ev, D2Kind kind, const EvalConfig& c, LimitDiagnostics* diag) {
    const auto& w = ev.weights();
    if (w.size() != 2) {
        std::ostringstream os;
        os << "d2_fast_path: d = 2 required, got d = " << w.size();
        throw DimensionError(os.str());
    }
    const ComplexL a = ev.homogeneous() ? ComplexL(0.0L) : to_l(ev.a());
    const ComplexL w1 = to_l(w[0]), w2 = to_l(w[1]);

    // log((w1+w2)/(w1 w2)) split into principal logs, matching the generic form
    const ComplexL l12 = std::log(w1 + w2) - std::log(w1) - std::log(w2);
    const ComplexL l1 = std::log(w1 + w2) - std::log(w1);  // log((w1+w2)/w1)
    const ComplexL l2 = std::log(w1 + w2) - std::log(w2);
    const ComplexL ww = w1 * w2, sw = w1 + w2;

    Bracket bracket;
    ComplexL constant;
    const char* what = "d2_fast_path";
    switch (kind) {
        case D2Kind::FP2:
            constant = (-1.0L + l12) / ww;
            bracket = [&](std::size_t i, long double M) {
                return -std::log(M) / ww + ev.power_sum(i, 2);
            };
            break;
        case D2Kind::FP1: {
            const ComplexL r = (sw / 2.0L - a) / ww;
            constant = r * l12;
            bracket = [&, r](std::size_t i, long double M) {
                return -(l1 / w2 + l2 / w1) * M - r * std::log(M) + ev.power_sum(i, 1);
            };
            break;
        }
        case D2Kind::Deriv0: {
            const ComplexL poly = (a * a - sw * a + (sw * sw + ww) / 6.0L) / (2.0L * ww);
            constant = poly * l12;
            const ComplexL c2 = w1 / (2.0L * w2) * l1 + w2 / (2.0L * w1) * l2 + std::log(sw) - 1.5L;
            const ComplexL c1 = (2.0L * a - sw) / (2.0L * w2) * l1 + (2.0L * a - sw) / (2.0L * w1) * l2;
            bracket = [&, c1, c2, poly](std::size_t i, long double M) {
                CompensatedSum<ComplexL> acc;
                acc += M * M * std::log(M);
                acc += c2 * M * M;
                acc += c1 * M;
                acc += -poly * std::log(M);
                acc += -ev.log_sum(i);
                return acc.value();
            };
            break;
        }
    }
    return finish(ev, bracket, constant, c, what, diag);
}

}  // namespace detail

EvalResult fp_barnes_limit(int q, const BarnesParams& p, const EvalConfig& c, LimitDiagnostics* diag) {
    validate_params(p);
    check_q(q, int(p.dim()));
    detail::LimitEvaluator ev(p.a, p.w, schedule_for(c, int(p.dim())), false);
    return detail::fp_limit_from(ev, q, c, diag);
}

EvalResult deriv0_barnes_limit(const BarnesParams& p, const EvalConfig& c, LimitDiagnostics* diag) {
    validate_params(p);
    detail::LimitEvaluator ev(p.a, p.w, schedule_for(c, int(p.dim())), false);
    return detail::deriv0_limit_from(ev, c, diag);
}

EvalResult fp_bh_limit(int q, std::span<const Complex> w, const EvalConfig& c, LimitDiagnostics* diag) {
    validate_weights(w);
    check_q(q, int(w.size()));
    detail::LimitEvaluator ev(0.0, w, schedule_for(c, int(w.size())), true);
    return detail::fp_bh_limit_from(ev, q, c, diag);
}

EvalResult deriv0_bh_limit(std::span<const Complex> w, const EvalConfig& c, LimitDiagnostics* diag) {
    validate_weights(w);
    detail::LimitEvaluator ev(0.0, w, schedule_for(c, int(w.size())), true);
    return detail::deriv0_bh_limit_from(ev, c, diag);
}

EvalResult d2_fast_path(D2Kind kind, const BarnesParams& p, const EvalConfig& c, bool homogeneous,
                        LimitDiagnostics* diag) {
    if (p.dim() != 2) {
        std::ostringstream os;
        os << "d2_fast_path: d = 2 required, got d = " << p.dim();
        throw DimensionError(os.str());
    }
    if (homogeneous)
        validate_weights(p.w);
    else
        validate_params(p);
    detail::LimitEvaluator ev(homogeneous ? Complex(0.0) : p.a, p.w, schedule_for(c, 2), homogeneous);
    return detail::d2_fast_from(ev, kind, c, diag);
}

std::vector<long> limit_schedule(const EvalConfig& c, int d) { return schedule_for(c, d); }

}  // namespace barnes
