#include "barnes/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace barnes {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
    double a, b;
    Complex value;
    double error;
    double l1;
    bool operator<(const Panel& o) const { return error < o.error; }
};

struct Rule {
    std::vector<double> x, wk, wg;  // nonnegative abscissae; wg aligned on odd indices
};

const Rule& gk21() {
    static const Rule r = [] {
        using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
        using G = boost::math::quadrature::gauss<double, 10>;
        Rule r;
        const auto& xa = GK::abscissa();
        const auto& wka = GK::weights();
        const auto& wga = G::weights();
        r.x.assign(xa.begin(), xa.end());
        r.wk.assign(wka.begin(), wka.end());
        // Gauss nodes are the odd-indexed Kronrod nodes (x[1], x[3], ...)
        r.wg.assign(r.x.size(), 0.0);
        for (std::size_t i = 1; i < r.x.size(); i += 2) r.wg[i] = wga[i / 2];
        return r;
    }();
    return r;
}

Panel eval_panel(const std::function<Complex(double)>& f, double a, double b, long& evals) {
    const auto& r = gk21();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Complex k(0.0), g(0.0);
    double l1 = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
        if (r.x[i] == 0.0) {
            Complex v = f(c);
            ++evals;
            k += r.wk[i] * v;
            l1 += r.wk[i] * std::abs(v);
            continue;
        }
        Complex v1 = f(c - h * r.x[i]), v2 = f(c + h * r.x[i]);
        evals += 2;
        k += r.wk[i] * (v1 + v2);
        g += r.wg[i] * (v1 + v2);
        l1 += r.wk[i] * (std::abs(v1) + std::abs(v2));
    }
    Panel p{a, b, k * h, std::abs(k - g) * h, l1 * std::abs(h)};
    // roundoff floor
    p.error = std::max(p.error, 50.0 * kEps * p.l1);
    return p;
}

}  // namespace

QuadratureResult quad_adaptive(const std::function<Complex(double)>& f, double a, double b, double rel_tol,
                               double abs_tol, long budget) {
    long evals = 0;
    std::priority_queue<Panel> heap;
    Panel first = eval_panel(f, a, b, evals);
    heap.push(first);
    Complex total = first.value;
    double err = first.error, l1 = first.l1;
    auto target = [&] { return std::max({abs_tol, rel_tol * std::abs(total), 100.0 * kEps * l1}); };
    while (err > target()) {
        Panel worst = heap.top();
        double mid = 0.5 * (worst.a + worst.b);
        // panels at the resolution limit cannot improve
        if (!(mid > worst.a && mid < worst.b) || std::abs(worst.b - worst.a) < 1e-14 * std::abs(b - a)) break;
        if (evals + 42 > budget) {
            std::ostringstream os;
            os << "quadrature budget of " << budget << " evaluations exhausted; achieved error " << err;
            throw QuadratureError(os.str(), err);
        }
        heap.pop();
        Panel left = eval_panel(f, worst.a, mid, evals), right = eval_panel(f, mid, worst.b, evals);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        l1 += left.l1 + right.l1 - worst.l1;
        heap.push(left);
        heap.push(right);
    }
    // re-add from the panels to shed accumulated update drift
    Complex sum(0.0);
    double esum = 0.0;
    CompensatedSum<Complex> acc;
    while (!heap.empty()) {
        acc += heap.top().value;
        esum += heap.top().error;
        heap.pop();
    }
    sum = acc.value();
    return {sum, esum, evals};
}

QuadratureResult quad_semiinfinite(const QuadratureProblem& prob) {
    if (!(prob.small_t_order > -1.0)) throw DomainError("quadrature: integrand not integrable at t = 0");
    if (!(prob.decay_rate > 0.0)) throw DomainError("quadrature: decay_rate > 0 required");
    if (!(prob.split_point > 0.0)) throw DomainError("quadrature: split point must be positive");
    const auto& f = prob.integrand;
    const double s = prob.split_point, lam = prob.decay_rate, tol = prob.rel_tol;
    long budget = prob.max_evals;

    // t = s u^k brings t^beta to u^{k(beta+1)-1}, exponent >= 1
    const int k = std::clamp(static_cast<int>(std::ceil(2.0 / (prob.small_t_order + 1.0))), 1, 40);
    auto head_f = [&](double u) {
        if (u <= 0.0) return Complex(0.0);
        double uk1 = std::pow(u, k - 1);
        return f(s * uk1 * u) * (s * k * uk1);
    };
    QuadratureResult head = quad_adaptive(head_f, 0.0, 1.0, 0.5 * tol, 0.0, budget);
    budget -= head.evaluations;

    // tail: t = s - log(1-u)/lam, integrated in v = 1 - u so that v stays resolvable near 0
    double T = s + (-std::log(tol) + 5.0) / lam;
    auto tail_map = [&](double v) {
        if (v <= 0.0) return Complex(0.0);
        return f(s - std::log(v) / lam) / (lam * v);
    };
    // remainder bound beyond T: |f(T)|/lam for pure exponential decay, doubled for slack
    auto remainder = [&](double Tm) { return 2.0 * std::abs(f(Tm)) / lam; };
    double scale = std::max(std::abs(head.value), 1e-300);
    double rem = remainder(T);
    // polynomial prefactors push the useful range out; 700/lam is where e^{-lam t} underflows
    for (int ext = 0; ext < 12 && rem > 0.25 * tol * scale && T < s + 700.0 / lam; ++ext) {
        T = std::min(T + (T - s), s + 700.0 / lam);
        rem = remainder(T);
    }
    double vmin = std::max(std::exp(-lam * (T - s)), std::numeric_limits<double>::min());
    QuadratureResult tail = quad_adaptive(tail_map, vmin, 1.0, 0.5 * tol, 0.25 * tol * scale, budget);
    QuadratureResult out;
    out.value = head.value + tail.value;
    out.error = head.error + tail.error + rem;
    out.evaluations = head.evaluations + tail.evaluations + 14;
    return out;
}

}  // namespace barnes
