#include "doctest.h"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "barnes/bernoulli.hpp"
#include "barnes/integral_rep.hpp"
#include "barnes/oracles.hpp"
#include "barnes/quadrature.hpp"
#include "barnes/series_rep.hpp"
#include "barnes/special.hpp"
#include "test_util.hpp"

using namespace barnes;
using testutil::rel_err;
using testutil::rel_err_strict;

namespace {
const double kGamma = special::kEulerGamma;
const double kPi = special::kPi;
const std::vector<Complex> kW1{1.0};
const std::vector<Complex> kW11{1.0, 1.0};
const std::vector<Complex> kWsqrt2{1.0, std::sqrt(2.0)};
const std::vector<Complex> kW3{1.0, std::sqrt(2.0), kPi / 4};

Complex zeta_r(double s) { return oracles::hurwitz_zeta(s, 1.0); }

QuadratureResult quad(std::function<Complex(double)> f, double order, double decay) {
    QuadratureProblem p;
    p.integrand = std::move(f);
    p.small_t_order = order;
    p.decay_rate = decay;
    return quad_semiinfinite(p);
}
}  // namespace

TEST_CASE("Kronrod nodes carry the Gauss rule on odd indices") {
    using K = boost::math::quadrature::gauss_kronrod<double, 21>;
    using G = boost::math::quadrature::gauss<double, 10>;
    auto kx = K::abscissa();
    auto gx = G::abscissa();
    REQUIRE(kx.size() == 11);
    REQUIRE(gx.size() == 5);
    for (std::size_t i = 0; i < gx.size(); ++i) CHECK(kx[2 * i + 1] == doctest::Approx(gx[i]).epsilon(1e-15));
}

TEST_CASE("quad_semiinfinite examples") {
    auto r1 = quad([](double t) { return Complex(std::exp(-t)); }, 0, 1);
    CHECK(std::abs(r1.value - 1.0) < 1e-13);
    auto r2 = quad([](double t) { return Complex(t * std::exp(-2 * t)); }, 1, 2);
    CHECK(std::abs(r2.value - 0.25) < 1e-13);
    auto r3 = quad([](double t) { return Complex(std::sqrt(t) * std::exp(-t)); }, 0.5, 1);
    CHECK(std::abs(r3.value - std::sqrt(kPi) / 2) < 1e-12);
    CHECK(std::abs(r3.value - 0.8862269) < 1e-7);
    // integrable endpoint singularity and slow decay
    auto r4 = quad([](double t) { return Complex(std::pow(t, -0.7) * std::exp(-0.05 * t)); }, -0.7, 0.05);
    double ref = std::tgamma(0.3) * std::pow(0.05, -0.3);
    CHECK(std::abs(r4.value - ref) < 1e-10 * ref);
    CHECK_THROWS_AS(quad([](double) { return Complex(1.0); }, -1.0, 1), DomainError);
    CHECK_THROWS_AS(quad([](double) { return Complex(1.0); }, 0, 0), DomainError);
    QuadratureProblem p;
    p.integrand = [](double t) { return Complex(std::sin(1e4 * t) * std::exp(-t)); };
    p.max_evals = 500;
    CHECK_THROWS_AS(quad_semiinfinite(p), QuadratureError);
}

TEST_CASE("residue examples") {
    CHECK(std::abs(residue(1, {0.4, kW1}) - 1.0) < 1e-15);
    for (double a : {0.3, 1.0, 2.5}) CHECK(std::abs(residue(1, {a, kW11}) - (1.0 - a)) < 1e-14);
    CHECK(std::abs(residue(2, {0.7, kW11}) - 1.0) < 1e-15);
    CHECK(residue_bh(1, kW3) == residue(1, {0.0, kW3}));
    CHECK_THROWS_AS(residue(3, {1.0, kW11}), DomainError);
}

TEST_CASE("barnes_zeta_integral examples") {
    IntegralControls ic;
    ic.M = 0;
    auto r = barnes_zeta_integral(5.0, {1.0, kW11}, ic);
    CHECK(rel_err(r.value, std::pow(kPi, 4) / 90) < 1e-10);
    CHECK(r.method == Method::Integral);
    CHECK(r.diagnostics.at("M") == 0);
    CHECK(r.diagnostics.at("quadrature_evaluations") > 0);
    ic.M = 2;
    CHECK(rel_err(barnes_zeta_integral(0.5, {1.0, kW11}, ic).value, zeta_r(-0.5)) < 1e-10);
    CHECK(std::abs(barnes_zeta_integral(0.5, {1.0, kW11}, ic).value - (-0.2078862)) < 1e-7);
    ic.M = 3;
    auto h = oracles::hurwitz_zeta(-1.5, 0.3);
    CHECK(rel_err(barnes_zeta_integral(-1.5, {0.3, kW1}, ic).value, h) < 1e-10);
    // M too small for alpha
    ic.M = 0;
    CHECK_THROWS_AS(barnes_zeta_integral(0.5, {1.0, kW11}, ic), DomainError);
    CHECK_THROWS_AS(barnes_zeta_integral(2.0, {1.0, kW11}), PoleError);
    try {
        barnes_zeta_integral(1.0, {0.3, kW11});
    } catch (const PoleError& e) {
        CHECK(e.pole == 1);
        REQUIRE(e.residue);
        CHECK(std::abs(*e.residue - 0.7) < 1e-14);
    }
    CHECK_THROWS_AS(barnes_zeta_integral(0.5, {-0.5, kW11}), DomainError);
    CHECK_THROWS_AS(barnes_zeta_integral(0.5, {1.0, {Complex(1.0), Complex(-0.1, 1.0)}}), DomainError);
    // non-positive integers are regular
    CHECK(rel_err(barnes_zeta_integral(-2.0, {0.3, kW1}).value, oracles::hurwitz_zeta(-2.0, 0.3)) < 1e-12);
}

TEST_CASE("fp_barnes_integral examples") {
    CHECK(std::abs(fp_barnes_integral(1, {1.0, kW1}).value - kGamma) < 1e-11);
    CHECK(std::abs(fp_barnes_integral(2, {1.0, kW11}).value - kGamma) < 1e-11);
    BarnesParams p3{0.9, kW3};
    CHECK(rel_err(fp_barnes_integral(2, p3).value, fp_barnes_series(2, p3).value) < 1e-6);
    for (int q = 1; q <= 3; ++q)
        CHECK(rel_err(fp_barnes_integral(q, p3).value, fp_barnes_series(q, p3).value) < 1e-8);
    CHECK_THROWS_AS(fp_barnes_integral(0, p3), DomainError);
}

TEST_CASE("deriv0_barnes_integral examples") {
    double l2p = 0.5 * std::log(2 * kPi);
    CHECK(std::abs(deriv0_barnes_integral({1.0, kW1}).value + l2p) < 1e-6);
    CHECK(std::abs(deriv0_barnes_integral({3.0, kW1}).value - (std::log(2.0) - l2p)) < 1e-6);
    BarnesParams p{0.7, kWsqrt2};
    auto r = deriv0_barnes_integral(p);
    CHECK(rel_err(r.value, deriv0_barnes_series(p).value) < 1e-5);
    CHECK(r.diagnostics.at("M") == 3);
    CHECK(r.abs_error_estimate < 1e-6);
}

TEST_CASE("zeta_bh_integral examples") {
    IntegralControls ic;
    ic.M = 0;
    auto r = zeta_bh_integral(5.0, kW11, ic);
    CHECK(rel_err(r.value, zeta_r(4) + zeta_r(5)) < 1e-10);
    CHECK(std::abs(r.value - 2.1192510) < 1e-6);
    CHECK(rel_err(zeta_bh_integral(2.0, kW1, ic).value, kPi * kPi / 6) < 1e-10);
    ic.M = 2;
    Complex c1 = zeta_bh_integral(0.5, kW11, ic).value;
    ic.c = 2.0;
    Complex c2 = zeta_bh_integral(0.5, kW11, ic).value;
    CHECK(rel_err_strict(c1, c2) < 1e-8);
    // zeta_Bh(alpha|(1,1)) = zeta(alpha-1) + zeta(alpha)
    CHECK(rel_err(c1, zeta_r(-0.5) + zeta_r(0.5)) < 1e-10);
    ic.c = Complex(0.0, 1.0);
    CHECK_THROWS_AS(zeta_bh_integral(0.5, kW11, ic), DomainError);
    CHECK_THROWS_AS(zeta_bh_integral(1.0, kW11), PoleError);
}

TEST_CASE("fp_bh_integral and deriv0_bh_integral examples") {
    CHECK(std::abs(fp_bh_integral(1, kW1).value - kGamma) < 1e-11);
    CHECK(std::abs(fp_bh_integral(2, kW11).value - (kGamma + kPi * kPi / 6)) < 1e-11);
    CHECK(rel_err(fp_bh_integral(1, kWsqrt2).value, fp_bh_series(1, kWsqrt2).value) < 1e-6);
    double l2p = 0.5 * std::log(2 * kPi);
    CHECK(std::abs(deriv0_bh_integral(kW1).value + l2p) < 1e-10);
    CHECK(std::abs(deriv0_bh_integral(std::vector<Complex>{2.0}).value - (0.5 * std::log(2.0) - l2p)) < 1e-10);
    CHECK(rel_err(deriv0_bh_integral(kW11).value, deriv0_bh_series(kW11).value) < 1e-6);
    for (auto w : {kWsqrt2, kW3}) {
        for (int q = 1; q <= int(w.size()); ++q)
            CHECK(rel_err(fp_bh_integral(q, w).value, fp_bh_series(q, w).value) < 1e-8);
        CHECK(rel_err(deriv0_bh_integral(w).value, deriv0_bh_series(w).value) < 1e-8);
    }
}

TEST_CASE("M-independence and c-independence") {
    std::vector<BarnesParams> ps{{0.7, kWsqrt2}, {0.9, kW3}, {Complex(1.2, 0.4), {Complex(1.0, 0.3), 0.8}}};
    for (const auto& p : ps) {
        const int d = int(p.dim());
        for (Complex alpha : {Complex(-1.3), Complex(0.4), Complex(d + 0.5, 0.7), Complex(-0.5, 2.0)}) {
            for (int M = std::max(0, int(std::ceil(d - alpha.real())) ); M <= 4; ++M) {
                IntegralControls a, b;
                a.M = M;
                b.M = M + 2;
                Complex va = barnes_zeta_integral(alpha, p, a).value;
                Complex vb = barnes_zeta_integral(alpha, p, b).value;
                CHECK(rel_err_strict(va, vb) < 1e-9);
                a.c = 1.0;
                b.c = 2.0;
                b.M = M;
                Complex ha = zeta_bh_integral(alpha, p.w, a).value;
                Complex hb = zeta_bh_integral(alpha, p.w, b).value;
                CHECK(rel_err_strict(ha, hb) < 1e-8);
            }
        }
    }
}

TEST_CASE("binomial identities hold exactly") {
    // coefficient of the formal symbol B_j(w) on each side
    auto fact = [](int n) { return Rational(factorial_exact(n)); };
    auto choose = [](int n, int k) { return binomial_exact(n, k); };
    for (int d = 1; d <= 8; ++d)
        for (int q = 1; q <= d; ++q) {
            const int n = d - q;
            for (int j = 0; j <= n; ++j) {
                // binom1: sum_k B_k(-1|w)/(k!(n-k)!) with B_k(-1|w) = sum_l C(k,l)(-1)^l B_{k-l}(w)
                Rational lhs1(0), lhs2(0);
                for (int k = j; k <= n; ++k) {
                    int l = k - j;
                    Rational coef = choose(k, l) * Rational(l % 2 ? -1 : 1) / (fact(k) * fact(n - k));
                    lhs1 += coef;
                    lhs2 += coef * harmonic(n - k);
                }
                Rational rhs1 = (j == n) ? Rational(1) / fact(n) : Rational(0);
                CHECK(lhs1 == rhs1);
                // binom2 + binom3: collapse to (-1)^{m+1}/(j! m! m), m = n - j
                int m = n - j;
                Rational rhs2 = (m == 0) ? Rational(0)
                                         : Rational(m % 2 ? 1 : -1) / (fact(j) * fact(m) * Rational(m));
                CHECK(lhs2 == rhs2);
                // full closed part of the unsimplified finite part vs the simplified one
                Rational un = Rational(n % 2 ? -1 : 1) * (lhs2 - harmonic(q - 1) * lhs1);
                Rational simp = (j == n) ? Rational((n + 1) % 2 ? -1 : 1) * harmonic(q - 1) / fact(n)
                                         : Rational((j + 1) % 2 ? -1 : 1) / (fact(j) * fact(m) * Rational(m));
                CHECK(un == simp);
            }
        }
    for (int m = 1; m <= 8; ++m) {
        Rational s(0);
        for (int l = 0; l < m; ++l) s += Rational(l % 2 ? -1 : 1) * harmonic(m - l) / (fact(m - l) * fact(l));
        CHECK(s == Rational(m % 2 ? 1 : -1) / (fact(m) * Rational(m)));
    }
}

TEST_CASE("residue extraction from the integral route") {
    for (const auto& p : {BarnesParams{0.7, kWsqrt2}, BarnesParams{0.9, kW3}}) {
        for (int q = 1; q <= int(p.dim()); ++q) {
            Complex res = residue(q, p);
            // symmetric pairs cancel the O(eps) finite-part term; then linear in eps^2
            auto sym = [&](double e) {
                return 0.5 * e * (barnes_zeta_integral(q + e, p).value - barnes_zeta_integral(q - e, p).value);
            };
            const double e1 = 1e-2, e2 = 1e-3;
            Complex r1 = sym(e1), r2 = sym(e2);
            Complex ext = r2 - (r1 - r2) * (e2 * e2) / (e1 * e1 - e2 * e2);
            CHECK(rel_err_strict(ext, res) < 1e-5);
        }
    }
}

TEST_CASE("integral agrees with series at regular alpha") {
    std::vector<BarnesParams> ps{{0.3, kW1}, {0.7, kWsqrt2}, {0.9, kW3}, {Complex(0.8, -0.3), {Complex(1.0, 0.2), 1.5}}};
    for (const auto& p : ps)
        for (Complex alpha : {Complex(-2.5), Complex(-0.7, 0.3), Complex(0.25), Complex(1.5, 1.0), Complex(4.2)}) {
            Complex vi = barnes_zeta_integral(alpha, p).value;
            Complex vs = barnes_zeta_series(alpha, p).value;
            CHECK(rel_err_strict(vi, vs) < 1e-8);
            Complex hi = zeta_bh_integral(alpha, p.w).value;
            Complex hs = zeta_bh_series(alpha, p.w).value;
            CHECK(rel_err_strict(hi, hs) < 1e-8);
        }
}

TEST_CASE("integrand regularity near t = 0") {
    const double t = 1e-6;
    for (const auto& w : {kW11, kW3}) {
        const int d = int(w.size());
        for (int M = 0; M <= 4; ++M) {
            Complex alpha(d + 0.5);
            // leading behaviour t^{alpha-1+M+1-d}
            double order = alpha.real() - d + M;
            auto f = detail::i_m_integrand(alpha, 0.9, w, M);
            CHECK(std::abs(f(t)) <= 10.0 * std::pow(t, order));
            auto g = detail::j_mc_integrand(alpha, w, M, 1.0);
            CHECK(std::abs(g(t)) <= 10.0 * std::pow(t, order));
        }
    }
    // a flipped sign in B_k(-c|w) would leave an O(t^{alpha-1-d}) residue
    auto g = detail::j_mc_integrand(2.5, kW11, 2, 1.0);
    CHECK(std::abs(g(1e-6)) < 1e-4);
}

TEST_CASE("series and closed branches of the integrands agree at the switch") {
    for (const auto& w : {kW11, kWsqrt2, kW3}) {
        double tmax = 0;
        for (auto x : w) tmax = std::max(tmax, std::abs(x));
        double ts = kPi / tmax;
        for (int M : {0, 2, 4}) {
            auto f = detail::i_m_integrand(Complex(1.3, 0.2), 0.7, w, M);
            Complex below = f(ts * (1 - 1e-14)), above = f(ts * (1 + 1e-14));
            CHECK(std::abs(below - above) <= 1e-10 * std::max(1e-3, std::abs(below)));
            auto g = detail::j_mc_integrand(Complex(1.3, 0.2), w, M, 1.0);
            below = g(ts * (1 - 1e-14));
            above = g(ts * (1 + 1e-14));
            CHECK(std::abs(below - above) <= 1e-10 * std::max(1e-3, std::abs(below)));
        }
    }
}
