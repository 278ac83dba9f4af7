#include "doctest.h"

#include "barnes/combinatorics.hpp"
#include "test_util.hpp"

using namespace barnes;

TEST_CASE("f_symbol examples") {
    std::mt19937_64 g(3);
    for (int d = 1; d <= 4; ++d) {
        auto w = testutil::rand_weights(g, d);
        Complex a = testutil::rand_complex(g, 0.1, 2, 1);
        Complex f1 = f_symbol([](Complex) { return Complex(1.0); }, a, w);
        CHECK(std::abs(f1 - ((d - 1) % 2 == 0 ? 1.0 : -1.0)) < 1e-15);
        for (int l = 1; l <= d - 1; ++l) {
            Complex v = f_symbol([l](Complex x) { return std::pow(x, l); }, 0.0, w);
            CHECK(std::abs(v) < 1e-13);
        }
    }
    std::vector<Complex> w1{Complex(1.5, 0.2)};
    auto f = [](Complex x) { return std::exp(x) * x; };
    CHECK(f_symbol(f, 0.3, w1) == f(0.3 + w1[0]));
}

TEST_CASE("f_symbol attaches the offending subset") {
    std::vector<Complex> w{1.0, 2.0};
    try {
        f_symbol([](Complex x) -> Complex {
            if (std::abs(x - 3.0) < 1e-12) throw std::runtime_error("boom");
            return x;
        }, 0.0, w);
        FAIL("expected throw");
    } catch (const BarnesError& e) {
        CHECK(std::string(e.what()).find("{1,2}") != std::string::npos);
    }
}

TEST_CASE("subset order is size then lexicographic") {
    auto m = ordered_masks(3);
    std::vector<std::uint32_t> expect{0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111};
    CHECK(m == expect);
}

TEST_CASE("g_symbol examples") {
    std::mt19937_64 g(5);
    for (int d = 1; d <= 4; ++d) {
        auto w = testutil::rand_weights(g, d);
        Complex c = testutil::rand_complex(g, -2, 2, 2);
        CHECK(std::abs(g_symbol([](Complex) { return Complex(2.5, -1); }, c, w)) < 1e-14);
        double scale = std::abs(c);
        for (auto x : w) scale += std::abs(x);
        for (int n = 0; n < d; ++n) {
            Complex v = g_symbol([n](Complex x) { return std::pow(x, n); }, c, w);
            CHECK(std::abs(v) <= 1e-12 * std::pow(scale, d));
        }
        Complex vd = g_symbol([d](Complex x) { return std::pow(x, d); }, c, w);
        CHECK(std::abs(vd - factorial(d) * prod(w)) <= 1e-12 * std::pow(scale, d));
    }
}

TEST_CASE("bracket_sum examples") {
    LatticeFn u1 = [](const IndexVector& n) { return Complex(std::exp(0.3 * n[0])); };
    CHECK(std::abs(bracket_sum(u1, {2}, {3}) - (std::exp(1.5) - std::exp(0.6))) < 1e-14);
    LatticeFn u2 = [](const IndexVector& n) { return Complex(double(n[0] * n[1])); };
    CHECK(bracket_sum(u2, {0, 0}, {0, 0}) == Complex(0.0));
    CHECK(bracket_sum(u2, {0, 0}, {1, 1}) == Complex(1.0));
}

TEST_CASE("cube_bracket_sum examples") {
    LatticeFn u1 = [](const IndexVector& n) { return Complex(std::sin(0.7 * n[0]) + n[0] * n[0]); };
    for (int M = 0; M <= 6; ++M) {
        auto s = cube_bracket_sum_sides(u1, M, 1);
        CHECK(std::abs(s.lhs - (u1({M + 1}) - u1({0}))) < 1e-12);
        CHECK(std::abs(s.rhs - (u1({M + 1}) - u1({0}))) < 1e-12);
    }
    LatticeFn u2 = [](const IndexVector& n) { return Complex(std::exp(0.1 * n[0] + 0.2 * n[1])); };
    auto s2 = cube_bracket_sum_sides(u2, 3, 2);
    CHECK(std::abs(s2.lhs - s2.rhs) < 1e-12);
    LatticeFn u3 = [](const IndexVector& n) {
        return Complex(1.0 + 2.0 * n[0] - n[1] * n[2] + 0.5 * n[0] * n[0] * n[2]);
    };
    auto s3 = cube_bracket_sum_sides(u3, 2, 3);
    CHECK(std::abs(s3.lhs - s3.rhs) < 1e-12);
    CHECK_THROWS_AS(cube_bracket_sum_sides(u3, 300, 3, 1e6), ResourceError);
}

TEST_CASE("shell decomposition") {
    std::mt19937_64 g(9);
    for (int d = 1; d <= 4; ++d) {
        std::vector<double> c(d);
        for (auto& x : c) x = std::uniform_real_distribution<double>(-0.3, 0.3)(g);
        LatticeFn u = [c](const IndexVector& n) {
            double s = 0, p = 1;
            for (std::size_t i = 0; i < n.size(); ++i) {
                s += c[i] * n[i];
                p *= 1.0 + n[i];
            }
            return Complex(std::exp(s) * p, std::cos(s));
        };
        IndexVector one(d, 1), zero(d, 0);
        for (int k = 0; k <= 4; ++k) {
            Complex shell(0.0);
            for (const auto& n : shell_indices(k, d)) shell += bracket_sum(u, n, one);
            Complex rhs = bracket_sum(u, zero, IndexVector(d, k + 1)) - bracket_sum(u, zero, IndexVector(d, k));
            CHECK(std::abs(shell - rhs) < 1e-10 * (1 + std::abs(rhs)));
        }
    }
}

TEST_CASE("cube_indices and shells") {
    auto c0 = cube_indices(0, 3, false);
    REQUIRE(c0.size() == 1);
    CHECK(c0[0] == IndexVector{0, 0, 0});
    auto c1 = cube_indices(1, 2, true);
    CHECK(c1 == std::vector<IndexVector>{{0, 1}, {1, 0}, {1, 1}});
    CHECK(shell_indices(1, 2).size() == 3);
    for (int d = 1; d <= 4; ++d)
        for (int k = 0; k <= 5; ++k) {
            auto s = shell_indices(k, d);
            CHECK(double(s.size()) == std::pow(k + 1, d) - std::pow(k, d) + (k == 0 ? 0 : 0));
            for (auto& n : s) CHECK(*std::max_element(n.begin(), n.end()) == k);
            CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
        }
}

TEST_CASE("bracket/G bridge") {
    std::mt19937_64 g(13);
    for (int d = 1; d <= 3; ++d) {
        auto w = testutil::rand_weights(g, d);
        Complex a = testutil::rand_complex(g, 0.2, 1.5, 0.3);
        auto f = [](Complex x) { return std::pow(x, 1.5) * std::log(x); };
        LatticeFn u = [&](const IndexVector& n) {
            Complex A = a;
            for (int i = 0; i < d; ++i) A += double(n[i]) * w[i];
            return f(A);
        };
        IndexVector n(d);
        for (int i = 0; i < d; ++i) n[i] = i + 1;
        Complex A = a;
        for (int i = 0; i < d; ++i) A += double(n[i]) * w[i];
        Complex lhs = g_symbol(f, A, w);
        Complex rhs = bracket_sum(u, n, IndexVector(d, 1));
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1 + std::abs(lhs)));
    }
}

TEST_CASE("g_power_values matches direct G[x^j]") {
    std::vector<Complex> w{0.9, Complex(1.3, 0.4), 0.6};
    auto gv = g_power_values(w, 12);
    for (int j = 0; j <= 12; ++j) {
        Complex direct = g_symbol([j](Complex x) { return j == 0 ? Complex(1.0) : std::pow(x, j); }, 0.0, w);
        CHECK(std::abs(gv[j] - direct) < 1e-12 * (1 + std::abs(direct)));
    }
    CHECK(std::abs(gv[3] - 6.0 * prod(w)) < 1e-13);
}
