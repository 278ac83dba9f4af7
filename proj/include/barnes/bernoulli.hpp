#pragma once

#include "barnes/foundations.hpp"

namespace barnes {

inline constexpr int kBernoulliCap = 256;

struct BernoulliTable {
    std::vector<Complex> w;
    int N = 0;
    std::vector<Complex> numbers;  // B_0(w) .. B_N(w)
};

// Classical B_n / n! (z/(e^z-1) convention, B_1 = -1/2), n = 0..N.
const std::vector<double>& classical_bernoulli_scaled(int N);
// Exact classical B_n for n <= 64, as a double.
double classical_bernoulli(int n);
// Same in long double; scaled gives B_n / n!.
long double classical_bernoulli_ld(int n, bool scaled = false);

BernoulliTable bernoulli_numbers(std::span<const Complex> w, int N);

// Taylor coefficients B_n(w)/n! of prod w_i z/(e^{w_i z}-1); no factorial overflow.
std::vector<Complex> bernoulli_scaled(std::span<const Complex> w, int N);
// B_n(a|w)/n!, n = 0..N
std::vector<Complex> bernoulli_poly_scaled(int N, Complex a, std::span<const Complex> w);

Complex bernoulli_poly(int n, Complex a, std::span<const Complex> w);

// _dS_m^(d)(0)
Complex bernoullian_dS(int m, std::span<const Complex> w);

}  // namespace barnes
