#pragma once

#include "barnes/foundations.hpp"

namespace barnes::special {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kLog2Pi = 1.83787706640934548356;

// sin(pi z), cos(pi z) with exact zeros at integers
Complex sinpi(Complex z);
Complex cospi(Complex z);

Complex lgamma(Complex z);  // log Gamma, Re z >= 1/2 principal; reflected otherwise
Complex gamma(Complex z);
Complex rgamma(Complex z);  // 1/Gamma, entire
Complex digamma(Complex z);

Complex expm1(Complex z);
Complex log1p(Complex z);

// Gamma(x + j) / Gamma(x) for integer j (rational function of x)
Complex gamma_ratio(Complex x, int j);

}  // namespace barnes::special
