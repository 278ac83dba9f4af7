#include "barnes/special.hpp"

#include <cmath>

namespace barnes::special {

namespace {

// B_{2k} / (2k (2k-1)), k = 1..10
constexpr double kStirling[] = {
    1.0 / 12.0,          -1.0 / 360.0,       1.0 / 1260.0,         -1.0 / 1680.0,
    1.0 / 1188.0,        -691.0 / 360360.0,  1.0 / 156.0,          -3617.0 / 122400.0,
    43867.0 / 244188.0,  -174611.0 / 125400.0};

// B_{2k} / (2k), k = 1..10
constexpr double kDigammaAsym[] = {
    1.0 / 12.0,     -1.0 / 120.0,         1.0 / 252.0,     -1.0 / 240.0,
    1.0 / 132.0,    -691.0 / 32760.0,     1.0 / 12.0,      -3617.0 / 8160.0,
    43867.0 / 14364.0, -174611.0 / 6600.0};

void sincospi_real(double x, double& s, double& c) {
    double r = x - 2.0 * std::round(x / 2.0);  // r in [-1, 1]
    // exact at half-integers and integers
    if (r == 0.0) { s = 0; c = 1; return; }
    if (r == 0.5) { s = 1; c = 0; return; }
    if (r == -0.5) { s = -1; c = 0; return; }
    if (r == 1.0 || r == -1.0) { s = 0; c = -1; return; }
    s = std::sin(kPi * r);
    c = std::cos(kPi * r);
}

Complex lgamma_shifted(Complex z) {
    // z with Re z >= 0.5
    Complex shift(0.0, 0.0);
    while (std::abs(z) < 15.0 || z.real() < 10.0) {
        shift += std::log(z);
        z += 1.0;
    }
    Complex inv = 1.0 / z, inv2 = inv * inv;
    Complex series(0.0, 0.0), p = inv;
    for (double c : kStirling) {
        series += c * p;
        p *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * kLog2Pi + series - shift;
}

}  // namespace

Complex sinpi(Complex z) {
    double s, c;
    sincospi_real(z.real(), s, c);
    double y = kPi * z.imag();
    return {s * std::cosh(y), c * std::sinh(y)};
}

Complex cospi(Complex z) {
    double s, c;
    sincospi_real(z.real(), s, c);
    double y = kPi * z.imag();
    return {c * std::cosh(y), -s * std::sinh(y)};
}

Complex lgamma(Complex z) {
    if (z.real() < 0.5) return std::log(kPi) - std::log(sinpi(z)) - lgamma_shifted(1.0 - z);
    return lgamma_shifted(z);
}

Complex gamma(Complex z) {
    if (z.real() < 0.5) {
        Complex s = sinpi(z);
        if (s == Complex(0.0, 0.0)) return {std::numeric_limits<double>::infinity(), 0.0};
        return kPi / (s * std::exp(lgamma_shifted(1.0 - z)));
    }
    return std::exp(lgamma_shifted(z));
}

Complex rgamma(Complex z) {
    if (z.real() < 0.5) return sinpi(z) * std::exp(lgamma_shifted(1.0 - z)) / kPi;
    return std::exp(-lgamma_shifted(z));
}

Complex digamma(Complex z) {
    if (z.real() < 0.5) return digamma(1.0 - z) - kPi * cospi(z) / sinpi(z);
    Complex shift(0.0, 0.0);
    while (std::abs(z) < 15.0 || z.real() < 10.0) {
        shift += 1.0 / z;
        z += 1.0;
    }
    Complex inv = 1.0 / z, inv2 = inv * inv;
    Complex series(0.0, 0.0), p = inv2;
    for (double c : kDigammaAsym) {
        series += c * p;
        p *= inv2;
    }
    return std::log(z) - 0.5 * inv - series - shift;
}

Complex expm1(Complex z) {
    double x = z.real(), y = z.imag();
    double em1 = std::expm1(x);
    double sh = std::sin(0.5 * y);
    return {em1 * std::cos(y) - 2.0 * sh * sh, std::exp(x) * std::sin(y)};
}

Complex log1p(Complex z) {
    Complex u = 1.0 + z;
    if (u == Complex(1.0, 0.0)) return z;
    return std::log(u) * z / (u - 1.0);
}

Complex gamma_ratio(Complex x, int j) {
    Complex r(1.0, 0.0);
    if (j >= 0) {
        for (int i = 0; i < j; ++i) r *= x + double(i);
    } else {
        for (int i = 1; i <= -j; ++i) r *= x - double(i);
        r = 1.0 / r;
    }
    return r;
}

}  // namespace barnes::special
