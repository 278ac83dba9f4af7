#pragma once

#include <cstdint>
#include <functional>

#include "barnes/foundations.hpp"

namespace barnes {

using IndexVector = std::vector<int>;
using ScalarFn = std::function<Complex(Complex)>;
using LatticeFn = std::function<Complex(const IndexVector&)>;

// Nonempty subsets of {0..d-1}, ordered by size then lexicographically.
struct SubsetTable {
    int d = 0;
    std::vector<std::uint32_t> masks;
    std::vector<int> sizes;
    std::vector<Complex> sums;  // sum_{i in S} w_i
    std::vector<int> signs;     // (-1)^{d-|S|}
};
SubsetTable make_subsets(std::span<const Complex> w);
std::vector<std::uint32_t> ordered_masks(int d);

Complex f_symbol(const ScalarFn& f, Complex a, std::span<const Complex> w);
Complex g_symbol(const ScalarFn& f, Complex a, std::span<const Complex> w);

Complex bracket_sum(const LatticeFn& u, const IndexVector& n, const IndexVector& v);

struct CubeBracketSides {
    Complex lhs;
    Complex rhs;
};
Complex cube_bracket_sum(const LatticeFn& u, int M, int d);
CubeBracketSides cube_bracket_sum_sides(const LatticeFn& u, int M, int d,
                                        double budget = 1e7);

std::vector<IndexVector> cube_indices(int M, int d, bool exclude_origin);
std::vector<IndexVector> shell_indices(int k, int d);
// Visit S_k without materializing it. Order is deterministic.
void for_each_shell_point(int k, int d, const std::function<void(const IndexVector&)>& fn);

// G[x^j]_{x=w} for j = 0..J, via binomial convolution of the sequences w_i^j (j >= 1).
std::vector<Complex> g_power_values(std::span<const Complex> w, int J);

}  // namespace barnes
