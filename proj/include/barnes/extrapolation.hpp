#pragma once

#include <vector>

#include "barnes/foundations.hpp"

namespace barnes {

// Neville table for polynomial extrapolation to h = 0. Row i holds the
// extrapolants of order i; the last row has a single entry.
template <class T>
std::vector<std::vector<T>> neville_to_zero(const std::vector<double>& h, const std::vector<T>& v) {
    std::vector<std::vector<T>> tab{v};
    for (std::size_t j = 1; j < v.size(); ++j) {
        const auto& prev = tab.back();
        std::vector<T> row;
        for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
            double hi = h[i], hj = h[i + j];
            row.push_back((hi * prev[i + 1] - hj * prev[i]) / (hi - hj));
        }
        tab.push_back(row);
    }
    return tab;
}

// S(R_i), R_{i+1} = 2 R_i, with S(R) = S + sum_j c_j R^{-p_j}; eliminates p_0, p_1, ... in turn.
struct RichardsonOutcome {
    Complex value;
    double error;
};
RichardsonOutcome richardson_doubling(const std::vector<Complex>& s, const std::vector<Complex>& p);

}  // namespace barnes
