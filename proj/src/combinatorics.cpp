#include "barnes/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace barnes {

std::vector<std::uint32_t> ordered_masks(int d) {
    if (d < 1 || d > 16) throw DimensionError("subset enumeration supports 1 <= d <= 16");
    std::vector<std::uint32_t> masks;
    for (std::uint32_t m = 1; m < (1u << d); ++m) masks.push_back(m);
    auto members = [d](std::uint32_t m) {
        std::vector<int> v;
        for (int i = 0; i < d; ++i)
            if (m & (1u << i)) v.push_back(i);
        return v;
    };
    std::sort(masks.begin(), masks.end(), [&](std::uint32_t x, std::uint32_t y) {
        int cx = std::popcount(x), cy = std::popcount(y);
        if (cx != cy) return cx < cy;
        return members(x) < members(y);
    });
    return masks;
}

SubsetTable make_subsets(std::span<const Complex> w) {
    SubsetTable t;
    t.d = static_cast<int>(w.size());
    t.masks = ordered_masks(t.d);
    for (auto m : t.masks) {
        Complex s(0.0, 0.0);
        for (int i = 0; i < t.d; ++i)
            if (m & (1u << i)) s += w[i];
        int sz = std::popcount(m);
        t.sums.push_back(s);
        t.sizes.push_back(sz);
        t.signs.push_back(((t.d - sz) % 2 == 0) ? 1 : -1);
    }
    return t;
}

namespace {
std::string describe(std::uint32_t m, int d) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (int i = 0; i < d; ++i)
        if (m & (1u << i)) {
            os << (first ? "" : ",") << (i + 1);
            first = false;
        }
    os << "}";
    return os.str();
}
}  // namespace

Complex f_symbol(const ScalarFn& f, Complex a, std::span<const Complex> w) {
    auto t = make_subsets(w);
    CompensatedSum<Complex> acc;
    for (std::size_t i = 0; i < t.masks.size(); ++i) {
        Complex v;
        try {
            v = f(a + t.sums[i]);
        } catch (const std::exception& e) {
            throw BarnesError("F-symbol evaluation failed at subset " + describe(t.masks[i], t.d) +
                              ": " + e.what());
        }
        acc += double(t.signs[i]) * v;
    }
    return acc.value();
}

Complex g_symbol(const ScalarFn& f, Complex a, std::span<const Complex> w) {
    const int d = static_cast<int>(w.size());
    Complex fa;
    try {
        fa = f(a);
    } catch (const std::exception& e) {
        throw BarnesError(std::string("G-symbol evaluation failed at subset {}: ") + e.what());
    }
    CompensatedSum<Complex> acc;
    acc += (d % 2 == 0 ? 1.0 : -1.0) * fa;
    acc += f_symbol(f, a, w);
    return acc.value();
}

Complex bracket_sum(const LatticeFn& u, const IndexVector& n, const IndexVector& v) {
    const int d = static_cast<int>(n.size());
    if (static_cast<int>(v.size()) != d) throw DimensionError("bracket_sum: dimension mismatch");
    CompensatedSum<Complex> acc;
    IndexVector p(d);
    for (std::uint32_t m = 0; m < (1u << d); ++m) {
        for (int i = 0; i < d; ++i) p[i] = n[i] + ((m & (1u << i)) ? v[i] : 0);
        int sz = std::popcount(m);
        acc += ((d - sz) % 2 == 0 ? 1.0 : -1.0) * u(p);
    }
    return acc.value();
}

Complex cube_bracket_sum(const LatticeFn& u, int M, int d) {
    if (M < 0) throw DomainError("cube_bracket_sum: M >= 0 required");
    return bracket_sum(u, IndexVector(d, 0), IndexVector(d, M + 1));
}

CubeBracketSides cube_bracket_sum_sides(const LatticeFn& u, int M, int d, double budget) {
    if (M < 0) throw DomainError("cube_bracket_sum: M >= 0 required");
    if (std::pow(double(M + 1), d) > budget)
        throw ResourceError("cube_bracket_sum: explicit side exceeds point budget");
    CompensatedSum<Complex> lhs;
    IndexVector one(d, 1);
    for (const auto& n : cube_indices(M, d, false)) lhs += bracket_sum(u, n, one);
    return {lhs.value(), cube_bracket_sum(u, M, d)};
}

std::vector<IndexVector> cube_indices(int M, int d, bool exclude_origin) {
    if (M < 0) throw DomainError("cube_indices: M >= 0 required");
    std::vector<IndexVector> out;
    IndexVector n(d, 0);
    while (true) {
        bool origin = std::all_of(n.begin(), n.end(), [](int x) { return x == 0; });
        if (!(exclude_origin && origin)) out.push_back(n);
        int i = d - 1;
        while (i >= 0 && n[i] == M) n[i--] = 0;
        if (i < 0) break;
        ++n[i];
    }
    return out;
}

void for_each_shell_point(int k, int d, const std::function<void(const IndexVector&)>& fn) {
    if (k == 0) {
        fn(IndexVector(d, 0));
        return;
    }
    // first coordinate equal to k is at position j: earlier ones in [0,k-1], later in [0,k]
    IndexVector n(d);
    for (int j = 0; j < d; ++j) {
        std::fill(n.begin(), n.end(), 0);
        n[j] = k;
        while (true) {
            fn(n);
            int i = d - 1;
            while (i >= 0) {
                if (i == j) {
                    --i;
                    continue;
                }
                int hi = i < j ? k - 1 : k;
                if (n[i] < hi) break;
                n[i] = 0;
                --i;
            }
            if (i < 0) break;
            ++n[i];
        }
    }
}

std::vector<IndexVector> shell_indices(int k, int d) {
    std::vector<IndexVector> out;
    for_each_shell_point(k, d, [&](const IndexVector& n) { out.push_back(n); });
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Complex> g_power_values(std::span<const Complex> w, int J) {
    // e.g.f. of prod (e^{w_i t} - 1); coefficient j gives G[x^j]
    std::vector<Complex> acc(J + 1, Complex(0.0, 0.0)), next(J + 1), one(J + 1);
    acc[0] = 1.0;
    std::vector<std::vector<double>> C(J + 1);
    for (int j = 0; j <= J; ++j) {
        C[j].resize(j + 1);
        C[j][0] = C[j][j] = 1.0;
        for (int k = 1; k < j; ++k) C[j][k] = C[j - 1][k - 1] + C[j - 1][k];
    }
    for (const Complex& wi : w) {
        one[0] = 0.0;
        Complex p(1.0, 0.0);
        for (int j = 1; j <= J; ++j) {
            p *= wi;
            one[j] = p;
        }
        for (int j = 0; j <= J; ++j) {
            Complex s(0.0, 0.0);
            for (int k = 0; k < j; ++k) s += C[j][k] * acc[k] * one[j - k];
            next[j] = s;
        }
        acc.swap(next);
    }
    return acc;
}

}  // namespace barnes
