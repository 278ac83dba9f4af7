#include "barnes/extrapolation.hpp"

#include <cmath>

namespace barnes {

RichardsonOutcome richardson_doubling(const std::vector<Complex>& s, const std::vector<Complex>& p) {
    std::vector<Complex> cur = s;
    std::vector<Complex> diag{cur.back()};
    for (std::size_t j = 0; j + 1 < s.size() && j < p.size(); ++j) {
        Complex f = std::exp(p[j] * std::log(2.0));
        std::vector<Complex> next;
        for (std::size_t i = 1; i < cur.size(); ++i) next.push_back((f * cur[i] - cur[i - 1]) / (f - 1.0));
        cur = next;
        diag.push_back(cur.back());
    }
    RichardsonOutcome r;
    r.value = diag.back();
    r.error = diag.size() >= 2 ? std::abs(diag.back() - diag[diag.size() - 2]) : std::abs(r.value);
    return r;
}

}  // namespace barnes
