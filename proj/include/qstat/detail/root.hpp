#ifndef QSTAT_DETAIL_ROOT_HPP
#define QSTAT_DETAIL_ROOT_HPP

#include <cmath>
#include <stdexcept>

namespace qstat::detail {

struct root_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bisection-safeguarded Newton for a strictly decreasing f on [lo, hi]
// with f(lo) >= 0 >= f(hi). Newton steps that leave the bracket, or fail
// to shrink the residual, fall back to bisection; convergence is
// guaranteed by the bracket. Returns x with |f(x)| <= tol or the bracket
// collapsed to rounding.
template <typename F, typename DF>
double newton_bisect_decreasing(F f, DF df, double lo, double hi, double tol,
                                int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo < 0.0 || fhi > 0.0) {
        throw root_error("newton_bisect: root not bracketed");
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < max_iter; ++it) {
        const double fx = f(x);
        if (std::abs(fx) <= tol) return x;
        if (fx > 0.0) lo = x; else hi = x;
        const double d = df(x);
        double next = x - fx / d;
        if (!(d < 0.0) || !(next > lo) || !(next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (next == x || hi - lo <= 4.0 * std::abs(x) * 1e-17) {
            return x;
        }
        x = next;
    }
    return x;
}

}  // namespace qstat::detail

#endif
