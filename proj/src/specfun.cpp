#include "qstat/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qstat {

namespace {

constexpr double half_ln_two_pi = 0.91893853320467274178032973640562;

// Stirling series coefficients B_2k / (2k (2k-1)) for ln Gamma.
constexpr double lgamma_coeff[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
};

// B_2k / (2k) for digamma.
constexpr double psi_coeff[] = {
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
};

// B_2k for trigamma.
constexpr double psi1_coeff[] = {
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
};

constexpr double asymptotic_cutoff = 10.0;

void require_positive(double x, const char* fn) {
    if (!(x > 0.0)) {
        throw std::domain_error(std::string(fn) + ": argument must be positive");
    }
}

}  // namespace

double ln_gamma(double x) {
    require_positive(x, "ln_gamma");
    // Raise into the asymptotic regime: ln Gamma(x) = ln Gamma(x+m) - sum ln(x+k).
    double shift = 0.0;
    while (x < asymptotic_cutoff) {
        shift += std::log(x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double p = inv;
    for (double c : lgamma_coeff) {
        series += c * p;
        p *= inv2;
    }
    return (x - 0.5) * std::log(x) - x + half_ln_two_pi + series - shift;
}

double digamma(double x) {
    require_positive(x, "digamma");
    // psi(x) = psi(x+m) - sum 1/(x+k), then the asymptotic expansion
    // psi(y) = ln y - 1/(2y) - sum B_2k / (2k y^2k).
    double shift = 0.0;
    while (x < asymptotic_cutoff) {
        shift += 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double p = inv2;
    for (double c : psi_coeff) {
        series += c * p;
        p *= inv2;
    }
    return std::log(x) - 0.5 * inv - series - shift;
}

double trigamma(double x) {
    require_positive(x, "trigamma");
    // psi'(x) = psi'(x+m) + sum 1/(x+k)^2, then
    // psi'(y) = 1/y + 1/(2y^2) + sum B_2k / y^(2k+1).
    double shift = 0.0;
    while (x < asymptotic_cutoff) {
        shift += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double p = inv2 * inv;
    for (double c : psi1_coeff) {
        series += c * p;
        p *= inv2;
    }
    return inv + 0.5 * inv2 + series + shift;
}

}  // namespace qstat
