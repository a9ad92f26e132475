#ifndef QSTAT_SPECFUN_HPP
#define QSTAT_SPECFUN_HPP

// Log-gamma, digamma and trigamma for positive real arguments.
// Self-contained shift-and-asymptotic-series evaluation: the argument is
// raised by recurrence until the Bernoulli asymptotic expansion applies.
// Negative arguments are a domain error by design; nothing in this
// project ever needs the reflection branch.

namespace qstat {

// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// ln Gamma(x) for x > 0. Throws std::domain_error for x <= 0.
double ln_gamma(double x);

/// psi(x) = d ln Gamma(x) / dx for x > 0. Throws std::domain_error for x <= 0.
double digamma(double x);

/// psi'(x) = d^2 ln Gamma(x) / dx^2 for x > 0. Throws std::domain_error for x <= 0.
double trigamma(double x);

}  // namespace qstat

#endif
