#ifndef QSTAT_QUADRATURE_HPP
#define QSTAT_QUADRATURE_HPP

#include <stdexcept>

#include "qstat/stat_core.hpp"

// Independent integral-representation evaluator for the occupation
// functions. The occupation function and its derivative admit the
// representations
//
//   theta_B(n)     =  int_0^inf e^(-z n t) (1 - e^(-(z-1) t)) / (e^t - 1) dt
//   theta_B^(1)(n) = -int_0^inf t e^(-z n t) (1 - e^(-(z-1) t)) / (e^t - 1) dt
//   theta_F(n)     =  int_0^inf (e^(-z n t) - e^(-z (1-n) t)) / (e^t - 1) dt
//   theta_F^(1)(n) = -int_0^inf t (e^(-z n t) + e^(-z (1-n) t)) / (e^t - 1) dt
//
// evaluated by adaptive quadrature, split at t = 1 with the substitution
// u = e^(-t) on the tail. This is a validation oracle for the closed
// digamma/trigamma forms in stat_core; production code paths never call it.

namespace qstat {

struct quadrature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// order 0 gives theta, order 1 gives theta^(1). Absolute error <= 1e-9.
double theta_integral_oracle(Statistics kind, double z, double n, int order);

}  // namespace qstat

#endif
