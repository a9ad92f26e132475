#ifndef QSTAT_THERMO_HPP
#define QSTAT_THERMO_HPP

#include <stdexcept>

#include "qstat/equilibrium.hpp"
#include "qstat/stat_core.hpp"

// Response sums and thermodynamic coefficients of a solved state.
//
// With w_j = 1 / theta1_j taken over interior levels only,
//
//   A  = sum w_j                 A1 = sum theta_j w_j     A2 = sum theta_j^2 w_j
//   B  = sum w_j deps_j/dV       B1 = sum theta_j w_j deps_j/dV
//   D  = sum [ z_j n_j d2eps_j/dV2 + w_j (deps_j/dV)^2 / T ]
//
// where the z_j n_j d2eps/dV2 part of D runs over all occupied levels,
// pinned or not (pinned populations do not respond, dn_j = 0). From these:
//
//   C_V   = (A1^2 - A A2) / A
//   C_p   = C_V - (A B1 - A1 B)^2 / (A (B^2 - A D T))
//   alpha_p = -(A B1 - A1 B) / (V (B^2 - A D T))
//   gamma_T = -A T / (V (B^2 - A D T))
//   beta_V  = (A B1 - A1 B) / (p T A)
//
// theta1 < 0 makes A < 0 and the Cauchy-Schwarz inequality then gives
// C_V >= 0 with no absolute values inserted. A state with fewer than two
// interior levels cannot exchange particles between levels at fixed N, so
// its heat capacities, expansion and pressure coefficients vanish and the
// compressibility reduces to gamma_T = 1 / (V D) with D the pinned part.

namespace qstat {

struct thermo_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResponseSet {
    double a = 0.0;
    double a1 = 0.0;
    double a2 = 0.0;
    double b = 0.0;
    double b1 = 0.0;
    double d = 0.0;
    int active_count = 0;

    double cv = 0.0;
    double cp = 0.0;
    double alpha_p = 0.0;
    double gamma_t = 0.0;
    double beta_v = 0.0;
};

/// The six sums only (coefficients left zero).
ResponseSet response_sums(const EquilibriumState& state, const SystemSpec& system);

/// C_V and C_p from the sums. Throws thermo_error when the shared
/// denominator B^2 - A D T vanishes on an interior state.
void heat_capacities(ResponseSet& sums, double temperature);

/// alpha_p, gamma_T, beta_V. beta_V is NaN when p = 0 (flagged, not thrown).
void thermo_coefficients(ResponseSet& sums, double temperature, double volume,
                         double pressure);

/// Full evaluation: sums plus every coefficient.
ResponseSet evaluate(const EquilibriumState& state, const SystemSpec& system);

}  // namespace qstat

#endif
