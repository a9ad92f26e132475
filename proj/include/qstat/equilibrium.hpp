#ifndef QSTAT_EQUILIBRIUM_HPP
#define QSTAT_EQUILIBRIUM_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qstat/stat_core.hpp"

// Equilibrium solver: finds mu such that theta_j(n_j) = (eps_j - mu)/T on
// every active level together with particle conservation N = sum z_j n_j.
// Levels whose equation has no interior solution are pinned at a boundary
// (empty, or full for fermions) under the complementarity conditions
//
//   at_empty: (eps_j - mu)/T >= theta_j(0)
//   at_full:  (eps_j - mu)/T <= theta_j(1)   (Fermi only)
//
// which reproduce the onset/completion switching temperatures exactly.

namespace qstat {

struct solver_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EquilibriumState {
    double temperature = 0.0;
    double mu = 0.0;
    // In a fully pinned state mu is only constrained to an interval;
    // mu then holds the midpoint and mu_indeterminate is set.
    bool mu_indeterminate = false;
    double mu_lo = 0.0;
    double mu_hi = 0.0;
    std::vector<LevelOccupancy> occupancies;
    double entropy = 0.0;
    double energy = 0.0;
    double pressure = 0.0;
    int active_count = 0;
    // Bose level with z == 1 absorbing the conservation residue at mu == eps.
    // Such a level carries particles but no entropy and no response.
    std::optional<std::size_t> condensate_level;
};

/// Populations for prescribed (mu, T): inverts theta on each level or pins
/// it at a boundary. Throws solver_error when a Bose level with z > 1 has
/// mu >= eps_j (no finite population solves the level equation).
std::vector<LevelOccupancy> populations_at(double mu, double temperature,
                                           const SystemSpec& system);

/// Full canonical solve at temperature T > 0.
EquilibriumState solve_mu(double temperature, const SystemSpec& system);

/// Analytic T = 0 state: levels filled in energy order (Fermi capped at z).
EquilibriumState ground_state(const SystemSpec& system);

/// T -> infinity populations: common theta value c with theta_j(n_j) = c on
/// every unpinned level and sum z_j n_j = N, solved by one-dimensional
/// root-finding in c with boundary clamping (so limiting pinned states are
/// returned as such).
std::vector<double> high_temperature_limit(const SystemSpec& system);

/// Entropy, energy and pressure of a resolved set of populations.
void state_observables(EquilibriumState& state, const SystemSpec& system);

/// Inverse occupation function: the n with theta(z, n) = x, assuming x lies
/// strictly inside the range of theta. Searches n in [0, n_cap] for Bose
/// (pass +infinity for an uncapped search).
double invert_theta(Statistics kind, double z, double x, double n_cap);

}  // namespace qstat

#endif
