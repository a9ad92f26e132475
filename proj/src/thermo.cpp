#include "qstat/thermo.hpp"

#include <cmath>
#include <limits>

namespace qstat {

namespace {

bool responds(const EquilibriumState& state, std::size_t j) {
    if (state.occupancies[j].pinned != Pinned::interior) return false;
    if (state.condensate_level && *state.condensate_level == j) return false;
    return true;
}

}  // namespace

ResponseSet response_sums(const EquilibriumState& state, const SystemSpec& system) {
    ResponseSet sums;
    const double T = state.temperature;
    for (std::size_t j = 0; j < state.occupancies.size(); ++j) {
        const Level& level = system.levels[j];
        const LevelOccupancy& occ = state.occupancies[j];
        const double de = level_energy_dV(level, system.volume, system.alpha);
        const double d2e = level_energy_d2V(level, system.volume, system.alpha);
        sums.d += level.z * occ.n * d2e;
        if (!responds(state, j)) continue;
        ++sums.active_count;
        const double w = 1.0 / occ.theta1;
        sums.a += w;
        sums.a1 += occ.theta * w;
        sums.a2 += occ.theta * occ.theta * w;
        sums.b += w * de;
        sums.b1 += occ.theta * w * de;
        if (T > 0.0) sums.d += w * de * de / T;
    }
    return sums;
}

void heat_capacities(ResponseSet& sums, double temperature) {
    if (sums.active_count <= 1) {
        // dn_j = 0 is forced on every level (conservation leaves a single
        // interior level no freedom), so no heat is absorbed.
        sums.cv = 0.0;
        sums.cp = 0.0;
        return;
    }
    const double den = sums.b * sums.b - sums.a * sums.d * temperature;
    if (den == 0.0) {
        throw thermo_error("heat_capacities: degenerate denominator B^2 - A D T");
    }
    sums.cv = (sums.a1 * sums.a1 - sums.a * sums.a2) / sums.a;
    const double cross = sums.a * sums.b1 - sums.a1 * sums.b;
    sums.cp = sums.cv - cross * cross / (sums.a * den);
}

void thermo_coefficients(ResponseSet& sums, double temperature, double volume,
                         double pressure) {
    if (sums.active_count == 0) {
        sums.alpha_p = 0.0;
        sums.beta_v = 0.0;
        // Populations are fixed, so p(V) = alpha E(V) / V with E ~ V^(-alpha):
        // the compressibility of the pinned gas is the A, B -> 0 limit 1 / (V D).
        sums.gamma_t = (sums.d != 0.0) ? 1.0 / (volume * sums.d)
                                       : std::numeric_limits<double>::quiet_NaN();
        return;
    }
    const double den = sums.b * sums.b - sums.a * sums.d * temperature;
    if (den == 0.0) {
        throw thermo_error("thermo_coefficients: degenerate denominator B^2 - A D T");
    }
    sums.gamma_t = -sums.a * temperature / (volume * den);
    if (sums.active_count == 1) {
        // A B1 - A1 B cancels exactly with one interior level.
        sums.alpha_p = 0.0;
        sums.beta_v = 0.0;
        return;
    }
    const double cross = sums.a * sums.b1 - sums.a1 * sums.b;
    sums.alpha_p = -cross / (volume * den);
    sums.beta_v = (pressure != 0.0)
                      ? cross / (pressure * temperature * sums.a)
                      : std::numeric_limits<double>::quiet_NaN();
}

ResponseSet evaluate(const EquilibriumState& state, const SystemSpec& system) {
    ResponseSet sums = response_sums(state, system);
    if (state.temperature <= 0.0) {
        // Closed-form ground states: all responses frozen. The sums already
        // omit the 1/T terms of D in this case.
        sums.active_count = 0;
        sums.a = sums.a1 = sums.a2 = sums.b = sums.b1 = 0.0;
    }
    heat_capacities(sums, state.temperature);
    thermo_coefficients(sums, state.temperature, system.volume, state.pressure);
    return sums;
}

}  // namespace qstat
