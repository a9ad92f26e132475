#include "qstat/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qstat/detail/root.hpp"
#include "qstat/specfun.hpp"

namespace qstat {

namespace {

constexpr double theta_residual_tol = 1e-13;
constexpr double bracket_width_in_T = 50.0;

double conservation_tol(double n_total) {
    return 1e-10 * std::max(1.0, n_total);
}

LevelOccupancy make_occupancy(Statistics kind, double z, double n, Pinned pinned) {
    LevelOccupancy occ;
    occ.n = n;
    occ.pinned = pinned;
    occ.theta = theta(kind, z, n);
    occ.theta1 = theta_deriv(kind, z, n);
    return occ;
}

// Population of a single level for reduced driving value x = (eps - mu)/T,
// with the Bose search capped at n_cap.
LevelOccupancy level_population(Statistics kind, double z, double x, double n_cap) {
    if (kind == Statistics::fermi) {
        if (x >= theta_fermi(z, 0.0)) return make_occupancy(kind, z, 0.0, Pinned::at_empty);
        if (x <= theta_fermi(z, 1.0)) return make_occupancy(kind, z, 1.0, Pinned::at_full);
        return make_occupancy(kind, z, invert_theta(kind, z, x, n_cap), Pinned::interior);
    }
    if (z == 1.0) {
        // theta vanishes identically: no interior solution exists unless
        // mu == eps. solve_mu treats that case separately.
        if (x < 0.0) throw solver_error("populations_at: mu above a Bose z=1 level");
        return make_occupancy(kind, z, 0.0, Pinned::at_empty);
    }
    if (x <= 0.0) {
        throw solver_error("populations_at: mu >= eps on an active Bose level");
    }
    if (x >= theta_bose(z, 0.0)) return make_occupancy(kind, z, 0.0, Pinned::at_empty);
    return make_occupancy(kind, z, invert_theta(kind, z, x, n_cap), Pinned::interior);
}

std::vector<LevelOccupancy> populations_capped(double mu, double temperature,
                                               const SystemSpec& system, double n_cap) {
    std::vector<LevelOccupancy> occ;
    occ.reserve(system.levels.size());
    for (const Level& level : system.levels) {
        const double eps = level_energy(level, system.volume, system.alpha);
        const double x = (eps - mu) / temperature;
        occ.push_back(level_population(system.statistics, level.z, x, n_cap));
    }
    return occ;
}

double total_particles(const SystemSpec& system, const std::vector<LevelOccupancy>& occ) {
    double total = 0.0;
    for (std::size_t j = 0; j < occ.size(); ++j) {
        total += system.levels[j].z * occ[j].n;
    }
    return total;
}

int count_active(const std::vector<LevelOccupancy>& occ) {
    int active = 0;
    for (const LevelOccupancy& o : occ) {
        if (o.pinned == Pinned::interior) ++active;
    }
    return active;
}

// mu interval of a fully pinned state, from the complementarity bounds.
void pinned_mu_interval(const SystemSpec& system, const std::vector<LevelOccupancy>& occ,
                        double temperature, EquilibriumState& state) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < occ.size(); ++j) {
        const double eps = level_energy(system.levels[j], system.volume, system.alpha);
        const double z = system.levels[j].z;
        if (occ[j].pinned == Pinned::at_empty) {
            hi = std::min(hi, eps - temperature * theta(system.statistics, z, 0.0));
        } else if (occ[j].pinned == Pinned::at_full) {
            lo = std::max(lo, eps - temperature * theta_fermi(z, 1.0));
        }
    }
    state.mu_lo = lo;
    state.mu_hi = hi;
    if (std::isinf(hi)) {
        state.mu = lo;  // every level full: only a lower bound exists
    } else if (std::isinf(lo)) {
        state.mu = hi;
    } else {
        state.mu = 0.5 * (lo + hi);
    }
    state.mu_indeterminate = true;
}

}  // namespace

double invert_theta(Statistics kind, double z, double x, double n_cap) {
    double lo = 0.0;
    double hi;
    if (kind == Statistics::fermi) {
        hi = 1.0;
    } else {
        // theta_bose decays to 0+; double until bracketed or capped.
        hi = 1.0;
        while (theta_bose(z, hi) > x && hi < n_cap) {
            hi = std::min(2.0 * hi, n_cap);
        }
        if (theta_bose(z, hi) > x) return hi;  // root beyond cap
    }
    auto f = [&](double n) { return theta(kind, z, n) - x; };
    auto df = [&](double n) { return z * theta_deriv(kind, z, n); };
    return detail::newton_bisect_decreasing(f, df, lo, hi, theta_residual_tol);
}

std::vector<LevelOccupancy> populations_at(double mu, double temperature,
                                           const SystemSpec& system) {
    if (!(temperature > 0.0)) throw solver_error("populations_at: temperature must be positive");
    return populations_capped(mu, temperature, system,
                              std::numeric_limits<double>::infinity());
}

void state_observables(EquilibriumState& state, const SystemSpec& system) {
    double entropy = 0.0;
    double energy = 0.0;
    for (std::size_t j = 0; j < state.occupancies.size(); ++j) {
        const Level& level = system.levels[j];
        const double eps = level_energy(level, system.volume, system.alpha);
        entropy += level_entropy(system.statistics, level.z, state.occupancies[j].n);
        energy += eps * level.z * state.occupancies[j].n;
    }
    state.entropy = entropy;
    state.energy = energy;
    state.pressure = system.alpha * energy / system.volume;
    state.active_count = count_active(state.occupancies);
    if (state.condensate_level) {
        // The absorber level satisfies theta = 0 = (eps - mu)/T but carries
        // no response; do not count it as active.
        if (state.occupancies[*state.condensate_level].pinned == Pinned::interior) {
            --state.active_count;
        }
    }
}

EquilibriumState solve_mu(double temperature, const SystemSpec& system) {
    system.validate();
    if (!(temperature > 0.0)) throw solver_error("solve_mu: temperature must be positive");

    const Statistics kind = system.statistics;
    const double n_total = system.n_total;
    const double g_tol = conservation_tol(n_total);

    std::vector<double> eps(system.levels.size());
    for (std::size_t j = 0; j < eps.size(); ++j) {
        eps[j] = level_energy(system.levels[j], system.volume, system.alpha);
    }
    const double eps_min = *std::min_element(eps.begin(), eps.end());
    const double eps_max = *std::max_element(eps.begin(), eps.end());

    // Cap Bose inversions: no level can hold more than all particles.
    double n_cap = std::numeric_limits<double>::infinity();
    if (kind == Statistics::bose) {
        double z_min = std::numeric_limits<double>::infinity();
        for (const Level& level : system.levels) z_min = std::min(z_min, level.z);
        n_cap = n_total / z_min + 1.0;
    }

    auto excess = [&](double mu) {
        return total_particles(system, populations_capped(mu, temperature, system, n_cap)) -
               n_total;
    };

    double mu_lo = eps_min - bracket_width_in_T * temperature;
    while (excess(mu_lo) > 0.0) mu_lo -= bracket_width_in_T * temperature;

    EquilibriumState state;
    state.temperature = temperature;

    double mu_hi;
    bool hi_open = false;  // true when g(mu_hi) is +inf conceptually (Bose edge)
    if (kind == Statistics::bose) {
        mu_hi = eps_min;
        // Divergence at mu -> eps_min requires z > 1 there. If every lowest
        // level has z == 1, the remaining levels may not hold N particles for
        // any mu < eps_min; the z = 1 ground level then absorbs the residue
        // at mu = eps_min exactly.
        bool min_level_diverges = false;
        for (std::size_t j = 0; j < eps.size(); ++j) {
            if (eps[j] == eps_min && system.levels[j].z > 1.0) min_level_diverges = true;
        }
        if (!min_level_diverges) {
            double held = 0.0;
            std::vector<LevelOccupancy> occ(eps.size());
            for (std::size_t j = 0; j < eps.size(); ++j) {
                const double x = (eps[j] - eps_min) / temperature;
                occ[j] = level_population(kind, system.levels[j].z, x, n_cap);
                held += system.levels[j].z * occ[j].n;
            }
            if (held < n_total - g_tol) {
                std::size_t absorber = 0;
                for (std::size_t j = 0; j < eps.size(); ++j) {
                    if (eps[j] == eps_min && system.levels[j].z == 1.0) absorber = j;
                }
                occ[absorber] =
                    make_occupancy(kind, 1.0, n_total - held, Pinned::interior);
                state.mu = eps_min;
                state.condensate_level = absorber;
                state.occupancies = std::move(occ);
                state_observables(state, system);
                return state;
            }
        }
        hi_open = true;
    } else {
        mu_hi = eps_max + bracket_width_in_T * temperature;
        while (excess(mu_hi) < 0.0) mu_hi += bracket_width_in_T * temperature;
    }

    // Bisection-safeguarded Newton on g(mu) - N. g is nondecreasing with
    // dg/dmu = -(1/T) sum_active 1/theta1 > 0 wherever a level is interior.
    double mu = hi_open ? mu_hi - 0.5 * bracket_width_in_T * temperature
                        : 0.5 * (mu_lo + mu_hi);
    if (!(mu > mu_lo && mu < mu_hi)) mu = 0.5 * (mu_lo + mu_hi);
    // Iterate to interval collapse, not just to the conservation tolerance:
    // a loose mu makes plateau observables jitter at the tolerance scale.
    std::vector<LevelOccupancy> occ;
    for (int it = 0; it < 300; ++it) {
        occ = populations_capped(mu, temperature, system, n_cap);
        const double g = total_particles(system, occ) - n_total;
        if (g > 0.0) mu_hi = mu; else mu_lo = mu;
        const double width_tol = 1e-14 * std::max(1.0, std::abs(mu));
        if (std::abs(g) <= g_tol) {
            // A fully pinned state is a conservation plateau: stop inside
            // it (the mu interval is recomputed from complementarity).
            if (count_active(occ) == 0 || mu_hi - mu_lo <= width_tol) break;
        }
        double slope = 0.0;
        for (std::size_t j = 0; j < occ.size(); ++j) {
            if (occ[j].pinned == Pinned::interior) slope -= 1.0 / occ[j].theta1;
        }
        slope /= temperature;
        double next = slope > 0.0 ? mu - g / slope : mu_lo;
        if (!(next > mu_lo) || !(next < mu_hi)) {
            next = 0.5 * (mu_lo + mu_hi);
        }
        if (next == mu) break;
        mu = next;
    }
    occ = populations_capped(mu, temperature, system, n_cap);
    if (std::abs(total_particles(system, occ) - n_total) > g_tol) {
        throw solver_error("solve_mu: conservation did not converge");
    }

    state.mu = mu;
    state.occupancies = std::move(occ);
    if (count_active(state.occupancies) == 0) {
        pinned_mu_interval(system, state.occupancies, temperature, state);
    }
    state_observables(state, system);
    return state;
}

EquilibriumState ground_state(const SystemSpec& system) {
    system.validate();
    const Statistics kind = system.statistics;

    std::vector<std::size_t> order(system.levels.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return level_energy(system.levels[a], system.volume, system.alpha) <
               level_energy(system.levels[b], system.volume, system.alpha);
    });

    EquilibriumState state;
    state.temperature = 0.0;
    state.occupancies.resize(system.levels.size());
    if (kind == Statistics::bose) {
        for (std::size_t j = 0; j < system.levels.size(); ++j) {
            state.occupancies[j] = make_occupancy(kind, system.levels[j].z, 0.0,
                                                  Pinned::at_empty);
        }
        const std::size_t g = order.front();
        state.occupancies[g] = make_occupancy(kind, system.levels[g].z,
                                              system.n_total / system.levels[g].z,
                                              Pinned::interior);
        state.mu = level_energy(system.levels[g], system.volume, system.alpha);
    } else {
        double remaining = system.n_total;
        bool mu_set = false;
        double last_full = -std::numeric_limits<double>::infinity();
        double first_empty = std::numeric_limits<double>::infinity();
        for (std::size_t idx : order) {
            const double z = system.levels[idx].z;
            const double eps = level_energy(system.levels[idx], system.volume, system.alpha);
            const double n = std::min(1.0, remaining / z);
            remaining -= z * n;
            if (n >= 1.0) {
                state.occupancies[idx] = make_occupancy(kind, z, 1.0, Pinned::at_full);
                last_full = std::max(last_full, eps);
            } else if (n <= 0.0) {
                state.occupancies[idx] = make_occupancy(kind, z, 0.0, Pinned::at_empty);
                first_empty = std::min(first_empty, eps);
            } else {
                state.occupancies[idx] = make_occupancy(kind, z, n, Pinned::interior);
                state.mu = eps;
                mu_set = true;
            }
        }
        if (!mu_set) {
            state.mu_lo = last_full;
            state.mu_hi = first_empty;
            state.mu = 0.5 * (last_full + first_empty);
            state.mu_indeterminate = true;
        }
    }
    state_observables(state, system);
    return state;
}

std::vector<double> high_temperature_limit(const SystemSpec& system) {
    system.validate();
    const Statistics kind = system.statistics;
    const double n_total = system.n_total;

    double n_cap = std::numeric_limits<double>::infinity();
    double c_hi = -std::numeric_limits<double>::infinity();
    double c_lo = std::numeric_limits<double>::infinity();
    bool any_unbounded_low = false;
    for (const Level& level : system.levels) {
        const double z = level.z;
        if (kind == Statistics::bose) {
            if (z > 1.0) {
                c_hi = std::max(c_hi, theta_bose(z, 0.0));
                any_unbounded_low = true;  // theta -> 0+ as n -> inf
            }
        } else {
            c_hi = std::max(c_hi, theta_fermi(z, 0.0));
            c_lo = std::min(c_lo, theta_fermi(z, 1.0));
        }
    }
    if (kind == Statistics::bose) {
        if (!any_unbounded_low) {
            throw solver_error("high_temperature_limit: all Bose levels have z = 1");
        }
        double z_min = std::numeric_limits<double>::infinity();
        for (const Level& level : system.levels) z_min = std::min(z_min, level.z);
        n_cap = n_total / z_min + 1.0;
        c_lo = 0.0;  // open end, handled by clamping below
    }

    auto population = [&](double z, double c) {
        if (kind == Statistics::fermi) {
            if (c >= theta_fermi(z, 0.0)) return 0.0;
            if (c <= theta_fermi(z, 1.0)) return 1.0;
        } else {
            if (z == 1.0) return 0.0;
            if (c >= theta_bose(z, 0.0)) return 0.0;
        }
        return invert_theta(kind, z, c, n_cap);
    };
    auto overfill = [&](double c) {
        double total = 0.0;
        for (const Level& level : system.levels) total += level.z * population(level.z, c);
        return total - n_total;
    };

    double lo = c_lo;
    double hi = c_hi;
    if (kind == Statistics::bose) lo = 1e-300;
    // overfill is decreasing in c; plain bisection (theta'-based Newton on the
    // aggregate is not worth the bookkeeping here, the solve is one-shot).
    double flo = overfill(lo);
    double fhi = overfill(hi);
    const double tol = conservation_tol(n_total);
    double c = 0.5 * (lo + hi);
    if (flo <= tol) {
        c = lo;
    } else if (fhi >= -tol) {
        c = hi;
    } else {
        for (int it = 0; it < 200; ++it) {
            c = 0.5 * (lo + hi);
            const double f = overfill(c);
            if (std::abs(f) <= tol || hi - lo <= 1e-15 * std::max(1.0, std::abs(c))) break;
            if (f > 0.0) lo = c; else hi = c;
        }
    }

    std::vector<double> populations;
    populations.reserve(system.levels.size());
    for (const Level& level : system.levels) {
        populations.push_back(population(level.z, c));
    }
    // Polish conservation: distribute any residue over interior levels in
    // proportion to their particle-count response.
    double residue = n_total;
    for (std::size_t j = 0; j < populations.size(); ++j) {
        residue -= system.levels[j].z * populations[j];
    }
    if (std::abs(residue) > 0.0) {
        double weight = 0.0;
        for (std::size_t j = 0; j < populations.size(); ++j) {
            const double z = system.levels[j].z;
            const double n = populations[j];
            const bool interior = (kind == Statistics::fermi) ? (n > 0.0 && n < 1.0)
                                                              : (n > 0.0);
            if (interior) weight += 1.0 / std::abs(theta_deriv(kind, z, n));
        }
        if (weight > 0.0) {
            for (std::size_t j = 0; j < populations.size(); ++j) {
                const double z = system.levels[j].z;
                const double n = populations[j];
                const bool interior = (kind == Statistics::fermi) ? (n > 0.0 && n < 1.0)
                                                                  : (n > 0.0);
                if (interior) {
                    populations[j] +=
                        residue / (z * weight * std::abs(theta_deriv(kind, z, n)));
                }
            }
        }
    }
    return populations;
}

}  // namespace qstat
