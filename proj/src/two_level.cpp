#include "qstat/two_level.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qstat/thermo.hpp"

namespace qstat::two_level {

namespace {

constexpr double jump_step = 1e-8;

void check_params(const TwoLevelParams& p) {
    if (!(p.z1 > 0.0) || !(p.z2 > 0.0)) {
        throw std::invalid_argument("two_level: degeneracies must be positive");
    }
    if (!(p.n_total > 0.0)) throw std::invalid_argument("two_level: N must be positive");
    if (!(p.delta_eps > 0.0)) throw std::invalid_argument("two_level: delta_eps must be positive");
}

std::optional<double> temp_from_denominator(double delta_eps, double denom) {
    if (denom > 0.0) return delta_eps / denom;
    return std::nullopt;
}

// Bisection for the eta-root of a monotone denominator at fixed (z1, N).
// Brackets [lo, hi] must straddle a sign change; returns nullopt otherwise.
template <typename F>
std::optional<double> eta_root(F f, double lo, double hi) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= 1e-10 * std::max(1.0, std::abs(hi))) break;
    }
    return 0.5 * (lo + hi);
}

// Expand hi until f changes sign relative to f(lo), capped.
template <typename F>
std::optional<double> eta_root_expanding(F f, double lo, double hi_start, double hi_cap) {
    const double flo = f(lo);
    double hi = hi_start;
    while (hi < hi_cap && (f(hi) > 0.0) == (flo > 0.0)) hi *= 2.0;
    if (hi >= hi_cap) return std::nullopt;
    return eta_root(f, lo, hi);
}

}  // namespace

const char* region_label(Region region) {
    switch (region) {
        case Region::bose_i: return "B-I";
        case Region::bose_ii: return "B-II";
        case Region::bose_iii: return "B-III";
        case Region::fermi_ia: return "F-I_A";
        case Region::fermi_iia: return "F-II_A";
        case Region::fermi_iiia: return "F-III_A";
        case Region::fermi_iiia_prime: return "F-III_A'";
        case Region::fermi_ib: return "F-I_B";
        case Region::fermi_iib: return "F-II_B";
        case Region::fermi_iiib: return "F-III_B";
        case Region::fermi_iiib_prime: return "F-III_B'";
        case Region::fermi_forbidden: return "F-Forbidden";
    }
    return "?";
}

CharTemps char_temps(const TwoLevelParams& p, Statistics kind) {
    check_params(p);
    CharTemps result;
    const double z1 = p.z1;
    const double z2 = p.z2;
    const double n = p.n_total;
    const double de = p.delta_eps;
    if (kind == Statistics::bose) {
        result.b1 = temp_from_denominator(de, phi_diff(kind, z1, z2, 0.0, n / z1));
        result.b2 = temp_from_denominator(de, phi_diff(kind, z1, z2, n / z2, 0.0));
        return result;
    }
    // The gates guarantee the populations lie in [0, 1] up to rounding of
    // the differences; clamp away the last-ulp excursions.
    auto pop = [](double value) { return std::clamp(value, 0.0, 1.0); };
    if (n <= z1) {
        result.f1 = temp_from_denominator(de, phi_diff(kind, z1, z2, 0.0, pop(n / z1)));
    }
    if (n <= z2) {
        result.f2 = temp_from_denominator(de, phi_diff(kind, z1, z2, pop(n / z2), 0.0));
    }
    if (n > z1 && n <= z1 + z2) {
        result.f3 =
            temp_from_denominator(de, phi_diff(kind, z1, z2, pop((n - z1) / z2), 1.0));
    }
    if (n >= z2 && n <= z1 + z2) {
        result.f4 =
            temp_from_denominator(de, phi_diff(kind, z1, z2, 1.0, pop((n - z2) / z1)));
    }
    return result;
}

Region classify_region(const TwoLevelParams& p, Statistics kind) {
    check_params(p);
    if (kind == Statistics::bose) {
        const CharTemps ct = char_temps(p, kind);
        if (!ct.b1) return Region::bose_i;
        return ct.b2 ? Region::bose_iii : Region::bose_ii;
    }
    if (p.n_total > p.z1 + p.z2) return Region::fermi_forbidden;
    const CharTemps ct = char_temps(p, kind);
    const bool case_a = p.n_total <= p.z1;
    const bool onset = case_a ? ct.f1.has_value() : ct.f3.has_value();
    if (!onset) return case_a ? Region::fermi_ia : Region::fermi_ib;
    if (ct.f2) return case_a ? Region::fermi_iiia : Region::fermi_iiib;
    if (ct.f4) return case_a ? Region::fermi_iiia_prime : Region::fermi_iiib_prime;
    return case_a ? Region::fermi_iia : Region::fermi_iib;
}

double zero_temperature_entropy(const TwoLevelParams& p, Statistics kind) {
    check_params(p);
    if (kind == Statistics::bose) {
        return level_entropy(kind, p.z1, p.n_total / p.z1);
    }
    if (p.n_total <= p.z1) {
        return level_entropy(kind, p.z1, p.n_total / p.z1);
    }
    if (p.n_total > p.z1 + p.z2) {
        throw std::invalid_argument("two_level: Fermi N exceeds z1 + z2");
    }
    return level_entropy(kind, p.z2, (p.n_total - p.z1) / p.z2);
}

LimitingEntropy limiting_entropy(const TwoLevelParams& p, Statistics kind) {
    check_params(p);
    const CharTemps ct = char_temps(p, kind);
    LimitingEntropy result;
    if (kind == Statistics::bose ? ct.b2.has_value() : ct.f2.has_value()) {
        // Lower level empty, everything on the upper level.
        result.value = level_entropy(kind, p.z2, p.n_total / p.z2);
        result.tag = LimitTag::completion_plateau;
        return result;
    }
    if (kind == Statistics::fermi && ct.f4) {
        // Upper level full (zero entropy), remainder stays below.
        result.value = level_entropy(kind, p.z1, (p.n_total - p.z2) / p.z1);
        result.tag = LimitTag::completion_plateau;
        return result;
    }
    const SystemSpec system = make_system(p, kind);
    const std::vector<double> n_inf = high_temperature_limit(system);
    result.value = level_entropy(kind, p.z1, n_inf[0]) + level_entropy(kind, p.z2, n_inf[1]);
    result.tag = LimitTag::high_t_limit;
    return result;
}

std::vector<CapacityJump> capacity_jumps(const TwoLevelParams& p, Statistics kind,
                                         double volume, double alpha) {
    check_params(p);
    const CharTemps ct = char_temps(p, kind);
    std::vector<double> temps;
    for (const auto& t : {ct.b1, ct.b2, ct.f1, ct.f2, ct.f3, ct.f4}) {
        if (t) temps.push_back(*t);
    }
    std::sort(temps.begin(), temps.end());

    const SystemSpec system = make_system(p, kind, volume, alpha);
    std::vector<CapacityJump> jumps;
    jumps.reserve(temps.size());
    for (double t : temps) {
        const EquilibriumState above = solve_mu(t * (1.0 + jump_step), system);
        const EquilibriumState below = solve_mu(t * (1.0 - jump_step), system);
        const ResponseSet ra = evaluate(above, system);
        const ResponseSet rb = evaluate(below, system);
        jumps.push_back({t, ra.cv - rb.cv, ra.cp - rb.cp});
    }
    return jumps;
}

SystemSpec make_system(const TwoLevelParams& p, Statistics kind, double volume,
                       double alpha) {
    check_params(p);
    SystemSpec system;
    system.statistics = kind;
    const double scale = std::pow(volume, alpha);
    system.levels = {{p.delta_eps * scale, p.z1}, {2.0 * p.delta_eps * scale, p.z2}};
    system.n_total = p.n_total;
    system.volume = volume;
    system.alpha = alpha;
    return system;
}

ThresholdEtas threshold_etas(Statistics kind, double z1, double n_total) {
    if (!(z1 > 0.0) || !(n_total > 0.0)) {
        throw std::invalid_argument("threshold_etas: z1 and N must be positive");
    }
    const double phi = n_total / z1;
    ThresholdEtas result;

    auto denom = [&](double n2_of_eta, double n1, double eta) {
        return phi_diff(kind, z1, eta * z1, n2_of_eta, n1);
    };

    if (kind == Statistics::bose) {
        result.onset = eta_root_expanding(
            [&](double eta) { return denom(0.0, phi, eta); }, 1e-9 / z1, 1.0, 1e12);
        result.completion_empty = eta_root_expanding(
            [&](double eta) { return denom(phi / eta, 0.0, eta); }, 1e-9 / z1, 1.0, 1e12);
        return result;
    }

    if (phi > 1.0) result.forbidden_edge = phi - 1.0;
    if (phi <= 1.0) {
        result.onset = eta_root_expanding(
            [&](double eta) { return denom(0.0, phi, eta); }, 1e-9 / z1, 1.0, 1e12);
    } else if (phi <= 1.0 + 1e12) {
        // T_F3 exists for eta above the root of Phi((phi-1)/eta, 1); the
        // admissible range starts at the forbidden edge eta = phi - 1.
        result.onset = eta_root_expanding(
            [&](double eta) { return denom((phi - 1.0) / eta, 1.0, eta); },
            (phi - 1.0) * (1.0 + 1e-12), std::max(2.0 * (phi - 1.0), 1.0), 1e12);
    }
    // T_F2 needs eta >= phi (upper level can hold everything).
    result.completion_empty = eta_root_expanding(
        [&](double eta) { return denom(phi / eta, 0.0, eta); }, phi * (1.0 + 1e-12),
        std::max(2.0 * phi, 1.0), 1e12);
    // T_F4 needs phi - 1 <= eta <= phi; its denominator decreases in eta.
    {
        const double lo = std::max(phi - 1.0, 1e-9 / z1) * (1.0 + 1e-12);
        const double hi = phi * (1.0 - 1e-12);
        if (lo < hi) {
            result.completion_full = eta_root(
                [&](double eta) { return denom(1.0, phi - eta, eta); }, lo, hi);
        }
    }
    return result;
}

std::vector<BoundaryCurve> region_boundaries(Statistics kind, double n_total,
                                             const GridSpec& grid) {
    if (grid.phi_count < 2 || grid.eta_count < 2 || !(grid.phi_min > 0.0) ||
        !(grid.phi_max > grid.phi_min) || !(grid.eta_min > 0.0) ||
        !(grid.eta_max > grid.eta_min)) {
        throw std::invalid_argument("region_boundaries: bad grid");
    }

    BoundaryCurve onset{"onset", {}};
    BoundaryCurve completion_empty{"completion-empty", {}};
    BoundaryCurve completion_full{"completion-full", {}};
    BoundaryCurve forbidden{"forbidden-edge", {}};
    BoundaryCurve case_split{"case-split", {}};

    auto in_range = [&](double eta) {
        return eta >= grid.eta_min && eta <= grid.eta_max;
    };

    for (int i = 0; i < grid.phi_count; ++i) {
        const double phi = grid.phi_min + (grid.phi_max - grid.phi_min) * i /
                                              (grid.phi_count - 1);
        const double z1 = n_total / phi;
        const ThresholdEtas th = threshold_etas(kind, z1, n_total);
        if (th.onset && in_range(*th.onset)) {
            onset.points.push_back({phi, *th.onset});
        }
        if (th.completion_empty && in_range(*th.completion_empty)) {
            completion_empty.points.push_back({phi, *th.completion_empty});
        }
        if (th.completion_full && in_range(*th.completion_full)) {
            completion_full.points.push_back({phi, *th.completion_full});
        }
        if (kind == Statistics::fermi) {
            if (th.forbidden_edge && in_range(*th.forbidden_edge)) {
                forbidden.points.push_back({phi, *th.forbidden_edge});
            }
        }
    }
    if (kind == Statistics::fermi && 1.0 >= grid.phi_min && 1.0 <= grid.phi_max) {
        for (int k = 0; k < grid.eta_count; ++k) {
            const double eta = grid.eta_min + (grid.eta_max - grid.eta_min) * k /
                                                  (grid.eta_count - 1);
            case_split.points.push_back({1.0, eta});
        }
    }

    std::vector<BoundaryCurve> curves;
    for (auto& curve : {onset, completion_empty, completion_full, forbidden, case_split}) {
        if (!curve.points.empty()) curves.push_back(curve);
    }
    return curves;
}

}  // namespace qstat::two_level
