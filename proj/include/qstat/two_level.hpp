#ifndef QSTAT_TWO_LEVEL_HPP
#define QSTAT_TWO_LEVEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "qstat/equilibrium.hpp"
#include "qstat/stat_core.hpp"

// Two-level specialization. With Phi(n2, n1) = theta_2(n2) - theta_1(n1),
// the switching temperatures are Delta_eps / Phi evaluated at the boundary
// populations:
//
//   Bose:  onset      T_B1 = De / Phi(0, N/z1)
//          completion T_B2 = De / Phi(N/z2, 0)        (upper level takes all)
//   Fermi: onset      T_F1 = De / Phi(0, N/z1)              (N <= z1)
//                     T_F3 = De / Phi((N-z1)/z2, 1)         (N  > z1)
//          completion T_F2 = De / Phi(N/z2, 0)              (lower empties)
//                     T_F4 = De / Phi(1, (N-z2)/z1)         (upper fills)
//
// A temperature exists when its Phi arguments are admissible populations
// and the denominator is positive. The (phi = N/z1, eta = z2/z1) plane is
// partitioned by which temperatures exist.

namespace qstat::two_level {

struct TwoLevelParams {
    double z1 = 1.0;
    double z2 = 1.0;
    double n_total = 1.0;
    double delta_eps = 1.0;   // eps_2 - eps_1 > 0

    double eta() const { return z2 / z1; }
    double phi() const { return n_total / z1; }
};

struct CharTemps {
    std::optional<double> b1, b2;          // Bose
    std::optional<double> f1, f2, f3, f4;  // Fermi
};

enum class Region {
    bose_i,
    bose_ii,
    bose_iii,
    fermi_ia,
    fermi_iia,
    fermi_iiia,
    fermi_iiia_prime,
    fermi_ib,
    fermi_iib,
    fermi_iiib,
    fermi_iiib_prime,
    fermi_forbidden,
};

const char* region_label(Region region);

CharTemps char_temps(const TwoLevelParams& params, Statistics kind);
Region classify_region(const TwoLevelParams& params, Statistics kind);

/// Closed-form entropy of the T = 0 state.
double zero_temperature_entropy(const TwoLevelParams& params, Statistics kind);

enum class LimitTag { completion_plateau, high_t_limit };

struct LimitingEntropy {
    double value = 0.0;
    LimitTag tag = LimitTag::high_t_limit;
};

/// Entropy plateau above the completion temperature when one exists,
/// otherwise the T -> infinity entropy (which for a frozen system equals
/// the T = 0 value).
LimitingEntropy limiting_entropy(const TwoLevelParams& params, Statistics kind);

struct CapacityJump {
    double temperature = 0.0;  // energy units
    double d_cv = 0.0;
    double d_cp = 0.0;
};

/// Heat-capacity discontinuities C(T(1+h)) - C(T(1-h)), h = 1e-8, at every
/// existing characteristic temperature, ascending in T.
std::vector<CapacityJump> capacity_jumps(const TwoLevelParams& params, Statistics kind,
                                         double volume = 1.0, double alpha = 2.0 / 3.0);

/// Concrete SystemSpec for the two-level system. The energy origin is fixed
/// by eps_1 = Delta_eps, eps_2 = 2 Delta_eps at the given volume; only the
/// volume-derivative quantities (C_p, alpha_p, gamma_T, beta_V) depend on it.
SystemSpec make_system(const TwoLevelParams& params, Statistics kind,
                       double volume = 1.0, double alpha = 2.0 / 3.0);

/// Existence thresholds in eta at fixed (z1, N), i.e. along a vertical line
/// of the (phi, eta) plane. Each is the root of the corresponding
/// characteristic-temperature denominator; absence means the denominator
/// does not change sign on the admissible eta range.
struct ThresholdEtas {
    std::optional<double> onset;            // T_B1 / T_F1 / T_F3 appears above
    std::optional<double> completion_empty; // T_B2 / T_F2 appears above
    std::optional<double> completion_full;  // T_F4 exists below
    std::optional<double> forbidden_edge;   // eta = phi - 1 (Fermi, phi > 1)
};

ThresholdEtas threshold_etas(Statistics kind, double z1, double n_total);

struct BoundaryPoint {
    double phi = 0.0;
    double eta = 0.0;
};

struct BoundaryCurve {
    std::string name;
    std::vector<BoundaryPoint> points;
};

struct GridSpec {
    double phi_min = 0.01;
    double phi_max = 2.0;
    int phi_count = 100;
    double eta_min = 0.01;
    double eta_max = 6.0;
    int eta_count = 100;
};

/// Phi = 0 loci (plus Fermi domain edges) on the (phi, eta) grid, one point
/// per phi grid line where the crossing exists, located to 1e-8.
std::vector<BoundaryCurve> region_boundaries(Statistics kind, double n_total,
                                             const GridSpec& grid);

}  // namespace qstat::two_level

#endif
