#ifndef QSTAT_STAT_CORE_HPP
#define QSTAT_STAT_CORE_HPP

#include <cstddef>
#include <vector>

// System data model and per-level statistical functions for systems of
// non-interacting fermions or bosons on a finite set of degenerate levels,
// with possibly small or fractional particle number. Factorial weights are
// continued through the gamma function, so the occupation function of a
// level with degeneracy z and population n (particles per state) is a
// digamma difference:
//
//   Fermi: theta(n) = psi(z (1-n) + 1) - psi(z n + 1),   n in [0, 1]
//   Bose:  theta(n) = psi(z n + z)     - psi(z n + 1),   n >= 0
//
// theta is strictly decreasing in n (for z > 1 in the Bose case) and the
// equilibrium populations satisfy theta_j(n_j) = (eps_j - mu) / T.
//
// theta^(1) denotes the derivative of theta with respect to the particle
// count z n, i.e. d theta / d n = z theta^(1). The response sums consumed
// by the thermodynamic coefficients divide by theta^(1), not z theta^(1);
// keeping the per-particle-count derivative as the primitive avoids
// factor-of-z mistakes downstream.
//
// Units: k_B = 1 throughout, temperatures carry energy units.

namespace qstat {

enum class Statistics { fermi, bose };

/// One degenerate energy level. The level energy depends on the confining
/// volume as eps = xi * V^(-alpha).
struct Level {
    double xi = 1.0;  // energy coefficient, units energy * volume^alpha
    double z = 1.0;   // degeneracy multiplicity, real >= 1
};

/// A full system: statistics kind, levels, particle number and geometry.
struct SystemSpec {
    Statistics statistics = Statistics::fermi;
    std::vector<Level> levels;
    double n_total = 1.0;       // total particle number N, fractional allowed
    double volume = 1.0;        // V > 0
    double alpha = 2.0 / 3.0;   // volume exponent in eps = xi V^(-alpha)

    double level_capacity() const;  // sum of z_j (Fermi capacity)
    /// Throws std::invalid_argument when an invariant is violated
    /// (z < 1, V <= 0, alpha <= 0, N <= 0, or Fermi N > sum z_j).
    void validate() const;
};

enum class Pinned { interior, at_empty, at_full };

/// Resolved population of one level, with cached occupation-function values.
struct LevelOccupancy {
    double n = 0.0;           // population, particles per state
    Pinned pinned = Pinned::interior;
    double theta = 0.0;       // theta(n)
    double theta1 = 0.0;      // theta^(1)(n), derivative in the particle count
};

// Level energy and its volume derivatives for eps = xi V^(-alpha).
double level_energy(const Level& level, double volume, double alpha);
double level_energy_dV(const Level& level, double volume, double alpha);
double level_energy_d2V(const Level& level, double volume, double alpha);

// Occupation functions and their particle-count derivatives.
// Preconditions: z > 0 and n >= 0; Fermi additionally n <= 1.
double theta_bose(double z, double n);
double theta_bose_deriv(double z, double n);
double theta_fermi(double z, double n);
double theta_fermi_deriv(double z, double n);

double theta(Statistics kind, double z, double n);
double theta_deriv(Statistics kind, double z, double n);

/// Nonequilibrium entropy of one level, ln of the gamma-continued
/// statistical weight. Dimensionless (k_B = 1).
double level_entropy(Statistics kind, double z, double n);

/// dS/dn of one level, identically z * theta(z, n).
double level_entropy_deriv(Statistics kind, double z, double n);

/// Two-level difference function Phi(n2, n1) = theta_2(n2) - theta_1(n1),
/// with z2 inside theta_2 and z1 inside theta_1.
double phi_diff(Statistics kind, double z1, double z2, double n2, double n1);

}  // namespace qstat

#endif
