#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qstat/quadrature.hpp"
#include "qstat/specfun.hpp"
#include "qstat/stat_core.hpp"

using namespace qstat;

namespace {

constexpr double pi = 3.14159265358979323846;

double harmonic(int n) {
    double h = 0.0;
    for (int k = 1; k <= n; ++k) h += 1.0 / k;
    return h;
}

// Exact ln of the combinatorial statistical weight for integer arguments:
// Bose (z + N - 1 choose N), Fermi (z choose N). Exact 128-bit binomials.
double ln_weight_exact(Statistics kind, int z, int n_particles) {
    const int top = (kind == Statistics::bose) ? z + n_particles - 1 : z;
    __int128 value = 1;
    for (int k = 1; k <= n_particles; ++k) {
        value = value * (top - n_particles + k) / k;  // stays integral stepwise
    }
    return std::log(static_cast<long double>(value));
}

}  // namespace

TEST_CASE("level energy and volume derivatives") {
    const double alpha = 2.0 / 3.0;
    CHECK(level_energy({1.0, 4.0}, 1.0, alpha) == doctest::Approx(1.0));
    CHECK(level_energy({2.0, 4.0}, 8.0, alpha) == doctest::Approx(0.5));
    CHECK(level_energy_dV({1.0, 4.0}, 1.0, alpha) == doctest::Approx(-2.0 / 3.0));
    CHECK(level_energy_d2V({1.0, 4.0}, 1.0, alpha) ==
          doctest::Approx(alpha * (alpha + 1.0)));
}

TEST_CASE("system validation") {
    SystemSpec bad;
    bad.levels = {{1.0, 0.5}};
    bad.n_total = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    SystemSpec overfull;
    overfull.statistics = Statistics::fermi;
    overfull.levels = {{1.0, 2.0}, {2.0, 3.0}};
    overfull.n_total = 6.0;
    CHECK_THROWS_AS(overfull.validate(), std::invalid_argument);
    overfull.n_total = 5.0;
    CHECK_NOTHROW(overfull.validate());
}

TEST_CASE("theta_bose values") {
    CHECK(theta_bose(2.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(theta_bose(1.0, 3.7) == doctest::Approx(0.0));
    CHECK(theta_bose(8.0, 0.0) == doctest::Approx(harmonic(7)).epsilon(1e-12));
}

TEST_CASE("theta_bose_deriv values") {
    CHECK(theta_bose_deriv(1.0, 0.2) == doctest::Approx(0.0));
    CHECK(theta_bose_deriv(2.0, 1.0) == doctest::Approx(-1.0 / 9.0).epsilon(1e-12));
    CHECK(std::abs(theta_bose_deriv(96.0, 0.16) -
                   theta_integral_oracle(Statistics::bose, 96.0, 0.16, 1)) <= 1e-8);
    CHECK(theta_bose_deriv(96.0, 0.16) < 0.0);
}

TEST_CASE("theta_fermi values") {
    CHECK(std::abs(theta_fermi(16.0, 0.5)) <= 1e-14);
    CHECK(theta_fermi(1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(theta_fermi(16.0, 0.0) == doctest::Approx(harmonic(16)).epsilon(1e-12));
    CHECK_THROWS_AS(theta_fermi(4.0, 1.2), std::domain_error);
    CHECK_THROWS_AS(theta_fermi(4.0, -0.2), std::domain_error);
}

TEST_CASE("theta_fermi antisymmetry and range") {
    for (double z : {1.0, 4.0, 16.0, 33.5}) {
        const double top = digamma(z + 1.0) + euler_gamma;
        CHECK(theta_fermi(z, 0.0) == doctest::Approx(top).epsilon(1e-12));
        CHECK(theta_fermi(z, 1.0) == doctest::Approx(-top).epsilon(1e-12));
        for (double n : {0.125, 0.25, 0.375}) {
            CHECK(theta_fermi(z, n) == -theta_fermi(z, 1.0 - n));
        }
    }
}

TEST_CASE("theta_fermi_deriv values and symmetry") {
    CHECK(theta_fermi_deriv(1.0, 0.5) == doctest::Approx(8.0 - pi * pi).epsilon(1e-12));
    CHECK(theta_fermi_deriv(16.0, 0.25) == theta_fermi_deriv(16.0, 0.75));
    const double want = -(trigamma(17.0) + pi * pi / 6.0);
    CHECK(theta_fermi_deriv(16.0, 0.0) == doctest::Approx(want).epsilon(1e-12));
    CHECK(std::abs(theta_fermi_deriv(16.0, 0.0) -
                   theta_integral_oracle(Statistics::fermi, 16.0, 0.0, 1)) <= 1e-8);
}

TEST_CASE("level entropy values") {
    // z = 8, n = 2 (16 particles): ln C(23, 7)
    CHECK(level_entropy(Statistics::bose, 8.0, 2.0) ==
          doctest::Approx(ln_weight_exact(Statistics::bose, 8, 16)).epsilon(1e-12));
    CHECK(level_entropy(Statistics::bose, 8.0, 2.0) == doctest::Approx(12.41).epsilon(5e-3));
    // z = 16, 14 particles: ln C(16, 14) = ln 120
    CHECK(level_entropy(Statistics::fermi, 16.0, 14.0 / 16.0) ==
          doctest::Approx(std::log(120.0)).epsilon(1e-12));
    CHECK(level_entropy(Statistics::fermi, 20.0, 0.0) == doctest::Approx(0.0));
    CHECK(level_entropy(Statistics::bose, 1.0, 5.5) == doctest::Approx(0.0));
    CHECK(level_entropy(Statistics::fermi, 20.0, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("entropy derivative equals z theta") {
    CHECK(std::abs(level_entropy_deriv(Statistics::fermi, 16.0, 0.5)) <= 1e-12);
    CHECK(level_entropy_deriv(Statistics::bose, 2.0, 1.0) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    const double h = 1e-5;
    for (double n : {0.1, 0.25, 0.6, 0.9}) {
        const double fd = (level_entropy(Statistics::fermi, 16.0, n + h) -
                           level_entropy(Statistics::fermi, 16.0, n - h)) /
                          (2.0 * h);
        CHECK(std::abs(fd - level_entropy_deriv(Statistics::fermi, 16.0, n)) <= 1e-6);
    }
    for (double n : {0.3, 1.0, 2.5}) {
        const double fd = (level_entropy(Statistics::bose, 8.0, n + h) -
                           level_entropy(Statistics::bose, 8.0, n - h)) /
                          (2.0 * h);
        CHECK(std::abs(fd - level_entropy_deriv(Statistics::bose, 8.0, n)) <= 1e-6);
    }
}

TEST_CASE("phi difference") {
    CHECK(phi_diff(Statistics::bose, 8.0, 8.0, 1.5, 1.5) == doctest::Approx(0.0));
    CHECK(phi_diff(Statistics::fermi, 16.0, 16.0, 0.0, 1.0) ==
          doctest::Approx(2.0 * harmonic(16)).epsilon(1e-12));
    const double v = phi_diff(Statistics::bose, 8.0, 96.0, 0.0, 2.0);
    CHECK(1.0 / v == doctest::Approx(0.21).epsilon(0.01));
}

TEST_CASE("theta monotonicity property") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> zs(1.0 + 1e-9, 500.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double z = zs(rng);
        const Statistics kind = (i % 2) ? Statistics::bose : Statistics::fermi;
        double a = (kind == Statistics::fermi) ? u(rng) : 10.0 * u(rng);
        double b = (kind == Statistics::fermi) ? u(rng) : 10.0 * u(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        CHECK(theta(kind, z, a) > theta(kind, z, b));
    }
}

TEST_CASE("finite difference of theta matches z * theta_deriv") {
    const double h = 1e-6;
    for (double z : {2.0, 8.0, 40.0}) {
        for (double n : {0.1, 0.4, 0.8}) {
            for (Statistics kind : {Statistics::fermi, Statistics::bose}) {
                const double fd = (theta(kind, z, n + h) - theta(kind, z, n - h)) / (2.0 * h);
                CHECK(std::abs(fd - z * theta_deriv(kind, z, n)) <=
                      1e-6 * std::max(1.0, std::abs(fd)));
            }
        }
    }
}

TEST_CASE("classical limit recovers the standard distributions") {
    // The deviation from the classical form is (1/2z)|1/(1-n) - 1/n| + O(z^-2)
    // for fermions (and the analogous sum for bosons), so 2e-4 across the
    // full population windows requires z = 1e5; at z = 1e4 it holds on the
    // interior and the edge deviation equals the first-order correction.
    for (double n = 0.05; n <= 0.9501; n += 0.05) {
        CHECK(std::abs(theta_fermi(1e5, n) - std::log((1.0 - n) / n)) <= 2e-4);
    }
    for (double n = 0.05; n <= 20.0; n *= 1.6) {
        CHECK(std::abs(theta_bose(1e5, n) - std::log((n + 1.0) / n)) <= 2e-4);
    }
    for (double n = 0.2; n <= 0.8001; n += 0.05) {
        CHECK(std::abs(theta_fermi(1e4, n) - std::log((1.0 - n) / n)) <= 2e-4);
    }
    for (double n = 0.35; n <= 20.0; n *= 1.6) {
        CHECK(std::abs(theta_bose(1e4, n) - std::log((n + 1.0) / n)) <= 2e-4);
    }
    // Edge-of-window deviation at z = 1e4 is exactly the 1/(2z) term.
    const double z = 1e4;
    for (double n : {0.05, 0.1, 0.9}) {
        const double correction = (1.0 / (1.0 - n) - 1.0 / n) / (2.0 * z);
        CHECK(std::abs(theta_fermi(z, n) - std::log((1.0 - n) / n) - correction) <= 1e-6);
    }
    for (double n : {0.05, 0.1}) {
        const double correction = -(1.0 / (n + 1.0) + 1.0 / n) / (2.0 * z);
        CHECK(std::abs(theta_bose(z, n) - std::log((n + 1.0) / n) - correction) <= 1e-6);
    }
}

TEST_CASE("integer populations match exact combinatorics") {
    for (int z = 2; z <= 30; z += 3) {
        for (int particles = 1; particles <= 2 * z; ++particles) {
            const double n = static_cast<double>(particles) / z;
            CHECK(std::abs(level_entropy(Statistics::bose, z, n) -
                           ln_weight_exact(Statistics::bose, z, particles)) <= 1e-10);
            if (particles <= z) {
                CHECK(std::abs(level_entropy(Statistics::fermi, z, n) -
                               ln_weight_exact(Statistics::fermi, z, particles)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("Fermi entropy particle-hole symmetry is exact") {
    for (double z : {4.0, 16.0, 64.0}) {
        for (double n : {0.125, 0.25, 0.3125, 0.5, 0.75}) {
            CHECK(level_entropy(Statistics::fermi, z, n) ==
                  level_entropy(Statistics::fermi, z, 1.0 - n));
        }
    }
}
