#include "qstat/stat_core.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "qstat/specfun.hpp"

namespace qstat {

namespace {

void check_population(Statistics kind, double z, double n) {
    if (!(z > 0.0)) {
        throw std::domain_error("theta: degeneracy must be positive");
    }
    if (kind == Statistics::fermi) {
        if (!(n >= 0.0 && n <= 1.0)) {
            throw std::domain_error("theta: Fermi population must lie in [0,1]");
        }
    } else if (!(n >= 0.0)) {
        throw std::domain_error("theta: Bose population must be nonnegative");
    }
}

}  // namespace

double SystemSpec::level_capacity() const {
    double cap = 0.0;
    for (const Level& level : levels) cap += level.z;
    return cap;
}

void SystemSpec::validate() const {
    if (levels.empty()) throw std::invalid_argument("system: no levels");
    for (const Level& level : levels) {
        if (!(level.z >= 1.0)) throw std::invalid_argument("system: degeneracy z must be >= 1");
        if (!std::isfinite(level.xi)) throw std::invalid_argument("system: xi must be finite");
    }
    if (!(volume > 0.0)) throw std::invalid_argument("system: volume must be positive");
    if (!(alpha > 0.0)) throw std::invalid_argument("system: alpha must be positive");
    if (!(n_total > 0.0)) throw std::invalid_argument("system: particle number must be positive");
    if (statistics == Statistics::fermi && n_total > level_capacity()) {
        throw std::invalid_argument("system: Fermi particle number exceeds total degeneracy");
    }
}

double level_energy(const Level& level, double volume, double alpha) {
    return level.xi * std::pow(volume, -alpha);
}

double level_energy_dV(const Level& level, double volume, double alpha) {
    return -alpha * level_energy(level, volume, alpha) / volume;
}

double level_energy_d2V(const Level& level, double volume, double alpha) {
    return alpha * (alpha + 1.0) * level_energy(level, volume, alpha) / (volume * volume);
}

double theta_bose(double z, double n) {
    check_population(Statistics::bose, z, n);
    const double zn = z * n;
    return digamma(zn + z) - digamma(zn + 1.0);
}

double theta_bose_deriv(double z, double n) {
    check_population(Statistics::bose, z, n);
    const double zn = z * n;
    return trigamma(zn + z) - trigamma(zn + 1.0);
}

double theta_fermi(double z, double n) {
    check_population(Statistics::fermi, z, n);
    const double zn = z * n;
    const double zh = z - zn;  // hole count, keeps n <-> 1-n evaluation symmetric
    return digamma(zh + 1.0) - digamma(zn + 1.0);
}

double theta_fermi_deriv(double z, double n) {
    check_population(Statistics::fermi, z, n);
    const double zn = z * n;
    const double zh = z - zn;
    return -trigamma(zh + 1.0) - trigamma(zn + 1.0);
}

double theta(Statistics kind, double z, double n) {
    return kind == Statistics::fermi ? theta_fermi(z, n) : theta_bose(z, n);
}

double theta_deriv(Statistics kind, double z, double n) {
    return kind == Statistics::fermi ? theta_fermi_deriv(z, n) : theta_bose_deriv(z, n);
}

double level_entropy(Statistics kind, double z, double n) {
    check_population(kind, z, n);
    const double zn = z * n;
    if (kind == Statistics::bose) {
        return ln_gamma(zn + z) - ln_gamma(zn + 1.0) - ln_gamma(z);
    }
    // ln[Gamma(z+1) / (Gamma(zn+1) Gamma(z-zn+1))], evaluated with the two
    // subtracted arguments in a fixed order so S(n) == S(1-n) bit for bit.
    double a = zn;
    double b = z - zn;
    if (a > b) std::swap(a, b);
    return ln_gamma(z + 1.0) - ln_gamma(a + 1.0) - ln_gamma(b + 1.0);
}

double level_entropy_deriv(Statistics kind, double z, double n) {
    return z * theta(kind, z, n);
}

double phi_diff(Statistics kind, double z1, double z2, double n2, double n1) {
    return theta(kind, z2, n2) - theta(kind, z1, n1);
}

}  // namespace qstat
