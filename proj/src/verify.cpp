#include "qstat/verify.hpp"

#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "qstat/equilibrium.hpp"
#include "qstat/quadrature.hpp"
#include "qstat/specfun.hpp"
#include "qstat/thermo.hpp"
#include "qstat/two_level.hpp"

namespace qstat::verify {

namespace {

struct Checker {
    Report report;
    std::string current;
    bool current_pass = true;
    std::ostringstream detail;
    int detail_count = 0;

    void begin(const std::string& name) {
        current = name;
        current_pass = true;
        detail.str("");
        detail_count = 0;
    }
    void expect(bool ok, const std::string& what) {
        if (!ok) {
            current_pass = false;
            if (detail_count < 4) {
                if (detail_count) detail << "; ";
                detail << what;
            }
            ++detail_count;
        }
    }
    void expect_near(double got, double want, double tol, const std::string& what) {
        const bool ok = std::isfinite(got) && std::abs(got - want) <= tol;
        if (!ok) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%s: got %.10g want %.10g (tol %.3g)",
                          what.c_str(), got, want, tol);
            expect(false, buf);
        }
    }
    void end() {
        report.checks.push_back({current, current_pass, detail.str()});
    }
};

double rel_err(double got, double want) {
    return std::abs(got - want) / std::max(1.0, std::abs(want));
}

void check_specfun(Checker& c) {
    c.begin("specfun-reference-values");
    const double pi = 3.14159265358979323846;
    c.expect_near(ln_gamma(1.0), 0.0, 1e-13, "ln_gamma(1)");
    c.expect_near(ln_gamma(5.0), std::log(24.0), 1e-13, "ln_gamma(5)");
    c.expect_near(ln_gamma(0.5), 0.5 * std::log(pi), 1e-13, "ln_gamma(0.5)");
    c.expect_near(digamma(1.0), -euler_gamma, 1e-13, "digamma(1)");
    c.expect_near(digamma(0.5), -euler_gamma - 2.0 * std::log(2.0), 1e-13, "digamma(0.5)");
    c.expect_near(trigamma(1.0), pi * pi / 6.0, 1e-12, "trigamma(1)");
    c.expect_near(trigamma(0.5), pi * pi / 2.0, 1e-11, "trigamma(0.5)");
    c.end();

    c.begin("specfun-recurrences");
    std::mt19937 rng(421);
    std::uniform_real_distribution<double> xs(0.05, 50.0);
    for (int i = 0; i < 400; ++i) {
        const double x = xs(rng);
        c.expect(std::abs(digamma(x + 1.0) - digamma(x) - 1.0 / x) <= 1e-11,
                 "digamma recurrence");
        c.expect(std::abs(trigamma(x + 1.0) - trigamma(x) + 1.0 / (x * x)) <= 1e-10,
                 "trigamma recurrence");
    }
    c.end();
}

void check_oracle(Checker& c) {
    c.begin("theta-integral-oracle");
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> zs(1.0, 64.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 60; ++i) {
        const double z = zs(rng);
        const bool fermi = (i % 2) == 0;
        const Statistics kind = fermi ? Statistics::fermi : Statistics::bose;
        const double n = fermi ? u(rng) : 4.0 * u(rng);
        const double th = theta(kind, z, n);
        const double th1 = theta_deriv(kind, z, n);
        c.expect(std::abs(theta_integral_oracle(kind, z, n, 0) - th) <= 1e-8,
                 "theta vs quadrature");
        c.expect(std::abs(theta_integral_oracle(kind, z, n, 1) - th1) <= 1e-8,
                 "theta' vs quadrature");
    }
    c.end();
}

void check_monotonicity(Checker& c) {
    c.begin("theta-monotonicity");
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> zs(1.0 + 1e-6, 300.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const double z = zs(rng);
        const bool fermi = (i % 2) == 0;
        const Statistics kind = fermi ? Statistics::fermi : Statistics::bose;
        double n1 = fermi ? u(rng) : 8.0 * u(rng);
        double n2 = fermi ? u(rng) : 8.0 * u(rng);
        if (n1 > n2) std::swap(n1, n2);
        if (n1 == n2) continue;
        c.expect(theta(kind, z, n1) > theta(kind, z, n2), "theta strictly decreasing");
        c.expect(theta_deriv(kind, z, 0.5 * (n1 + n2)) < 0.0, "theta' negative");
    }
    c.end();
}

void check_classical_limit(Checker& c) {
    // 2e-4 needs z = 1e5 at the window edges (the 1/(2z) correction is
    // 9.5e-4 at n = 0.05 for z = 1e4); z = 1e4 passes on the interior.
    c.begin("classical-limit");
    for (double n = 0.05; n <= 0.95; n += 0.09) {
        c.expect(std::abs(theta_fermi(1e5, n) - std::log((1.0 - n) / n)) <= 2e-4,
                 "Fermi-Dirac limit");
    }
    for (double n = 0.05; n <= 20.0; n *= 1.9) {
        c.expect(std::abs(theta_bose(1e5, n) - std::log((n + 1.0) / n)) <= 2e-4,
                 "Bose-Einstein limit");
    }
    for (double n = 0.2; n <= 0.8001; n += 0.09) {
        c.expect(std::abs(theta_fermi(1e4, n) - std::log((1.0 - n) / n)) <= 2e-4,
                 "Fermi-Dirac limit, z = 1e4 interior");
    }
    c.end();
}

void check_state_invariants(Checker& c, const EquilibriumState& state,
                            const SystemSpec& system) {
    const double n_tol = 1e-10 * std::max(1.0, system.n_total);
    double total = 0.0;
    for (std::size_t j = 0; j < state.occupancies.size(); ++j) {
        total += system.levels[j].z * state.occupancies[j].n;
    }
    c.expect(std::abs(total - system.n_total) <= n_tol, "particle conservation");
    for (std::size_t j = 0; j < state.occupancies.size(); ++j) {
        const auto& occ = state.occupancies[j];
        const double eps = level_energy(system.levels[j], system.volume, system.alpha);
        const double x = (eps - state.mu) / state.temperature;
        const double z = system.levels[j].z;
        if (state.condensate_level && *state.condensate_level == j) continue;
        if (occ.pinned == Pinned::interior) {
            c.expect(std::abs(occ.theta - x) <= 1e-10, "interior residual");
        } else if (occ.pinned == Pinned::at_empty) {
            c.expect(x >= theta(system.statistics, z, 0.0) - 1e-12, "at_empty complementarity");
        } else {
            c.expect(x <= theta_fermi(z, 1.0) + 1e-12, "at_full complementarity");
        }
    }
}

void check_solver(Checker& c, const std::vector<presets::FigurePreset>& table) {
    c.begin("solver-complementarity");
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> taus(0.02, 50.0);
    for (const auto& preset : table) {
        if (preset.kind != presets::PresetKind::sweep) continue;
        two_level::TwoLevelParams params{preset.z1, preset.z2, preset.n_total, 1.0};
        const SystemSpec system = two_level::make_system(params, preset.statistics);
        for (int i = 0; i < 12; ++i) {
            const EquilibriumState state = solve_mu(taus(rng), system);
            check_state_invariants(c, state, system);
        }
    }
    c.end();

    c.begin("entropy-monotone-on-sweeps");
    for (const auto& preset : table) {
        if (preset.kind != presets::PresetKind::sweep) continue;
        two_level::TwoLevelParams params{preset.z1, preset.z2, preset.n_total, 1.0};
        const SystemSpec system = two_level::make_system(params, preset.statistics);
        double last = -1.0;
        for (int i = 0; i <= 60; ++i) {
            const double tau = 0.02 * std::pow(1000.0 / 0.02, i / 60.0);
            const EquilibriumState state = solve_mu(tau, system);
            c.expect(state.entropy >= last - 1e-9, "entropy nondecreasing in T");
            last = state.entropy;
        }
    }
    c.end();
}

void check_thermo_identities(Checker& c, const std::vector<presets::FigurePreset>& table) {
    c.begin("thermodynamic-identities");
    std::mt19937 rng(5150);
    std::uniform_real_distribution<double> taus(0.1, 5.0);
    int tested = 0;
    for (const auto& preset : table) {
        if (preset.kind != presets::PresetKind::sweep) continue;
        two_level::TwoLevelParams params{preset.z1, preset.z2, preset.n_total, 1.0};
        const SystemSpec system = two_level::make_system(params, preset.statistics);
        for (int i = 0; i < 10; ++i) {
            const EquilibriumState state = solve_mu(taus(rng), system);
            if (state.active_count < 2) continue;
            const ResponseSet r = evaluate(state, system);
            const double identity = state.temperature * system.volume * r.alpha_p *
                                    r.alpha_p / r.gamma_t;
            c.expect(rel_err(r.cp - r.cv, identity) <= 1e-8, "C_p - C_V identity");
            c.expect(r.cv >= 0.0 && r.cp >= r.cv - 1e-12, "stability: C_p >= C_V >= 0");
            c.expect(r.gamma_t > 0.0, "stability: gamma_T > 0");
            c.expect(std::abs(state.pressure * r.beta_v - r.alpha_p / r.gamma_t) <=
                         1e-8 * std::max(1.0, std::abs(r.alpha_p / r.gamma_t)),
                     "p beta_V = alpha_p / gamma_T");
            ++tested;
        }
    }
    c.expect(tested >= 30, "enough interior states sampled");
    c.end();

    c.begin("heat-capacity-vs-dS/dT");
    for (const auto& preset : table) {
        if (preset.kind != presets::PresetKind::sweep) continue;
        two_level::TwoLevelParams params{preset.z1, preset.z2, preset.n_total, 1.0};
        const SystemSpec system = two_level::make_system(params, preset.statistics);
        for (double tau : {0.3, 0.8}) {
            const EquilibriumState state = solve_mu(tau, system);
            if (state.active_count < 2) continue;
            const ResponseSet r = evaluate(state, system);
            const double h = 1e-4 * tau;
            const double s_plus = solve_mu(tau + h, system).entropy;
            const double s_minus = solve_mu(tau - h, system).entropy;
            const double cv_fd = tau * (s_plus - s_minus) / (2.0 * h);
            c.expect(rel_err(r.cv, cv_fd) <= 1e-4, "C_V matches T dS/dT");
        }
    }
    c.end();
}

void check_reference_table(Checker& c, const std::vector<presets::FigurePreset>& table) {
    c.begin("preset-table-coverage");
    c.expect(table.size() == 14, "14 presets expected");
    c.end();

    for (const auto& preset : table) {
        c.begin(std::string("preset-regression-") + preset.id);
        for (const auto& ev : preset.expected) {
            const double got = presets::compute_quantity(preset, ev);
            const double tol = std::max(ev.abs_tol, ev.rel_tol * std::abs(ev.value));
            c.expect_near(got, ev.value, tol, ev.label);
        }
        c.end();
    }
}

}  // namespace

bool Report::all_pass() const {
    for (const auto& check : checks) {
        if (!check.pass) return false;
    }
    return true;
}

Report run_all(const std::vector<presets::FigurePreset>& table) {
    Checker c;
    check_specfun(c);
    check_oracle(c);
    check_monotonicity(c);
    check_classical_limit(c);
    check_solver(c, table);
    check_thermo_identities(c, table);
    check_reference_table(c, table);
    return std::move(c.report);
}

Report run_all() { return run_all(presets::all_presets()); }

}  // namespace qstat::verify
