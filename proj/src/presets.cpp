#include "qstat/presets.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace qstat::presets {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

// Shorthand tolerances. Values frozen from the reference scenarios carry
// the precision they were printed with: pct1 values additionally accept
// 0.01 absolute (whichever is looser).
ExpectedValue tau(const char* which, double value, const char* label, double abs_tol = 0.005,
                  double z2_override = 0.0) {
    return {Quantity::char_temp_tau, which, z2_override, value, abs_tol, 0.0, label};
}
ExpectedValue s0(double value, const char* label) {
    return {Quantity::entropy_zero_t, "", 0.0, value, 0.05, 0.0, label};
}
ExpectedValue s_lim(double value, const char* label) {
    return {Quantity::entropy_limit, "", 0.0, value, 0.05, 0.0, label};
}
ExpectedValue jump_v(const char* which, double value, const char* label) {
    return {Quantity::jump_cv, which, 0.0, value, 0.01, 0.01, label};
}
ExpectedValue jump_p(const char* which, double value, const char* label) {
    return {Quantity::jump_cp, which, 0.0, value, 0.01, 0.01, label};
}
ExpectedValue eta_th(const char* which, double value, const char* label,
                     double abs_tol = 0.0, double rel_tol = 0.01) {
    return {Quantity::threshold_eta, which, 0.0, value, abs_tol, rel_tol, label};
}

const two_level::GridSpec no_grid{};

std::vector<FigurePreset> build_table() {
    std::vector<FigurePreset> table;

    table.push_back({"fig1", "Bose region map, N = 2", PresetKind::regions,
                     Statistics::bose, 0.0, 0.0, 2.0,
                     {0.005, 2.0, 160, 0.05, 6.0, 120},
                     {
                         {Quantity::boundary_eta, "onset", 0.005, 0.22, 0.01, 0.0,
                          "onset boundary endpoint at phi -> 0"},
                         // Printed to one decimal; the exact phi -> 0 limit is e^1.5.
                         {Quantity::boundary_eta, "completion-empty", 0.005, 4.5, 0.05, 0.0,
                          "completion boundary endpoint at phi -> 0"},
                         {Quantity::boundary_eta, "onset", 2.0, 1.0, 0.01, 0.0,
                          "curve junction at phi = 2"},
                         {Quantity::boundary_eta, "completion-empty", 2.0, 1.0, 0.01, 0.0,
                          "curve junction at phi = 2"},
                     }});

    table.push_back({"fig2", "Bose threshold scan, z1 = 8, N = 2", PresetKind::thresholds,
                     Statistics::bose, 8.0, 0.0, 2.0, no_grid,
                     {
                         eta_th("onset", 0.33, "eta_1", 0.01, 0.0),
                         eta_th("completion-empty", 4.02, "eta_2", 0.01, 0.0),
                         tau("B1", 5.85, "point A1 (z2 = 3)", 0.005, 3.0),
                         tau("B2", 39.44, "point A2 (z2 = 33)", 0.005, 33.0),
                     }});

    table.push_back({"fig3a", "Bose sweep, region II", PresetKind::sweep, Statistics::bose,
                     8.0, 96.0, 16.0, no_grid,
                     {
                         tau("B1", 0.21, "tau_B1"),
                         s0(12.41, "S at T = 0"),
                         s_lim(43.74, "S at T -> inf"),
                         jump_v("B1", 13.84, "C_V jump at tau_B1"),
                         jump_p("B1", 14.92, "C_p jump at tau_B1"),
                         {Quantity::population_inf, "1", 0.0, 0.08, 0.005, 0.0, "n1 limit"},
                         {Quantity::population_inf, "2", 0.0, 0.16, 0.005, 0.0, "n2 limit"},
                         {Quantity::conservation_inf, "", 0.0, 0.0, 1e-9, 0.0,
                          "limit populations conserve N"},
                     }});

    table.push_back({"fig3b", "Bose sweep, region III", PresetKind::sweep, Statistics::bose,
                     8.0, 256.0, 8.0, no_grid,
                     {
                         tau("B1", 0.18, "tau_B1"),
                         // Printed to one decimal (computed value 1.1897).
                         tau("B2", 1.2, "tau_B2", 0.05),
                         s0(8.77, "S at T = 0"),
                         s_lim(33.87, "S plateau above tau_B2"),
                         jump_v("B1", 17.99, "C_V jump at tau_B1"),
                         jump_p("B1", 21.49, "C_p jump at tau_B1"),
                         jump_v("B2", -0.43, "C_V jump at tau_B2"),
                         jump_p("B2", -0.44, "C_p jump at tau_B2"),
                     }});

    table.push_back({"fig4", "Fermi region map, N = 2", PresetKind::regions,
                     Statistics::fermi, 0.0, 0.0, 2.0,
                     {0.02, 3.0, 150, 0.02, 6.0, 120},
                     {}});

    table.push_back({"fig5a", "Fermi threshold scan, z1 = 16, N = 2 (phi = 0.125)",
                     PresetKind::thresholds, Statistics::fermi, 16.0, 0.0, 2.0, no_grid,
                     {
                         eta_th("onset", 0.17, "eta_1"),
                         eta_th("completion-empty", 4.72, "eta_2"),
                         tau("F1", 12.2, "point A1 (z2 = 3)", 0.05, 3.0),
                         {Quantity::char_temp_tau, "F2", 76.0, 137.1, 0.0, 0.01,
                          "point A2 (z2 = 76)"},
                     }});

    table.push_back({"fig5b", "Fermi threshold scan, z1 = 16, N = 14 (phi = 0.875)",
                     PresetKind::thresholds, Statistics::fermi, 16.0, 0.0, 14.0, no_grid,
                     {
                         eta_th("completion-full", 0.086, "eta_4"),
                         eta_th("completion-empty", 27.5, "eta_2"),
                         tau("F1", 0.36, "point A1 (z2 = 1)", 0.005, 1.0),
                         tau("F4", 2.88, "point A4 (z2 = 1)", 0.005, 1.0),
                         {Quantity::char_temp_tau, "F2", 440.0, 1862.4, 0.0, 0.01,
                          "point A2 (z2 = 440)"},
                     }});

    table.push_back({"fig5c", "Fermi threshold scan, z1 = 16, N = 18 (phi = 1.125)",
                     PresetKind::thresholds, Statistics::fermi, 16.0, 0.0, 18.0, no_grid,
                     {
                         eta_th("forbidden-edge", 0.125, "eta_b"),
                         eta_th("completion-full", 0.22, "eta_4"),
                         eta_th("completion-empty", 35.1, "eta_2"),
                         tau("F3", 0.35, "point A3 (z2 = 3)", 0.005, 3.0),
                         tau("F4", 2.06, "point A4 (z2 = 3)", 0.005, 3.0),
                         {Quantity::char_temp_tau, "F2", 562.0, 802.1, 0.0, 0.01,
                          "point A2 (z2 = 562)"},
                     }});

    table.push_back({"fig5d", "Fermi threshold scan, z1 = 16, N = 40 (phi = 2.5)",
                     PresetKind::thresholds, Statistics::fermi, 16.0, 0.0, 40.0, no_grid,
                     {
                         eta_th("forbidden-edge", 1.5, "eta_b"),
                         eta_th("onset", 1.52, "eta_3"),
                         eta_th("completion-empty", 76.9, "eta_2"),
                         tau("F3", 1.65, "point A3 (z2 = 25)", 0.005, 25.0),
                         {Quantity::char_temp_tau, "F2", 1230.0, 13825.9, 0.0, 0.01,
                          "point A2 (z2 = 1230)"},
                     }});

    table.push_back({"fig6a", "Fermi sweep, region III_A'", PresetKind::sweep,
                     Statistics::fermi, 16.0, 1.0, 14.0, no_grid,
                     {
                         tau("F1", 0.36, "tau_F1"),
                         tau("F4", 2.88, "tau_F4"),
                         s0(4.8, "S at T = 0"),
                         s_lim(6.3, "S plateau above tau_F4"),
                         jump_v("F1", 2.75, "C_V jump at tau_F1"),
                         jump_p("F1", 2.83, "C_p jump at tau_F1"),
                         jump_v("F4", -0.045, "C_V jump at tau_F4"),
                         jump_p("F4", -0.04516, "C_p jump at tau_F4"),
                     }});

    table.push_back({"fig6b", "Fermi sweep, region II_A", PresetKind::sweep,
                     Statistics::fermi, 16.0, 16.0, 14.0, no_grid,
                     {
                         tau("F1", 0.19, "tau_F1"),
                         s0(4.8, "S at T = 0"),
                         s_lim(18.7, "S at T -> inf"),
                         jump_v("F1", 12.14, "C_V jump at tau_F1"),
                         jump_p("F1", 13.02, "C_p jump at tau_F1"),
                     }});

    table.push_back({"fig6c", "Fermi sweep, region III_A", PresetKind::sweep,
                     Statistics::fermi, 16.0, 1000.0, 14.0, no_grid,
                     {
                         tau("F1", 0.11, "tau_F1"),
                         tau("F2", 1.19, "tau_F2"),
                         s0(4.8, "S at T = 0"),
                         s_lim(71.4, "S plateau above tau_F2"),
                         jump_v("F1", 40.4, "C_V jump at tau_F1"),
                         jump_p("F1", 46.2, "C_p jump at tau_F1"),
                         jump_v("F2", -0.397, "C_V jump at tau_F2"),
                         jump_p("F2", -0.400, "C_p jump at tau_F2"),
                     }});

    table.push_back({"fig7a", "Fermi sweep, region II_B", PresetKind::sweep,
                     Statistics::fermi, 16.0, 128.0, 34.0, no_grid,
                     {
                         tau("F3", 0.19, "tau_F3"),
                         s0(49.7, "S at T = 0"),
                         s_lim(74.7, "S at T -> inf"),
                         jump_v("F3", 15.10, "C_V jump at tau_F3"),
                         jump_p("F3", 15.45, "C_p jump at tau_F3"),
                     }});

    table.push_back({"fig7b", "Fermi sweep, region III_B", PresetKind::sweep,
                     Statistics::fermi, 16.0, 2400.0, 34.0, no_grid,
                     {
                         tau("F3", 0.12, "tau_F3"),
                         tau("F2", 1.18, "tau_F2"),
                         s0(103.6, "S at T = 0"),
                         s_lim(175.8, "S plateau above tau_F2"),
                         jump_v("F3", 38.57, "C_V jump at tau_F3"),
                         jump_p("F3", 40.01, "C_p jump at tau_F3"),
                         jump_v("F2", -0.414, "C_V jump at tau_F2"),
                         jump_p("F2", -0.415, "C_p jump at tau_F2"),
                     }});

    return table;
}

two_level::TwoLevelParams preset_params(const FigurePreset& preset, double z2_override) {
    two_level::TwoLevelParams params;
    params.z1 = preset.z1;
    params.z2 = z2_override > 0.0 ? z2_override : preset.z2;
    params.n_total = preset.n_total;
    params.delta_eps = 1.0;
    return params;
}

std::optional<double> pick_char_temp(const two_level::CharTemps& ct, const char* which) {
    if (std::strcmp(which, "B1") == 0) return ct.b1;
    if (std::strcmp(which, "B2") == 0) return ct.b2;
    if (std::strcmp(which, "F1") == 0) return ct.f1;
    if (std::strcmp(which, "F2") == 0) return ct.f2;
    if (std::strcmp(which, "F3") == 0) return ct.f3;
    if (std::strcmp(which, "F4") == 0) return ct.f4;
    throw std::invalid_argument("unknown characteristic temperature tag");
}

std::optional<double> pick_threshold(const two_level::ThresholdEtas& th, const char* which) {
    if (std::strcmp(which, "onset") == 0) return th.onset;
    if (std::strcmp(which, "completion-empty") == 0) return th.completion_empty;
    if (std::strcmp(which, "completion-full") == 0) return th.completion_full;
    if (std::strcmp(which, "forbidden-edge") == 0) return th.forbidden_edge;
    throw std::invalid_argument("unknown threshold tag");
}

}  // namespace

const std::vector<FigurePreset>& all_presets() {
    static const std::vector<FigurePreset> table = build_table();
    return table;
}

const FigurePreset* find_preset(const std::string& id) {
    for (const FigurePreset& preset : all_presets()) {
        if (id == preset.id) return &preset;
    }
    return nullptr;
}

double compute_quantity(const FigurePreset& preset, const ExpectedValue& ev) {
    using two_level::CharTemps;
    switch (ev.quantity) {
        case Quantity::char_temp_tau: {
            const auto params = preset_params(preset, ev.param);
            const CharTemps ct = two_level::char_temps(params, preset.statistics);
            const auto t = pick_char_temp(ct, ev.which);
            return t ? *t / params.delta_eps : nan_value;
        }
        case Quantity::entropy_zero_t:
            return two_level::zero_temperature_entropy(preset_params(preset, 0.0),
                                                       preset.statistics);
        case Quantity::entropy_limit:
            return two_level::limiting_entropy(preset_params(preset, 0.0), preset.statistics)
                .value;
        case Quantity::jump_cv:
        case Quantity::jump_cp: {
            const auto params = preset_params(preset, 0.0);
            const CharTemps ct = two_level::char_temps(params, preset.statistics);
            const auto t = pick_char_temp(ct, ev.which);
            if (!t) return nan_value;
            for (const auto& jump : two_level::capacity_jumps(params, preset.statistics)) {
                if (std::abs(jump.temperature - *t) <= 1e-9 * std::max(1.0, *t)) {
                    return ev.quantity == Quantity::jump_cv ? jump.d_cv : jump.d_cp;
                }
            }
            return nan_value;
        }
        case Quantity::population_inf:
        case Quantity::conservation_inf: {
            const auto params = preset_params(preset, 0.0);
            const SystemSpec system = two_level::make_system(params, preset.statistics);
            const std::vector<double> n_inf = high_temperature_limit(system);
            if (ev.quantity == Quantity::population_inf) {
                return std::strcmp(ev.which, "1") == 0 ? n_inf[0] : n_inf[1];
            }
            return params.z1 * n_inf[0] + params.z2 * n_inf[1] - params.n_total;
        }
        case Quantity::threshold_eta: {
            const auto th =
                two_level::threshold_etas(preset.statistics, preset.z1, preset.n_total);
            const auto eta = pick_threshold(th, ev.which);
            return eta ? *eta : nan_value;
        }
        case Quantity::boundary_eta: {
            const double z1 = preset.n_total / ev.param;  // probe at phi = ev.param
            const auto th = two_level::threshold_etas(preset.statistics, z1, preset.n_total);
            const auto eta = pick_threshold(th, ev.which);
            return eta ? *eta : nan_value;
        }
    }
    return nan_value;
}

}  // namespace qstat::presets
