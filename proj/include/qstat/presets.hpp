#ifndef QSTAT_PRESETS_HPP
#define QSTAT_PRESETS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qstat/stat_core.hpp"
#include "qstat/two_level.hpp"

// Bundled parameter presets. Each preset fixes one reference scenario
// (a two-level system, a threshold scan at fixed z1 and N, or a region
// grid) together with the frozen values its run is expected to reproduce.
// The regression machinery compares recomputed quantities against this
// table; tolerances are explicit per value.

namespace qstat::presets {

enum class PresetKind { sweep, regions, thresholds };

enum class Quantity {
    char_temp_tau,     // which = "B1","B2","F1".."F4"; param = z2 override (0: preset z2)
    entropy_zero_t,    // closed-form T = 0 entropy
    entropy_limit,     // plateau / high-T entropy
    jump_cv,           // which selects the characteristic temperature
    jump_cp,
    population_inf,    // which = "1" or "2"
    conservation_inf,  // sum z_j n_j_inf - N
    threshold_eta,     // which = "onset","completion-empty","completion-full","forbidden-edge"
    boundary_eta,      // which = curve name; param = phi of the probe point
};

struct ExpectedValue {
    Quantity quantity;
    const char* which;
    double param;      // meaning depends on quantity (z2 override or probe phi)
    double value;
    double abs_tol;
    double rel_tol;
    const char* label;
};

struct FigurePreset {
    const char* id;
    const char* note;
    PresetKind kind;
    Statistics statistics;
    double z1;
    double z2;        // 0 for thresholds/regions presets (z2 scans)
    double n_total;
    two_level::GridSpec grid;  // regions presets
    std::vector<ExpectedValue> expected;
};

const std::vector<FigurePreset>& all_presets();
const FigurePreset* find_preset(const std::string& id);

/// Recompute the quantity an ExpectedValue pins down. Returns NaN when the
/// quantity does not exist (absent characteristic temperature etc.).
double compute_quantity(const FigurePreset& preset, const ExpectedValue& ev);

}  // namespace qstat::presets

#endif
