#ifndef QSTAT_VERIFY_HPP
#define QSTAT_VERIFY_HPP

#include <string>
#include <vector>

#include "qstat/presets.hpp"

// Self-verification: special-function identities, oracle agreement,
// solver invariants, thermodynamic identities, and the preset regression
// table. Table-driven so a perturbed table can be injected by tests.

namespace qstat::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Report {
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

Report run_all(const std::vector<presets::FigurePreset>& table);

/// Convenience: run against the built-in preset table.
Report run_all();

}  // namespace qstat::verify

#endif
