#include "qstat/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>

#include <CLI11.hpp>

#include "qstat/equilibrium.hpp"
#include "qstat/presets.hpp"
#include "qstat/thermo.hpp"
#include "qstat/two_level.hpp"
#include "qstat/verify.hpp"

namespace qstat::cli {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify_failure = 1;
constexpr int exit_config_error = 2;
constexpr int exit_numerical_error = 3;

std::string num(double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

const char* pinned_name(Pinned pinned) {
    switch (pinned) {
        case Pinned::interior: return "interior";
        case Pinned::at_empty: return "empty";
        case Pinned::at_full: return "full";
    }
    return "?";
}

// Destination stream: a file when --out names one, otherwise the captured
// stdout stream. LF line endings in all cases.
class Sink {
  public:
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty() || path == "-") {
            stream_ = &fallback;
        } else {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw std::invalid_argument("cannot open output file: " + path);
            stream_ = file_.get();
        }
    }
    std::ostream& get() { return *stream_; }

  private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_ = nullptr;
};

struct SystemFlags {
    std::string statistics = "fermi";
    double z1 = 1.0;
    double z2 = 1.0;
    double n = 1.0;
    double delta_eps = 1.0;
    double alpha = 2.0 / 3.0;
    double volume = 1.0;

    Statistics kind() const {
        return statistics == "bose" ? Statistics::bose : Statistics::fermi;
    }
    two_level::TwoLevelParams params() const { return {z1, z2, n, delta_eps}; }
};

void add_system_flags(CLI::App* cmd, SystemFlags& flags) {
    cmd->add_option("--statistics", flags.statistics, "fermi or bose")
        ->check(CLI::IsMember({"fermi", "bose"}))
        ->required();
    cmd->add_option("--z1", flags.z1, "degeneracy of the lower level")->required();
    cmd->add_option("--z2", flags.z2, "degeneracy of the upper level")->required();
    cmd->add_option("--n", flags.n, "total particle number N")->required();
    cmd->add_option("--delta-eps", flags.delta_eps, "level spacing")->capture_default_str();
    cmd->add_option("--alpha", flags.alpha, "volume exponent")->capture_default_str();
    cmd->add_option("--volume", flags.volume, "confining volume")->capture_default_str();
}

void add_format_flag(CLI::App* cmd, std::string& format) {
    cmd->add_option("--format", format, "output format")->capture_default_str()
        ->check(CLI::IsMember({"csv"}));
}

struct SweepGrid {
    double tau_min = 0.01;
    double tau_max = 3.0;
    int points = 300;
    bool log_spacing = false;

    double at(int i) const {
        if (points == 1) return tau_min;
        const double t = static_cast<double>(i) / (points - 1);
        if (log_spacing) return tau_min * std::pow(tau_max / tau_min, t);
        return tau_min + (tau_max - tau_min) * t;
    }
    void validate() const {
        if (!(tau_min > 0.0) || !(tau_max > tau_min) || points < 2) {
            throw std::invalid_argument("sweep: need 0 < tau-min < tau-max and points >= 2");
        }
    }
};

void print_state_report(std::ostream& out, const SystemFlags& flags, double tau,
                        const EquilibriumState& state, const ResponseSet& response) {
    out << "statistics=" << flags.statistics << "\n";
    out << "z1=" << num(flags.z1) << "\n";
    out << "z2=" << num(flags.z2) << "\n";
    out << "n_total=" << num(flags.n) << "\n";
    out << "delta_eps=" << num(flags.delta_eps) << "\n";
    out << "alpha=" << num(flags.alpha) << "\n";
    out << "volume=" << num(flags.volume) << "\n";
    out << "tau=" << num(tau) << "\n";
    out << "T=" << num(state.temperature) << "\n";
    out << "mu=" << num(state.mu) << "\n";
    out << "mu_indeterminate=" << (state.mu_indeterminate ? 1 : 0) << "\n";
    if (state.mu_indeterminate) {
        out << "mu_lo=" << num(state.mu_lo) << "\n";
        out << "mu_hi=" << num(state.mu_hi) << "\n";
    }
    for (std::size_t j = 0; j < state.occupancies.size(); ++j) {
        out << "n_" << (j + 1) << "=" << num(state.occupancies[j].n) << "\n";
        out << "pinned_" << (j + 1) << "=" << pinned_name(state.occupancies[j].pinned)
            << "\n";
    }
    out << "active_count=" << state.active_count << "\n";
    if (state.condensate_level) {
        out << "condensate_level=" << (*state.condensate_level + 1) << "\n";
    }
    out << "S=" << num(state.entropy) << "\n";
    out << "E=" << num(state.energy) << "\n";
    out << "p=" << num(state.pressure) << "\n";
    out << "C_V=" << num(response.cv) << "\n";
    out << "C_p=" << num(response.cp) << "\n";
    out << "alpha_p=" << num(response.alpha_p) << "\n";
    out << "gamma_T=" << num(response.gamma_t) << "\n";
    out << "beta_V=" << num(response.beta_v) << "\n";
    out << "region=" << two_level::region_label(
               two_level::classify_region(flags.params(), flags.kind()))
        << "\n";
}

int cmd_state(std::ostream& out, const SystemFlags& flags, double tau) {
    const SystemSpec system =
        two_level::make_system(flags.params(), flags.kind(), flags.volume, flags.alpha);
    EquilibriumState state;
    if (tau == 0.0) {
        state = ground_state(system);
    } else {
        state = solve_mu(tau * flags.delta_eps, system);
    }
    const ResponseSet response = evaluate(state, system);
    print_state_report(out, flags, tau, state, response);
    return exit_ok;
}

void write_sweep_csv(std::ostream& out, const SystemSpec& system, double delta_eps,
                     const SweepGrid& grid, bool raw_units) {
    out << "tau";
    if (raw_units) out << ",T";
    out << ",mu";
    for (std::size_t j = 1; j <= system.levels.size(); ++j) out << ",n_" << j;
    for (std::size_t j = 1; j <= system.levels.size(); ++j) out << ",pinned_" << j;
    out << ",S,E,p,C_V,C_p,alpha_p,gamma_T,beta_V\n";
    for (int i = 0; i < grid.points; ++i) {
        const double tau = grid.at(i);
        const EquilibriumState state = solve_mu(tau * delta_eps, system);
        const ResponseSet response = evaluate(state, system);
        out << num(tau);
        if (raw_units) out << "," << num(state.temperature);
        out << "," << num(state.mu);
        for (const auto& occ : state.occupancies) out << "," << num(occ.n);
        for (const auto& occ : state.occupancies) out << "," << pinned_name(occ.pinned);
        out << "," << num(state.entropy) << "," << num(state.energy) << ","
            << num(state.pressure) << "," << num(response.cv) << "," << num(response.cp)
            << "," << num(response.alpha_p) << "," << num(response.gamma_t) << ","
            << num(response.beta_v) << "\n";
    }
}

void write_plot_script(const std::string& path, const std::string& csv_path) {
    if (csv_path.empty() || csv_path == "-") {
        throw std::invalid_argument("--plot-script requires --out <file>");
    }
    std::ofstream script(path, std::ios::binary);
    if (!script) throw std::invalid_argument("cannot open plot script file: " + path);
    script << "set datafile separator ','\n"
           << "set key autotitle columnhead\n"
           << "set xlabel 'tau'\n"
           << "plot '" << csv_path << "' using 1:'S' with lines, \\\n"
           << "     '' using 1:'C_V' with lines, \\\n"
           << "     '' using 1:'C_p' with lines\n"
           << "pause -1\n";
}

int cmd_sweep(std::ostream& out_stream, const SystemFlags& flags, const SweepGrid& grid,
              bool raw_units, const std::string& out_path,
              const std::string& plot_script) {
    grid.validate();
    const SystemSpec system =
        two_level::make_system(flags.params(), flags.kind(), flags.volume, flags.alpha);
    Sink sink(out_path, out_stream);
    write_sweep_csv(sink.get(), system, flags.delta_eps, grid, raw_units);
    if (!plot_script.empty()) write_plot_script(plot_script, out_path);
    return exit_ok;
}

struct RegionGridFlags {
    double phi_min = 0.02, phi_max = 3.0;
    int phi_points = 100;
    double eta_min = 0.02, eta_max = 6.0;
    int eta_points = 100;

    two_level::GridSpec spec() const {
        return {phi_min, phi_max, phi_points, eta_min, eta_max, eta_points};
    }
};

int cmd_regions(std::ostream& out_stream, Statistics kind, double n_total,
                const RegionGridFlags& grid, const std::string& out_path) {
    const two_level::GridSpec spec = grid.spec();
    if (spec.phi_count < 2 || spec.eta_count < 2) {
        throw std::invalid_argument("regions: need at least 2 grid points per axis");
    }
    Sink sink(out_path, out_stream);
    std::ostream& out = sink.get();
    out << "row_type,phi,eta,label\n";
    for (int i = 0; i < spec.phi_count; ++i) {
        const double phi =
            spec.phi_min + (spec.phi_max - spec.phi_min) * i / (spec.phi_count - 1);
        for (int k = 0; k < spec.eta_count; ++k) {
            const double eta =
                spec.eta_min + (spec.eta_max - spec.eta_min) * k / (spec.eta_count - 1);
            const double z1 = n_total / phi;
            two_level::TwoLevelParams params{z1, eta * z1, n_total, 1.0};
            out << "cell," << num(phi) << "," << num(eta) << ","
                << two_level::region_label(two_level::classify_region(params, kind))
                << "\n";
        }
    }
    for (const auto& curve : two_level::region_boundaries(kind, n_total, spec)) {
        for (const auto& point : curve.points) {
            out << "boundary," << num(point.phi) << "," << num(point.eta) << ","
                << curve.name << "\n";
        }
    }
    return exit_ok;
}

int cmd_char_temps(std::ostream& out, const SystemFlags& flags) {
    const auto params = flags.params();
    const Statistics kind = flags.kind();
    const auto ct = two_level::char_temps(params, kind);
    out << "region=" << two_level::region_label(two_level::classify_region(params, kind))
        << "\n";
    auto emit = [&](const char* name, const std::optional<double>& t) {
        out << "tau_" << name << "=";
        if (t) {
            out << num(*t / params.delta_eps) << "\n";
            out << "T_" << name << "=" << num(*t) << "\n";
        } else {
            out << "absent\n";
        }
    };
    if (kind == Statistics::bose) {
        emit("B1", ct.b1);
        emit("B2", ct.b2);
    } else {
        emit("F1", ct.f1);
        emit("F2", ct.f2);
        emit("F3", ct.f3);
        emit("F4", ct.f4);
    }
    const auto jumps = two_level::capacity_jumps(params, kind, flags.volume, flags.alpha);
    out << "jump_count=" << jumps.size() << "\n";
    for (std::size_t i = 0; i < jumps.size(); ++i) {
        out << "jump_" << (i + 1) << "_tau=" << num(jumps[i].temperature / params.delta_eps)
            << "\n";
        out << "jump_" << (i + 1) << "_dCv=" << num(jumps[i].d_cv) << "\n";
        out << "jump_" << (i + 1) << "_dCp=" << num(jumps[i].d_cp) << "\n";
    }
    return exit_ok;
}

int cmd_verify(std::ostream& out) {
    const verify::Report report = verify::run_all();
    int passed = 0;
    for (const auto& check : report.checks) {
        out << "check " << check.name << ": " << (check.pass ? "PASS" : "FAIL");
        if (!check.pass && !check.detail.empty()) out << " (" << check.detail << ")";
        out << "\n";
        if (check.pass) ++passed;
    }
    out << "verify: " << passed << "/" << report.checks.size() << " checks passed\n";
    return report.all_pass() ? exit_ok : exit_verify_failure;
}

int cmd_preset_thresholds(std::ostream& out_stream, const presets::FigurePreset& preset,
                          const std::string& out_path) {
    Sink sink(out_path, out_stream);
    std::ostream& out = sink.get();
    out << "eta,tau_onset,tau_completion_empty,tau_completion_full\n";
    const int points = 400;
    const double eta_lo = 0.01;
    const double eta_hi = 100.0;
    for (int i = 0; i < points; ++i) {
        const double eta = eta_lo * std::pow(eta_hi / eta_lo, double(i) / (points - 1));
        two_level::TwoLevelParams params{preset.z1, eta * preset.z1, preset.n_total, 1.0};
        const auto ct = two_level::char_temps(params, preset.statistics);
        const auto onset = preset.statistics == Statistics::bose
                               ? ct.b1
                               : (preset.n_total <= preset.z1 ? ct.f1 : ct.f3);
        const auto completion_empty = preset.statistics == Statistics::bose ? ct.b2 : ct.f2;
        const auto completion_full = preset.statistics == Statistics::bose
                                         ? std::optional<double>{}
                                         : ct.f4;
        out << num(eta) << ",";
        out << (onset ? num(*onset) : "") << ",";
        out << (completion_empty ? num(*completion_empty) : "") << ",";
        out << (completion_full ? num(*completion_full) : "") << "\n";
    }
    return exit_ok;
}

// Flat key=value config file. Values become "--key value" arguments unless
// the command line already carries that flag; unknown keys fall through to
// the parser and are rejected there.
std::vector<std::string> apply_config_file(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw std::invalid_argument("--config needs a path");
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (path.empty()) return args;

    std::ifstream file(path);
    if (!file) throw std::invalid_argument("cannot read config file: " + path);
    auto has_flag = [&args](const std::string& flag) {
        for (const auto& arg : args) {
            if (arg == flag || arg.rfind(flag + "=", 0) == 0) return true;
        }
        return false;
    };
    std::string line;
    while (std::getline(file, line)) {
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        const auto eq = line.find('=', start);
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line is not key=value: " + line);
        }
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(start, eq - start));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("config line has no key: " + line);
        const std::string flag = "--" + key;
        if (has_flag(flag)) continue;
        if (value == "true") {
            args.push_back(flag);
        } else if (value == "false") {
            continue;
        } else {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
    CLI::App app{"equilibrium thermodynamics of finite Fermi/Bose level systems"};
    app.require_subcommand(0, 1);
    app.footer("Every subcommand also accepts --config <file>: flat key=value lines\n"
               "matching the long flag names; explicit flags override the file.");

    SystemFlags state_flags;
    double state_tau = 0.1;
    auto* state_cmd = app.add_subcommand("state", "solve one equilibrium state");
    add_system_flags(state_cmd, state_flags);
    state_cmd->add_option("--tau", state_tau, "temperature in units of delta-eps")
        ->required()
        ->check(CLI::NonNegativeNumber);
    std::string state_out = "-";
    state_cmd->add_option("--out", state_out, "output path (- for stdout)")->capture_default_str();

    SystemFlags sweep_flags;
    SweepGrid sweep_grid;
    bool sweep_raw = false;
    std::string sweep_out = "-";
    std::string sweep_format = "csv";
    std::string sweep_plot;
    auto* sweep_cmd = app.add_subcommand("sweep", "temperature sweep as CSV");
    add_system_flags(sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--tau-min", sweep_grid.tau_min, "lowest tau")->capture_default_str();
    sweep_cmd->add_option("--tau-max", sweep_grid.tau_max, "highest tau")->capture_default_str();
    sweep_cmd->add_option("--points", sweep_grid.points, "grid points")->capture_default_str();
    sweep_cmd->add_flag("--log", sweep_grid.log_spacing, "logarithmic tau spacing");
    sweep_cmd->add_flag("--raw", sweep_raw, "add raw-unit temperature column");
    sweep_cmd->add_option("--out", sweep_out, "output path (- for stdout)")->capture_default_str();
    sweep_cmd->add_option("--plot-script", sweep_plot, "write a gnuplot companion script");
    add_format_flag(sweep_cmd, sweep_format);

    std::string regions_statistics;
    double regions_n = 2.0;
    RegionGridFlags regions_grid;
    std::string regions_out = "-";
    std::string regions_format = "csv";
    auto* regions_cmd = app.add_subcommand("regions", "(phi, eta) region map as CSV");
    regions_cmd->add_option("--statistics", regions_statistics, "fermi or bose")
        ->check(CLI::IsMember({"fermi", "bose"}))
        ->required();
    regions_cmd->add_option("--n", regions_n, "total particle number N")->required();
    regions_cmd->add_option("--phi-min", regions_grid.phi_min, "")->capture_default_str();
    regions_cmd->add_option("--phi-max", regions_grid.phi_max, "")->capture_default_str();
    regions_cmd->add_option("--phi-points", regions_grid.phi_points, "")->capture_default_str();
    regions_cmd->add_option("--eta-min", regions_grid.eta_min, "")->capture_default_str();
    regions_cmd->add_option("--eta-max", regions_grid.eta_max, "")->capture_default_str();
    regions_cmd->add_option("--eta-points", regions_grid.eta_points, "")->capture_default_str();
    regions_cmd->add_option("--out", regions_out, "output path (- for stdout)")->capture_default_str();
    add_format_flag(regions_cmd, regions_format);

    SystemFlags char_flags;
    std::string char_out = "-";
    auto* char_cmd =
        app.add_subcommand("char-temps", "characteristic temperatures and jumps");
    add_system_flags(char_cmd, char_flags);
    char_cmd->add_option("--out", char_out, "output path (- for stdout)")
        ->capture_default_str();

    auto* verify_cmd = app.add_subcommand("verify", "run the self-verification suite");

    std::string preset_id;
    SweepGrid preset_grid;
    bool preset_raw = false;
    std::string preset_out = "-";
    std::string preset_plot;
    auto* preset_cmd = app.add_subcommand("preset", "run a bundled parameter preset");
    preset_cmd->add_option("id", preset_id, "preset id, or 'list'")->required();
    preset_cmd->add_option("--tau-min", preset_grid.tau_min, "")->capture_default_str();
    preset_cmd->add_option("--tau-max", preset_grid.tau_max, "")->capture_default_str();
    preset_cmd->add_option("--points", preset_grid.points, "")->capture_default_str();
    preset_cmd->add_flag("--log", preset_grid.log_spacing, "");
    preset_cmd->add_flag("--raw", preset_raw, "");
    preset_cmd->add_option("--out", preset_out, "output path (- for stdout)")->capture_default_str();
    preset_cmd->add_option("--plot-script", preset_plot, "");

    std::vector<std::string> args;
    try {
        args = apply_config_file(args_in);
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    }
    std::vector<const char*> argv;
    argv.push_back("qstat");
    for (const auto& arg : args) argv.push_back(arg.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config_error;
    }

    try {
        if (*state_cmd) {
            Sink sink(state_out, out);
            return cmd_state(sink.get(), state_flags, state_tau);
        }
        if (*sweep_cmd) {
            return cmd_sweep(out, sweep_flags, sweep_grid, sweep_raw, sweep_out,
                             sweep_plot);
        }
        if (*regions_cmd) {
            const Statistics kind =
                regions_statistics == "bose" ? Statistics::bose : Statistics::fermi;
            return cmd_regions(out, kind, regions_n, regions_grid, regions_out);
        }
        if (*char_cmd) {
            Sink sink(char_out, out);
            return cmd_char_temps(sink.get(), char_flags);
        }
        if (*verify_cmd) {
            return cmd_verify(out);
        }
        if (*preset_cmd) {
            if (preset_id == "list") {
                for (const auto& preset : presets::all_presets()) {
                    out << preset.id << ": " << preset.note << "\n";
                }
                return exit_ok;
            }
            const presets::FigurePreset* preset = presets::find_preset(preset_id);
            if (preset == nullptr) {
                err << "unknown preset: " << preset_id << "\n";
                return exit_config_error;
            }
            switch (preset->kind) {
                case presets::PresetKind::sweep: {
                    SystemFlags flags;
                    flags.statistics =
                        preset->statistics == Statistics::bose ? "bose" : "fermi";
                    flags.z1 = preset->z1;
                    flags.z2 = preset->z2;
                    flags.n = preset->n_total;
                    return cmd_sweep(out, flags, preset_grid, preset_raw, preset_out,
                                     preset_plot);
                }
                case presets::PresetKind::regions: {
                    RegionGridFlags grid;
                    grid.phi_min = preset->grid.phi_min;
                    grid.phi_max = preset->grid.phi_max;
                    grid.phi_points = preset->grid.phi_count;
                    grid.eta_min = preset->grid.eta_min;
                    grid.eta_max = preset->grid.eta_max;
                    grid.eta_points = preset->grid.eta_count;
                    return cmd_regions(out, preset->statistics, preset->n_total, grid,
                                       preset_out);
                }
                case presets::PresetKind::thresholds:
                    return cmd_preset_thresholds(out, *preset, preset_out);
            }
        }
        err << app.help();
        return exit_config_error;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::domain_error& e) {
        err << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return exit_numerical_error;
    }
}

}  // namespace qstat::cli
