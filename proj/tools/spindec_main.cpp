// spindec — spin tunneling and phonon-bath decoherence for anisotropic
// magnetic particles: ground-doublet splittings, tunneling probability,
// linear-entropy rates, parameter sweeps, and a brute-force single-mode
// evolution for cross-checking the perturbative rates.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spindec/bath.hpp"
#include "spindec/emit.hpp"
#include "spindec/oracle.hpp"
#include "spindec/presets.hpp"
#include "spindec/splitting.hpp"
#include "spindec/sweep.hpp"

namespace {

using namespace spindec;

struct CommonOptions {
    std::string preset = "mn12";
    std::optional<double> A, B, s, Bint, rho, c;
    std::string out;        // empty = stdout
    std::string format = "csv";
    unsigned jobs = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--preset", opts.preset, "Preset name (mn12, spm) or config file path");
    cmd->add_option("--A", opts.A, "Easy-axis anisotropy A (J)");
    cmd->add_option("--B", opts.B, "Transverse anisotropy B (J)");
    cmd->add_option("--s", opts.s, "Spin quantum number (integer or half-integer)");
    cmd->add_option("--Bint", opts.Bint, "Bath interaction constant (J)");
    cmd->add_option("--rho", opts.rho, "Mass density (kg/m^3)");
    cmd->add_option("--c", opts.c, "Sound velocity (m/s)");
    cmd->add_option("--out", opts.out, "Output file (default: stdout)");
    cmd->add_option("--format", opts.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--jobs", opts.jobs, "Sweep worker count (default: available processors)");
}

Preset resolve_preset(const CommonOptions& opts) {
    Preset p = load_preset(opts.preset);
    const double s = opts.s.value_or(p.sys.s());
    const double A = opts.A.value_or(p.sys.A);
    const double B = opts.B.value_or(p.sys.B);
    const SpinSystem sys = SpinSystem::from_s(s, A, B);
    const BathParams bath(opts.Bint.value_or(p.bath.B_int), opts.rho.value_or(p.bath.rho),
                          opts.c.value_or(p.bath.c));
    if (sys.transverse_regime_warning()) {
        std::fprintf(stderr, "warning: B/A = %g exceeds the A >> B regime (threshold 0.1)\n",
                     sys.B / sys.A);
    }
    return Preset{p.name, sys, bath};
}

EmitFormat resolve_format(const CommonOptions& opts) {
    return opts.format == "json" ? EmitFormat::json : EmitFormat::csv;
}

void write_table(const Table& table, const CommonOptions& opts) {
    if (opts.out.empty()) {
        emit(table, resolve_format(opts), std::cout);
    } else {
        emit_to_file(table, resolve_format(opts), opts.out);
    }
}

void add_context_columns(Table& table) {
    for (const char* name : {"s", "A_J", "B_J", "Bint_J", "rho_kg_m3", "c_m_s"}) {
        table.columns.push_back(name);
    }
}

void add_context_cells(std::vector<Cell>& row, const Preset& p) {
    row.push_back(Cell::plain(p.sys.s()));
    row.push_back(Cell::sci(p.sys.A));
    row.push_back(Cell::sci(p.sys.B));
    row.push_back(Cell::sci(p.bath.B_int));
    row.push_back(Cell::sci(p.bath.rho));
    row.push_back(Cell::sci(p.bath.c));
}

double strict_stod(const std::string& item, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + ": cannot parse number '" + item + "'");
    }
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(strict_stod(item, what));
    }
    if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
    return out;
}

int run_splitting(const CommonOptions& opts) {
    const Preset p = resolve_preset(opts);
    const SplittingResult r = exact_splitting(p.sys);

    Table table;
    table.columns = {"delta_e_exact_J", "below_resolution",  "delta_e_inst_J",
                     "inst_sign",       "inst_log_abs",      "delta_omega_inst_rad_s",
                     "e0_J",            "e1_J"};
    std::vector<Cell> row{Cell::sci(r.delta_e_exact),
                          Cell::integer(r.below_resolution ? 1 : 0),
                          Cell::sci(r.delta_e_instanton.value()),
                          Cell::integer(r.delta_e_instanton.sign),
                          Cell::sci(r.delta_e_instanton.log_abs),
                          Cell::sci(r.delta_omega_inst),
                          Cell::sci(r.e0),
                          Cell::sci(r.e1)};
    add_context_columns(table);
    add_context_cells(row, p);
    table.rows.push_back(std::move(row));
    write_table(table, opts);
    return 0;
}

int run_tunnel_prob(const CommonOptions& opts, double T, double t_max, unsigned steps,
                    const std::string& form_name) {
    if (steps == 0) throw std::invalid_argument("tunnel-prob: --steps must be >= 1");
    if (!(t_max >= 0.0)) throw std::invalid_argument("tunnel-prob: --t-max must be >= 0");
    const Preset p = resolve_preset(opts);
    const ProbabilityForm form =
        form_name == "bracket" ? ProbabilityForm::bracket : ProbabilityForm::exponential;
    const Thermal thermal(T);

    Table table;
    table.columns = {"t_s", "T_K", "p_minus_s", "p_within_validity"};
    add_context_columns(table);
    for (unsigned k = 0; k <= steps; ++k) {
        const double t = t_max * static_cast<double>(k) / static_cast<double>(steps);
        const TunnelingProbability prob = tunneling_probability(p.sys, p.bath, thermal, t, form);
        std::vector<Cell> row{Cell::sci(t), Cell::plain(T), Cell::sci(prob.value),
                              Cell::integer(prob.within_validity ? 1 : 0)};
        add_context_cells(row, p);
        table.rows.push_back(std::move(row));
    }
    write_table(table, opts);
    return 0;
}

int run_entropy_rate(const CommonOptions& opts, double T, double m_value) {
    const Preset p = resolve_preset(opts);
    const RateResult r = entropy_rate(p.sys, p.bath, Thermal(T), HalfInt::from_double(m_value));

    Table table;
    table.columns = {"m", "T_K", "rate_per_s", "tau_dec_s"};
    std::vector<Cell> row{Cell::plain(m_value), Cell::plain(T), Cell::sci(r.rate),
                          Cell::sci(r.time)};
    add_context_columns(table);
    add_context_cells(row, p);
    table.rows.push_back(std::move(row));
    write_table(table, opts);
    return 0;
}

int run_sweep_cmd(const CommonOptions& opts, const std::string& var_name,
                  const std::string& grid_range, const std::string& grid_list,
                  const std::string& outputs_name, const std::string& temps_text,
                  double m_value_fixed, bool m_fixed_given, double time_fixed,
                  const std::string& form_name) {
    const Preset p = resolve_preset(opts);
    SweepSpec spec(p.sys, p.bath);
    spec.jobs = opts.jobs;
    spec.form = form_name == "bracket" ? ProbabilityForm::bracket : ProbabilityForm::exponential;
    spec.time = time_fixed;
    if (m_fixed_given) spec.m = HalfInt::from_double(m_value_fixed);

    if (var_name == "initial_m") {
        spec.variable = SweepVariable::initial_m;
    } else if (var_name == "temperature") {
        spec.variable = SweepVariable::temperature;
    } else if (var_name == "time") {
        spec.variable = SweepVariable::time;
    } else if (var_name == "B_over_A") {
        spec.variable = SweepVariable::b_over_a;
    } else {
        throw std::invalid_argument("sweep: unknown variable '" + var_name +
                                    "' (valid: initial_m, temperature, time, B_over_A)");
    }

    if (!grid_list.empty()) {
        spec.grid = GridSpec::explicit_points(parse_double_list(grid_list, "--grid-list"));
    } else if (!grid_range.empty()) {
        // min:max:count:linear|log
        std::vector<std::string> parts;
        std::stringstream ss(grid_range);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        if (parts.size() != 4 || (parts[3] != "linear" && parts[3] != "log")) {
            throw std::invalid_argument("--grid: expected min:max:count:linear|log");
        }
        const double count_val = strict_stod(parts[2], "--grid count");
        if (!(count_val >= 1.0) || count_val != std::floor(count_val) || count_val > 1e9) {
            throw std::invalid_argument("--grid: count must be a positive integer");
        }
        spec.grid = GridSpec::range(strict_stod(parts[0], "--grid min"),
                                    strict_stod(parts[1], "--grid max"),
                                    static_cast<unsigned>(count_val), parts[3] == "log");
    } else if (spec.variable == SweepVariable::initial_m) {
        // default: the full level range, one row per level
        const double s = p.sys.s();
        spec.grid = GridSpec::range(-s, s, p.sys.twice_s + 1, false);
    } else {
        throw std::invalid_argument("sweep: --grid or --grid-list is required");
    }

    if (spec.variable != SweepVariable::temperature) {
        spec.temperatures = parse_double_list(temps_text, "--T");
    } else if (temps_text != "2,4,8") { // non-default fixed list conflicts with the grid
        throw std::invalid_argument("sweep: temperature sweeps take the grid as T; drop --T");
    }

    spec.outputs.clear();
    for (const std::string& name : [&] {
             std::vector<std::string> names;
             std::stringstream ss(outputs_name);
             std::string item;
             while (std::getline(ss, item, ',')) names.push_back(item);
             return names;
         }()) {
        if (name == "entropy_rate") spec.outputs.push_back(OutputQuantity::entropy_rate);
        else if (name == "tau_dec") spec.outputs.push_back(OutputQuantity::tau_dec);
        else if (name == "gamma") spec.outputs.push_back(OutputQuantity::gamma);
        else if (name == "p_minus_s") spec.outputs.push_back(OutputQuantity::p_minus_s);
        else if (name == "delta_e_exact") spec.outputs.push_back(OutputQuantity::delta_e_exact);
        else if (name == "delta_e_instanton")
            spec.outputs.push_back(OutputQuantity::delta_e_instanton);
        else
            throw std::invalid_argument(
                "sweep: unknown output '" + name +
                "' (valid: entropy_rate, tau_dec, gamma, p_minus_s, delta_e_exact, "
                "delta_e_instanton)");
    }

    write_table(run_sweep(spec), opts);
    return 0;
}

int run_oracle(const CommonOptions& opts, double mode_freq, double g, unsigned n_max,
               double t_max, unsigned steps, double m_value, const std::string& phonons,
               double bath_T, std::uint64_t seed, double fit_window) {
    const Preset p = resolve_preset(opts);
    OracleConfig cfg{p.sys};
    cfg.mode_freq = mode_freq;
    cfg.coupling = g;
    cfg.n_max = n_max;
    cfg.t_max = t_max;
    cfg.steps = steps;
    cfg.initial_m = HalfInt::from_double(m_value);
    cfg.bath_T = bath_T;
    cfg.seed = seed;
    if (phonons == "thermal") {
        cfg.initial_phonons = OracleConfig::InitialPhonons::thermal_sampled;
    } else if (phonons != "vacuum") {
        throw std::invalid_argument("oracle: --phonons must be vacuum or thermal");
    }

    const Trajectory traj = evolve(cfg);

    Table table;
    table.columns = {"t_s", "purity", "p_minus_s", "entropy"};
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        table.rows.push_back({Cell::sci(traj.times[i]), Cell::sci(traj.purity[i]),
                              Cell::sci(traj.p_minus_s[i]), Cell::sci(traj.entropy[i])});
    }
    write_table(table, opts);

    if (fit_window > 0.0) {
        const SlopeFit fit = fit_initial_slope(traj, fit_window);
        std::fprintf(stderr, "fitted_slope_per_s=%s r_squared=%s max_norm_drift=%s\n",
                     format_scientific(fit.slope).c_str(),
                     format_scientific(fit.r_squared).c_str(),
                     format_scientific(traj.max_norm_drift).c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin tunneling splittings and phonon-bath decoherence rates"};
    app.require_subcommand(1);

    CommonOptions opts;

    auto* splitting_cmd =
        app.add_subcommand("splitting", "Exact and instanton ground-doublet splitting");
    add_common(splitting_cmd, opts);

    auto* tunnel_cmd =
        app.add_subcommand("tunnel-prob", "Tunneling probability P_{-s}(t) over a time grid");
    add_common(tunnel_cmd, opts);
    double tp_T = 4.0, tp_tmax = 1.0;
    unsigned tp_steps = 200;
    std::string tp_form = "exponential";
    tunnel_cmd->add_option("--T", tp_T, "Temperature (K)");
    tunnel_cmd->add_option("--t-max", tp_tmax, "End of the time grid (s)");
    tunnel_cmd->add_option("--steps", tp_steps, "Number of grid steps");
    tunnel_cmd->add_option("--form", tp_form, "bracket or exponential")
        ->check(CLI::IsMember({"bracket", "exponential"}));

    auto* rate_cmd =
        app.add_subcommand("entropy-rate", "Linear-entropy rate and decoherence time");
    add_common(rate_cmd, opts);
    double er_T = 4.0, er_m = 10.0;
    rate_cmd->add_option("--T", er_T, "Temperature (K)");
    rate_cmd->add_option("--m", er_m, "Initial level m")->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep with CSV/JSON emission");
    add_common(sweep_cmd, opts);
    std::string sw_var = "initial_m", sw_grid, sw_grid_list, sw_outputs = "entropy_rate";
    std::string sw_T = "2,4,8", sw_form = "exponential";
    double sw_m = 0.0, sw_time = 0.0;
    bool sw_m_given = false;
    sweep_cmd->add_option("--var", sw_var, "initial_m, temperature, time, or B_over_A");
    sweep_cmd->add_option("--grid", sw_grid, "min:max:count:linear|log");
    sweep_cmd->add_option("--grid-list", sw_grid_list, "Comma-separated explicit grid");
    sweep_cmd->add_option("--outputs", sw_outputs, "Comma-separated output quantities");
    sweep_cmd->add_option("--T", sw_T, "Comma-separated temperatures (K) for non-T sweeps");
    auto* sw_m_opt = sweep_cmd->add_option("--m", sw_m, "Fixed level for non-m sweeps");
    sweep_cmd->add_option("--t", sw_time, "Fixed time (s) for p_minus_s in non-time sweeps");
    sweep_cmd->add_option("--form", sw_form, "bracket or exponential")
        ->check(CLI::IsMember({"bracket", "exponential"}));

    auto* oracle_cmd =
        app.add_subcommand("oracle", "Brute-force single-mode evolution (purity, population)");
    add_common(oracle_cmd, opts);
    double or_w0 = 0.0, or_g = 0.0, or_tmax = 1e-9, or_m = 0.0, or_T = 0.0, or_window = 0.0;
    unsigned or_nmax = 10, or_steps = 200;
    std::uint64_t or_seed = 0;
    std::string or_phonons = "vacuum";
    oracle_cmd->add_option("--mode-freq", or_w0, "Phonon mode frequency (rad/s)")->required();
    oracle_cmd->add_option("--g", or_g, "Spin-mode coupling (J)")->required();
    oracle_cmd->add_option("--n-max", or_nmax, "Phonon truncation");
    oracle_cmd->add_option("--t-max", or_tmax, "Trajectory length (s)")->required();
    oracle_cmd->add_option("--steps", or_steps, "Samples along the trajectory");
    oracle_cmd->add_option("--m", or_m, "Initial level m")->required();
    oracle_cmd->add_option("--phonons", or_phonons, "vacuum or thermal");
    oracle_cmd->add_option("--bath-T", or_T, "Initial phonon temperature (K)");
    oracle_cmd->add_option("--seed", or_seed, "Seed for thermal sampling");
    oracle_cmd->add_option("--fit-window", or_window,
                           "Fit entropy slope over this fraction of t_max (stderr summary)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // validation errors exit 2, help/version exit 0
    }

    try {
        sw_m_given = sw_m_opt->count() > 0;
        if (splitting_cmd->parsed()) return run_splitting(opts);
        if (tunnel_cmd->parsed()) return run_tunnel_prob(opts, tp_T, tp_tmax, tp_steps, tp_form);
        if (rate_cmd->parsed()) return run_entropy_rate(opts, er_T, er_m);
        if (sweep_cmd->parsed()) {
            return run_sweep_cmd(opts, sw_var, sw_grid, sw_grid_list, sw_outputs, sw_T, sw_m,
                                 sw_m_given, sw_time, sw_form);
        }
        if (oracle_cmd->parsed()) {
            return run_oracle(opts, or_w0, or_g, or_nmax, or_tmax, or_steps, or_m, or_phonons,
                              or_T, or_seed, or_window);
        }
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
