#include "spindec/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "spindec/splitting.hpp"

namespace spindec {

GridSpec GridSpec::explicit_points(std::vector<double> pts) {
    GridSpec g;
    g.is_explicit = true;
    g.points = std::move(pts);
    return g;
}

GridSpec GridSpec::range(double min, double max, unsigned count, bool log_scale) {
    GridSpec g;
    g.min = min;
    g.max = max;
    g.count = count;
    g.log_scale = log_scale;
    return g;
}

std::vector<double> GridSpec::materialize() const {
    if (is_explicit) {
        if (points.empty()) throw std::invalid_argument("grid: empty point list");
        return points;
    }
    if (count == 0) throw std::invalid_argument("grid: empty grid");
    if (log_scale && !(min > 0.0)) {
        throw std::invalid_argument("grid: log grids require min > 0");
    }
    if (count == 1) return {min};
    std::vector<double> out;
    out.reserve(count);
    if (log_scale) {
        const double l0 = std::log(min), l1 = std::log(max);
        for (unsigned i = 0; i < count; ++i) {
            out.push_back(std::exp(l0 + (l1 - l0) * i / (count - 1)));
        }
    } else {
        for (unsigned i = 0; i < count; ++i) {
            out.push_back(min + (max - min) * i / (count - 1));
        }
    }
    return out;
}

namespace {

struct ColumnGroup {
    std::vector<const char*> names;
};

ColumnGroup columns_for(OutputQuantity q) {
    switch (q) {
        case OutputQuantity::entropy_rate:
        case OutputQuantity::tau_dec:
            return {{"rate_per_s", "tau_dec_s"}};
        case OutputQuantity::gamma:
            return {{"gamma_per_s", "gamma_inv_s"}};
        case OutputQuantity::p_minus_s:
            return {{"p_minus_s", "p_within_validity"}};
        case OutputQuantity::delta_e_exact:
            return {{"delta_e_exact_J", "below_resolution"}};
        case OutputQuantity::delta_e_instanton:
            return {{"delta_e_inst_J", "inst_sign", "inst_log_abs", "delta_omega_inst_rad_s"}};
    }
    throw std::logic_error("columns_for: unreachable");
}

struct PointTask {
    double temperature = 0.0;
    double grid_value = 0.0;
};

struct PointResult {
    std::vector<Cell> cells;
    std::string error;
};

} // namespace

Table run_sweep(const SweepSpec& spec) {
    if (spec.outputs.empty()) {
        throw std::invalid_argument("run_sweep: outputs list is empty");
    }
    const std::vector<double> grid = spec.grid.materialize();

    std::vector<double> temps = spec.temperatures;
    if (spec.variable == SweepVariable::temperature) {
        if (!temps.empty()) {
            throw std::invalid_argument(
                "run_sweep: temperature sweeps take the grid as temperature; drop the fixed T list");
        }
        temps = {0.0}; // placeholder; the grid value is the temperature
    } else if (temps.empty()) {
        throw std::invalid_argument("run_sweep: at least one temperature is required");
    }

    // deduplicated output list (entropy_rate and tau_dec share a column pair)
    std::vector<OutputQuantity> outputs;
    for (OutputQuantity q : spec.outputs) {
        OutputQuantity canonical =
            q == OutputQuantity::tau_dec ? OutputQuantity::entropy_rate : q;
        bool seen = false;
        for (OutputQuantity have : outputs) seen = seen || have == canonical;
        if (!seen) outputs.push_back(canonical);
    }

    Table table;
    switch (spec.variable) {
        case SweepVariable::initial_m: table.columns.push_back("m"); break;
        case SweepVariable::temperature: break; // T_K below is the grid value
        case SweepVariable::time: table.columns.push_back("t_s"); break;
        case SweepVariable::b_over_a: table.columns.push_back("B_over_A"); break;
    }
    table.columns.push_back("T_K");
    for (OutputQuantity q : outputs) {
        for (const char* name : columns_for(q).names) table.columns.push_back(name);
    }
    for (const char* name : {"s", "A_J", "B_J", "Bint_J", "rho_kg_m3", "c_m_s"}) {
        table.columns.push_back(name);
    }

    std::vector<PointTask> tasks;
    for (double T : temps) {
        for (double x : grid) tasks.push_back({T, x});
    }

    auto evaluate = [&](const PointTask& task) {
        PointResult result;
        auto& cells = result.cells;
        const double T_val =
            spec.variable == SweepVariable::temperature ? task.grid_value : task.temperature;

        // grid/temperature context first, so failed points keep their labels
        switch (spec.variable) {
            case SweepVariable::initial_m: cells.push_back(Cell::plain(task.grid_value)); break;
            case SweepVariable::temperature: break;
            case SweepVariable::time: cells.push_back(Cell::sci(task.grid_value)); break;
            case SweepVariable::b_over_a: cells.push_back(Cell::sci(task.grid_value)); break;
        }
        cells.push_back(Cell::plain(T_val));

        try {
            SpinSystem sys = spec.sys;
            HalfInt m = spec.m;
            double t_fixed = spec.time;
            switch (spec.variable) {
                case SweepVariable::initial_m:
                    m = HalfInt::from_double(task.grid_value);
                    break;
                case SweepVariable::temperature:
                    break;
                case SweepVariable::time:
                    t_fixed = task.grid_value;
                    break;
                case SweepVariable::b_over_a:
                    sys = SpinSystem(sys.twice_s, sys.A, task.grid_value * sys.A);
                    break;
            }
            const Thermal T(T_val);

            for (OutputQuantity q : outputs) {
                switch (q) {
                    case OutputQuantity::entropy_rate:
                    case OutputQuantity::tau_dec: {
                        const RateResult r = entropy_rate(sys, spec.bath, T, m);
                        cells.push_back(Cell::sci(r.rate));
                        cells.push_back(Cell::sci(r.time));
                        break;
                    }
                    case OutputQuantity::gamma: {
                        const RateResult r = damping_rate(sys, spec.bath, T);
                        cells.push_back(Cell::sci(r.rate));
                        cells.push_back(Cell::sci(r.time));
                        break;
                    }
                    case OutputQuantity::p_minus_s: {
                        const TunnelingProbability p =
                            tunneling_probability(sys, spec.bath, T, t_fixed, spec.form);
                        cells.push_back(Cell::sci(p.value));
                        cells.push_back(Cell::integer(p.within_validity ? 1 : 0));
                        break;
                    }
                    case OutputQuantity::delta_e_exact: {
                        const SplittingResult r = exact_splitting(sys);
                        cells.push_back(Cell::sci(r.delta_e_exact));
                        cells.push_back(Cell::integer(r.below_resolution ? 1 : 0));
                        break;
                    }
                    case OutputQuantity::delta_e_instanton: {
                        const SplittingResult r = exact_splitting(sys);
                        cells.push_back(Cell::sci(r.delta_e_instanton.value()));
                        cells.push_back(Cell::integer(r.delta_e_instanton.sign));
                        cells.push_back(Cell::sci(r.delta_e_instanton.log_abs));
                        cells.push_back(Cell::sci(r.delta_omega_inst));
                        break;
                    }
                }
            }

            cells.push_back(Cell::plain(sys.s()));
            cells.push_back(Cell::sci(sys.A));
            cells.push_back(Cell::sci(sys.B));
            cells.push_back(Cell::sci(spec.bath.B_int));
            cells.push_back(Cell::sci(spec.bath.rho));
            cells.push_back(Cell::sci(spec.bath.c));
        } catch (const std::exception& e) {
            result.error = e.what();
            // keep the row aligned: grid/T columns that were already pushed
            // stay; pad the rest with empty cells
            cells.resize(table.columns.size(), Cell::text(""));
        }
        return result;
    };

    std::vector<PointResult> results(tasks.size());
    unsigned jobs = spec.jobs != 0 ? spec.jobs : std::thread::hardware_concurrency();
    if (jobs == 0) jobs = 1;
    jobs = std::min<unsigned>(jobs, tasks.size() == 0 ? 1 : static_cast<unsigned>(tasks.size()));

    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = evaluate(tasks[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned w = 0; w < jobs; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    results[i] = evaluate(tasks[i]);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    const bool any_error = std::any_of(results.begin(), results.end(),
                                       [](const PointResult& r) { return !r.error.empty(); });
    if (any_error) table.columns.push_back("error");
    for (auto& r : results) {
        if (any_error) r.cells.push_back(Cell::text(r.error));
        table.rows.push_back(std::move(r.cells));
    }
    return table;
}

} // namespace spindec
