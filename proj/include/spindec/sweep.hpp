// sweep.hpp — parameter sweeps over initial level, temperature, time, or
// B/A, evaluated by a worker pool with order-preserving assembly.

#pragma once

#include <vector>

#include "spindec/bath.hpp"
#include "spindec/emit.hpp"
#include "spindec/presets.hpp"

namespace spindec {

enum class SweepVariable { initial_m, temperature, time, b_over_a };

struct GridSpec {
    bool is_explicit = false;
    std::vector<double> points; // explicit grid
    double min = 0.0;
    double max = 0.0;
    unsigned count = 0;
    bool log_scale = false;

    static GridSpec explicit_points(std::vector<double> pts);
    static GridSpec range(double min, double max, unsigned count, bool log_scale);
    std::vector<double> materialize() const; // validates: nonempty, log needs min > 0
};

enum class OutputQuantity {
    entropy_rate, // also carries tau_dec
    tau_dec,      // alias of entropy_rate's column pair
    gamma,
    p_minus_s,
    delta_e_exact,
    delta_e_instanton,
};

struct SweepSpec {
    SweepVariable variable = SweepVariable::initial_m;
    GridSpec grid;
    SpinSystem sys;
    BathParams bath;
    std::vector<double> temperatures; // outer loop; must be empty for temperature sweeps
    HalfInt m;                        // fixed level for non-m sweeps
    double time = 0.0;                // fixed time for p_minus_s in non-time sweeps
    ProbabilityForm form = ProbabilityForm::exponential;
    std::vector<OutputQuantity> outputs;
    unsigned jobs = 0; // worker pool size; 0 = number of available processors

    SweepSpec(SpinSystem sys_, BathParams bath_)
        : sys(sys_), bath(bath_), m(HalfInt::from_twice(static_cast<int>(sys_.twice_s))) {}
};

// One row per (temperature, grid point), rows in that order; requested
// quantities contribute fixed column groups, followed by the full parameter
// context. If any point fails, a trailing "error" column is added and the
// sweep continues past the failure.
Table run_sweep(const SweepSpec& spec);

} // namespace spindec
