// oracle.hpp — brute-force check of the perturbative rates: exact unitary
// evolution of a small spin coupled to one truncated phonon mode, with the
// reduced-state purity and |-s> population sampled along the trajectory.

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "spindec/spin_system.hpp"

namespace spindec {

struct OracleConfig {
    SpinSystem sys;                  // s <= 3
    double mode_freq = 0.0;          // phonon frequency (rad/s), >= 0
    double coupling = 0.0;           // g (J): B_int sqrt(hbar/2M omega) k folded into one scalar
    unsigned n_max = 10;             // phonon truncation, <= 30
    double t_max = 0.0;              // s, > 0
    unsigned steps = 100;            // >= 100
    HalfInt initial_m;

    enum class InitialPhonons { vacuum, thermal_sampled };
    InitialPhonons initial_phonons = InitialPhonons::vacuum;
    double bath_T = 0.0;             // K, used by thermal_sampled
    std::uint64_t seed = 0;          // deterministic thermal sampling

    void validate() const; // throws on cap violations; dim (2s+1)(n_max+1) <= 124
};

struct Trajectory {
    std::vector<double> times;     // s
    std::vector<double> purity;    // Tr rho_S^2
    std::vector<double> p_minus_s; // population of |-s>
    std::vector<double> entropy;   // 1 - purity
    double max_norm_drift = 0.0;   // max | ||psi||^2 - 1 | over the trajectory
};

// H_S tensor I + I tensor hbar omega a^dag a + g (S+^2 + S-^2) tensor (a^dag + a)
// on |m> tensor |n>, index = spin_index * (n_max+1) + n. Real symmetric.
Eigen::MatrixXd build_total_hamiltonian(const OracleConfig& cfg);

// Exact evolution of the pure product initial state by spectral decomposition
// (one eigensolve, phases exponentiated); reduced state by partial trace.
Trajectory evolve(const OracleConfig& cfg);

struct SlopeFit {
    double slope = 0.0;     // 1/s
    double r_squared = 0.0; // 1.0 for an exact fit (including all-zero data)
};

// Least-squares slope of entropy vs time over the initial window
// (window_fraction of t_max, in (0, 0.5]; needs >= 10 samples).
SlopeFit fit_initial_slope(const Trajectory& traj, double window_fraction);

} // namespace spindec
