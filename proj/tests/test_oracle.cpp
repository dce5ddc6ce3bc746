#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <cstring>

#include "spindec/constants.hpp"
#include "spindec/oracle.hpp"
#include "spindec/splitting.hpp"

using namespace spindec;

namespace {

// The matching rule for single-mode weak-coupling checks: the universal
// second-order entropy growth for a pure product start |m> x |0> is
//   delta_S(t) = 2 g^2 (s+2^m + s-2^m) <(a+a^dag)^2>_vac t^2 / hbar^2,
// and the "matched golden-rule rate" is that curve pushed through the same
// windowed least-squares estimator as the measured trajectory (the
// delta-function broadening of the golden rule replaced by the finite fit
// window). Structural check: coefficients, g^2 scaling, vacuum Bose limit.
double matched_rate(const OracleConfig& cfg, double window_fraction) {
    const TransitionData td = transition_data(cfg.sys, cfg.initial_m);
    const double q =
        2.0 * cfg.coupling * cfg.coupling * (td.s_plus2 + td.s_minus2) / (k_hbar * k_hbar);
    Trajectory analytic;
    for (unsigned k = 0; k <= cfg.steps; ++k) {
        const double t = cfg.t_max * static_cast<double>(k) / static_cast<double>(cfg.steps);
        analytic.times.push_back(t);
        analytic.entropy.push_back(q * t * t);
    }
    return fit_initial_slope(analytic, window_fraction).slope;
}

OracleConfig weak_coupling_config(double g) {
    const double A = 1e-24, B = 1e-26;
    OracleConfig cfg{SpinSystem(2, A, B)};
    cfg.mode_freq = 4.0 * B / k_hbar; // resonant with the tunneling doublet
    cfg.coupling = g;
    cfg.n_max = 8;
    cfg.t_max = 1.5e-9;
    cfg.steps = 300;
    cfg.initial_m = HalfInt::from_double(1.0);
    return cfg;
}

} // namespace

TEST_CASE("config validation caps") {
    OracleConfig cfg{SpinSystem(2, 1e-24, 1e-26)};
    cfg.mode_freq = 1e9;
    cfg.t_max = 1e-9;
    cfg.steps = 200;
    cfg.initial_m = HalfInt::from_double(1.0);
    CHECK_NOTHROW(cfg.validate());

    OracleConfig big = cfg;
    big.sys = SpinSystem(8, 1e-24, 1e-26); // s = 4 > 3
    big.initial_m = HalfInt::from_double(4.0);
    CHECK_THROWS_AS(big.validate(), std::invalid_argument);

    OracleConfig wide = cfg;
    wide.sys = SpinSystem(6, 1e-24, 1e-26);
    wide.initial_m = HalfInt::from_double(3.0);
    wide.n_max = 20; // 7 * 21 = 147 > 124
    CHECK_THROWS_AS(wide.validate(), std::invalid_argument);

    OracleConfig coarse = cfg;
    coarse.steps = 50;
    CHECK_THROWS_AS(coarse.validate(), std::invalid_argument);

    OracleConfig deep = cfg;
    deep.n_max = 31;
    CHECK_THROWS_AS(deep.validate(), std::invalid_argument);

    OracleConfig bad_m = cfg;
    bad_m.initial_m = HalfInt::from_double(0.5);
    CHECK_THROWS_AS(bad_m.validate(), std::invalid_argument);
}

TEST_CASE("total Hamiltonian: g = 0 never mixes phonon numbers") {
    OracleConfig cfg{SpinSystem(2, 1e-24, 1e-26)};
    cfg.mode_freq = 1e9;
    cfg.coupling = 0.0;
    cfg.n_max = 3;
    cfg.t_max = 1e-9;
    cfg.steps = 100;
    cfg.initial_m = HalfInt::from_double(1.0);
    const Eigen::MatrixXd H = build_total_hamiltonian(cfg);
    const Eigen::Index nb = 4;
    for (Eigen::Index r = 0; r < H.rows(); ++r) {
        for (Eigen::Index c = 0; c < H.cols(); ++c) {
            if (r % nb != c % nb) CHECK(H(r, c) == 0.0);
        }
    }
    CHECK(H.isApprox(H.transpose(), 0.0));
}

TEST_CASE("total Hamiltonian: n_max = 0 kills the interaction") {
    OracleConfig cfg{SpinSystem(2, 1e-24, 1e-26)};
    cfg.mode_freq = 1e9;
    cfg.coupling = 5e-26;
    cfg.n_max = 0;
    cfg.t_max = 1e-9;
    cfg.steps = 100;
    cfg.initial_m = HalfInt::from_double(1.0);
    const Eigen::MatrixXd H = build_total_hamiltonian(cfg);
    const SpinMatrix hs = build_hamiltonian(cfg.sys);
    REQUIRE(H.rows() == 3);
    for (Eigen::Index i = 0; i < 3; ++i) {
        for (Eigen::Index j = 0; j < 3; ++j) {
            CHECK(H(i, j) == hs.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
        }
    }
}

TEST_CASE("total Hamiltonian: s=1, n_max=1 interaction entries are 2g") {
    const double g = 3e-27;
    OracleConfig cfg{SpinSystem(2, 1e-24, 1e-26)};
    cfg.mode_freq = 1e9;
    cfg.coupling = g;
    cfg.n_max = 1;
    cfg.t_max = 1e-9;
    cfg.steps = 100;
    cfg.initial_m = HalfInt::from_double(1.0);
    const Eigen::MatrixXd H = build_total_hamiltonian(cfg);
    REQUIRE(H.rows() == 6);
    // index = spin * 2 + n; spin 0 is m=-1, spin 2 is m=+1
    CHECK(H(5, 0) == 2.0 * g); // (m=+1, n=1) <- (m=-1, n=0)
    CHECK(H(0, 5) == 2.0 * g);
    CHECK(H(1, 4) == 2.0 * g); // (m=-1, n=1) <- (m=+1, n=0)
    CHECK(H(3, 0) == 0.0);     // no coupling into m=0
    CHECK(H(2, 2) == 0.0 + k_hbar * cfg.mode_freq * 0.0); // (m=0, n=0) diagonal is 0
    CHECK(H(3, 3) == k_hbar * cfg.mode_freq);
}

TEST_CASE("evolve: decoupled spin stays pure and Rabis at the exact splitting") {
    OracleConfig cfg = weak_coupling_config(0.0);
    cfg.t_max = 4.0 * 2.0 * M_PI / cfg.mode_freq; // several Rabi periods
    const Trajectory traj = evolve(cfg);

    CHECK(traj.max_norm_drift <= 1e-10);
    const double delta_omega = exact_splitting(cfg.sys).delta_e_exact / k_hbar;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        REQUIRE(std::abs(traj.purity[i] - 1.0) <= 1e-10);
        const double s = std::sin(0.5 * delta_omega * traj.times[i]);
        REQUIRE(std::abs(traj.p_minus_s[i] - s * s) <= 1e-8);
    }
    CHECK(traj.entropy.front() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("evolve: purity bounds hold even at strong coupling") {
    OracleConfig cfg = weak_coupling_config(2e-26); // strong enough to entangle
    const Trajectory traj = evolve(cfg);
    const double d_s = static_cast<double>(cfg.sys.dim());
    for (double p : traj.purity) {
        REQUIRE(p <= 1.0 + 1e-12);
        REQUIRE(p >= 1.0 / d_s - 1e-12);
    }
    CHECK(traj.max_norm_drift <= 1e-10);
}

TEST_CASE("evolve: weak-coupling entropy slope matches the windowed rate") {
    const double g = 2.48e-27;
    const double window = 0.4;
    OracleConfig cfg = weak_coupling_config(g);
    const Trajectory traj = evolve(cfg);

    const double predicted = matched_rate(cfg, window);
    CHECK(predicted * cfg.t_max <= 0.05); // perturbative budget for the check

    const SlopeFit fit = fit_initial_slope(traj, window);
    CHECK(fit.slope / predicted == doctest::Approx(1.0).epsilon(0.10));
    CHECK(fit.r_squared > 0.9);

    // coupling-squared scaling
    OracleConfig cfg2 = weak_coupling_config(2.0 * g);
    const double slope2 = fit_initial_slope(evolve(cfg2), window).slope;
    CHECK(slope2 / fit.slope == doctest::Approx(4.0).epsilon(0.10));
}

TEST_CASE("evolve: s=2 resonant decay channel reproduces the mode-matched rate") {
    const double A = 1e-24;
    OracleConfig cfg{SpinSystem(4, A, 0.0)};
    cfg.mode_freq = 4.0 * A / k_hbar; // resonant with |omega_{0,±2}|
    cfg.coupling = 1.2e-27;
    cfg.n_max = 10;
    cfg.t_max = 2e-11;
    cfg.steps = 300;
    cfg.initial_m = HalfInt::from_double(0.0);

    const Trajectory traj = evolve(cfg);
    const double window = 0.4;
    const double predicted = matched_rate(cfg, window);
    const SlopeFit fit = fit_initial_slope(traj, window);
    CHECK(fit.slope / predicted == doctest::Approx(1.0).epsilon(0.10));
}

TEST_CASE("thermal initial occupation is deterministic per seed") {
    OracleConfig cfg = weak_coupling_config(2.48e-27);
    cfg.initial_phonons = OracleConfig::InitialPhonons::thermal_sampled;
    cfg.bath_T = 0.02; // k_B T comparable to hbar w0
    cfg.seed = 42;
    const Trajectory a = evolve(cfg);
    const Trajectory b = evolve(cfg);
    REQUIRE(a.purity.size() == b.purity.size());
    CHECK(std::memcmp(a.purity.data(), b.purity.data(), a.purity.size() * sizeof(double)) == 0);
    CHECK(a.entropy.front() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("fit_initial_slope: exact line, zero data, quadratic bias bound") {
    Trajectory line;
    const double r = 3.7e4;
    for (int i = 0; i <= 200; ++i) {
        const double t = 1e-6 * i / 200.0;
        line.times.push_back(t);
        line.entropy.push_back(r * t);
    }
    const SlopeFit lf = fit_initial_slope(line, 0.5);
    CHECK(lf.slope == doctest::Approx(r).epsilon(1e-12));
    CHECK(lf.r_squared == doctest::Approx(1.0).epsilon(1e-12));

    Trajectory flat;
    for (int i = 0; i <= 200; ++i) {
        flat.times.push_back(1e-6 * i / 200.0);
        flat.entropy.push_back(0.0);
    }
    const SlopeFit ff = fit_initial_slope(flat, 0.5);
    CHECK(ff.slope == 0.0);
    CHECK(ff.r_squared == 1.0);

    // entropy = r t + q t^2: slope bias is bounded by |q| t_window
    const double q = 0.2 * r / 1e-6;
    Trajectory curved;
    for (int i = 0; i <= 400; ++i) {
        const double t = 1e-6 * i / 400.0;
        curved.times.push_back(t);
        curved.entropy.push_back(r * t + q * t * t);
    }
    const double w = 0.5 * 1e-6;
    const SlopeFit cf = fit_initial_slope(curved, 0.5);
    CHECK(std::abs(cf.slope - r) <= std::abs(q) * w * 1.05);

    Trajectory tiny;
    for (int i = 0; i <= 100; ++i) {
        tiny.times.push_back(static_cast<double>(i));
        tiny.entropy.push_back(0.0);
    }
    CHECK_THROWS_AS(fit_initial_slope(tiny, 0.05), std::invalid_argument); // 6 samples
    CHECK_THROWS_AS(fit_initial_slope(line, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(fit_initial_slope(line, 0.6), std::invalid_argument);
}
