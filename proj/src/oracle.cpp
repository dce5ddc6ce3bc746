#include "spindec/oracle.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "spindec/constants.hpp"

namespace spindec {

void OracleConfig::validate() const {
    if (sys.twice_s > 6) {
        throw std::invalid_argument("OracleConfig: oracle is limited to s <= 3");
    }
    if (!(mode_freq >= 0.0) || !std::isfinite(mode_freq)) {
        throw std::invalid_argument("OracleConfig: mode_freq must be nonnegative and finite");
    }
    if (!std::isfinite(coupling)) {
        throw std::invalid_argument("OracleConfig: coupling must be finite");
    }
    if (n_max > 30) {
        throw std::invalid_argument("OracleConfig: n_max is capped at 30");
    }
    if (sys.dim() * (n_max + 1) > 124) {
        throw std::invalid_argument("OracleConfig: total dimension cap 124 exceeded");
    }
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
        throw std::invalid_argument("OracleConfig: t_max must be positive and finite");
    }
    if (steps < 100) {
        throw std::invalid_argument("OracleConfig: steps must be >= 100");
    }
    if (!sys.m_in_range(initial_m)) {
        throw std::invalid_argument("OracleConfig: initial_m out of range");
    }
    if (initial_phonons == InitialPhonons::thermal_sampled && !(bath_T >= 0.0)) {
        throw std::invalid_argument("OracleConfig: bath_T must be nonnegative");
    }
}

namespace {

// S+^2 + S-^2: zero diagonal, couples m to m±2 with sqrt(s±2^m).
SpinMatrix build_coupling_operator(const SpinSystem& sys) {
    SpinMatrix out(sys.dim());
    const int ts = static_cast<int>(sys.twice_s);
    for (std::size_t i = 0; i + 2 < out.dim; ++i) {
        const int tm = -ts + 2 * static_cast<int>(i);
        const double c = std::sqrt(static_cast<double>(s_plus2_coefficient(sys.twice_s, tm)));
        out.at(i + 2, i) = c;
        out.at(i, i + 2) = c;
    }
    return out;
}

} // namespace

Eigen::MatrixXd build_total_hamiltonian(const OracleConfig& cfg) {
    cfg.validate();
    const auto ds = static_cast<Eigen::Index>(cfg.sys.dim());
    const auto nb = static_cast<Eigen::Index>(cfg.n_max + 1);

    const SpinMatrix hs = build_hamiltonian(cfg.sys);
    const SpinMatrix coupling_op = build_coupling_operator(cfg.sys);

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(ds * nb, ds * nb);
    for (Eigen::Index i = 0; i < ds; ++i) {
        for (Eigen::Index n = 0; n < nb; ++n) {
            const Eigen::Index row = i * nb + n;
            H(row, row) = hs.at(i, i) + k_hbar * cfg.mode_freq * static_cast<double>(n);
            // interaction, phonon ladder: <n+1| a^dag + a |n> = sqrt(n+1)
            if (n + 1 < nb) {
                const double x = std::sqrt(static_cast<double>(n + 1));
                for (Eigen::Index j = 0; j < ds; ++j) {
                    const double c = coupling_op.at(j, i);
                    if (c != 0.0) {
                        H(j * nb + n + 1, row) = cfg.coupling * c * x;
                        H(row, j * nb + n + 1) = cfg.coupling * c * x;
                    }
                }
            }
            // spin off-diagonal at equal phonon number (transverse part of H_S)
            for (Eigen::Index j = i + 1; j < ds; ++j) {
                const double c = hs.at(j, i);
                if (c != 0.0) {
                    H(j * nb + n, row) = c;
                    H(row, j * nb + n) = c;
                }
            }
        }
    }
    return H;
}

namespace {

// Phonon occupation sampled from the Bose-Einstein (geometric) distribution,
// deterministic for a fixed seed.
unsigned sample_thermal_occupation(const OracleConfig& cfg) {
    if (cfg.bath_T == 0.0 || cfg.mode_freq == 0.0) return 0;
    const double q = std::exp(-k_hbar * cfg.mode_freq / (k_boltzmann * cfg.bath_T));
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    // geometric occupation: P(n) = (1-q) q^n
    const double u = uni(rng);
    const auto n = static_cast<unsigned>(std::floor(std::log1p(-u) / std::log(q)));
    return std::min(n, cfg.n_max);
}

} // namespace

Trajectory evolve(const OracleConfig& cfg) {
    cfg.validate();
    const Eigen::MatrixXd H = build_total_hamiltonian(cfg);
    if (!H.allFinite()) {
        throw std::runtime_error("evolve: non-finite Hamiltonian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("evolve: eigensolve failed");
    }
    const Eigen::VectorXd& evals = solver.eigenvalues();
    const Eigen::MatrixXd& U = solver.eigenvectors();

    const auto ds = static_cast<Eigen::Index>(cfg.sys.dim());
    const auto nb = static_cast<Eigen::Index>(cfg.n_max + 1);

    const Eigen::Index spin_index =
        (cfg.initial_m.twice + static_cast<int>(cfg.sys.twice_s)) / 2;
    const Eigen::Index n0 =
        cfg.initial_phonons == OracleConfig::InitialPhonons::vacuum
            ? 0
            : static_cast<Eigen::Index>(sample_thermal_occupation(cfg));

    Eigen::VectorXd psi0 = Eigen::VectorXd::Zero(ds * nb);
    psi0(spin_index * nb + n0) = 1.0;
    const Eigen::VectorXd c0 = U.transpose() * psi0;

    Trajectory traj;
    traj.times.reserve(cfg.steps + 1);
    const std::complex<double> minus_i(0.0, -1.0);
    Eigen::VectorXcd phases(evals.size());
    Eigen::MatrixXcd amp(ds, nb);
    for (unsigned k = 0; k <= cfg.steps; ++k) {
        const double t = cfg.t_max * static_cast<double>(k) / static_cast<double>(cfg.steps);
        for (Eigen::Index j = 0; j < evals.size(); ++j) {
            phases(j) = std::exp(minus_i * (evals(j) * t / k_hbar)) * c0(j);
        }
        const Eigen::VectorXcd psi = U * phases;
        const double norm2 = psi.squaredNorm();
        traj.max_norm_drift = std::max(traj.max_norm_drift, std::abs(norm2 - 1.0));

        // reduced spin state rho_S = Tr_phonon |psi><psi|
        for (Eigen::Index i = 0; i < ds; ++i) {
            for (Eigen::Index n = 0; n < nb; ++n) amp(i, n) = psi(i * nb + n);
        }
        const Eigen::MatrixXcd rho = amp * amp.adjoint();
        const double purity = rho.squaredNorm(); // Tr rho^2 for Hermitian rho
        traj.times.push_back(t);
        traj.purity.push_back(purity);
        traj.p_minus_s.push_back(rho(0, 0).real());
        traj.entropy.push_back(1.0 - purity);
    }
    return traj;
}

SlopeFit fit_initial_slope(const Trajectory& traj, double window_fraction) {
    if (!(window_fraction > 0.0) || window_fraction > 0.5) {
        throw std::invalid_argument("fit_initial_slope: window must be in (0, 0.5]");
    }
    if (traj.times.empty()) {
        throw std::invalid_argument("fit_initial_slope: empty trajectory");
    }
    const double t_cut = window_fraction * traj.times.back();
    std::size_t count = 0;
    while (count < traj.times.size() && traj.times[count] <= t_cut) ++count;
    if (count < 10) {
        throw std::invalid_argument("fit_initial_slope: fewer than 10 samples in window");
    }

    double st = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        st += traj.times[i];
        sy += traj.entropy[i];
    }
    const double tbar = st / static_cast<double>(count);
    const double ybar = sy / static_cast<double>(count);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double dt = traj.times[i] - tbar;
        const double dy = traj.entropy[i] - ybar;
        sxx += dt * dt;
        sxy += dt * dy;
        syy += dy * dy;
    }

    SlopeFit fit;
    fit.slope = sxy / sxx;
    const double ss_res = syy - sxy * sxy / sxx;
    fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return fit;
}

} // namespace spindec
