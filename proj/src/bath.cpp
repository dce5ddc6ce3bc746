#include "spindec/bath.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spindec/constants.hpp"

namespace spindec {

namespace {

constexpr double k_inf = std::numeric_limits<double>::infinity();

// M c^2 omega_D^3 = 6 pi^2 rho c^5 (Debye cutoff with linear dispersion).
double debye_mass_factor(const BathParams& bath) {
    return 6.0 * M_PI * M_PI * bath.rho * std::pow(bath.c, 5);
}

// omega^3 / (1 - e^{-hbar omega / kB T}) with signed omega, as printed in
// the entropy formula. Exact T = 0 limits: omega^3 for omega > 0, 0 for
// omega < 0. The omega == 0 channel vanishes like omega^2 kT/hbar and is
// returned as its analytic limit 0.
double absorption_weighted_cube(double omega, double T) {
    if (omega == 0.0) return 0.0;
    if (T == 0.0) return omega > 0.0 ? omega * omega * omega : 0.0;
    const double y = k_hbar * omega / (k_boltzmann * T);
    const double denom = -std::expm1(-y); // 1 - e^{-y}, accurate near y = 0
    return omega * omega * omega / denom;
}

} // namespace

BathParams::BathParams(double B_int_, double rho_, double c_)
    : B_int(B_int_), rho(rho_), c(c_) {
    if (!(B_int >= 0.0) || !std::isfinite(B_int)) {
        throw std::invalid_argument("BathParams: B_int must be nonnegative and finite");
    }
    if (!(rho > 0.0) || !std::isfinite(rho)) {
        throw std::invalid_argument("BathParams: rho must be positive and finite");
    }
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("BathParams: c must be positive and finite");
    }
}

Thermal::Thermal(double T_) : T(T_) {
    if (!(T >= 0.0) || !std::isfinite(T)) {
        throw std::invalid_argument("Thermal: T must be nonnegative and finite");
    }
}

double spectral_density(const BathParams& bath, double omega) {
    if (omega < 0.0) throw std::invalid_argument("spectral_density: negative omega");
    return 3.0 * bath.B_int * bath.B_int * omega * omega * omega /
           (4.0 * M_PI * bath.rho * std::pow(bath.c, 5));
}

double bose_factor(double omega, Thermal T) {
    if (omega == 0.0) {
        throw std::invalid_argument("bose_factor: divergent at omega = 0");
    }
    if (T.T == 0.0) return omega > 0.0 ? 0.0 : -1.0;
    const double y = k_hbar * omega / (k_boltzmann * T.T);
    return 1.0 / std::expm1(y);
}

RateResult damping_rate(const SpinSystem& sys, const BathParams& bath, Thermal T) {
    if (sys.twice_s < 4) {
        throw std::invalid_argument("damping_rate: requires s >= 2");
    }
    const HalfInt m_top = HalfInt::from_twice(static_cast<int>(sys.twice_s));
    const TransitionData td = transition_data(sys, m_top);

    const double w = td.omega_down; // omega_{s,s-2}, negative
    const double thermal = w * w * w * bose_factor(w, T);
    const double rate = 18.0 * bath.B_int * bath.B_int * td.s_minus2 * thermal /
                        (k_hbar * debye_mass_factor(bath));
    if (rate < 0.0 || !std::isfinite(rate)) {
        throw std::logic_error("damping_rate: signed pieces produced a negative rate");
    }

    RateResult out{rate, rate > 0.0 ? 1.0 / rate : k_inf, {sys, bath, T.T, m_top}};
    return out;
}

TunnelingProbability tunneling_probability(const SpinSystem& sys, const BathParams& bath,
                                           Thermal T, double t, ProbabilityForm form) {
    if (t < 0.0) throw std::invalid_argument("tunneling_probability: t must be >= 0");

    // dOmega_inst t treated as 0 when the splitting is absent (half-integer
    // s or B = 0) or its log-magnitude is below the underflow cut.
    double sin2 = 0.0;
    if (sys.B > 0.0) {
        const LogScaledEnergy inst = instanton_splitting(sys);
        if (inst.sign != 0 && inst.log_abs >= k_log_underflow) {
            const double delta_omega = std::exp(inst.log_abs - std::log(k_hbar));
            const double s = std::sin(0.5 * delta_omega * t);
            sin2 = s * s;
        }
    }

    const double gamma_t = damping_rate(sys, bath, T).rate * t;

    TunnelingProbability out;
    if (form == ProbabilityForm::bracket) {
        out.value = sin2 * (1.0 - gamma_t); // literal perturbative bracket, may go negative
        out.within_validity = gamma_t <= 1.0;
    } else {
        out.value = std::clamp(sin2 * std::exp(-gamma_t), 0.0, 1.0);
        out.within_validity = true;
    }
    return out;
}

RateResult entropy_rate(const SpinSystem& sys, const BathParams& bath, Thermal T, HalfInt m) {
    const TransitionData td = transition_data(sys, m);

    const double pref = 3.0 * bath.B_int * bath.B_int /
                        (4.0 * M_PI * M_PI * k_hbar * bath.rho * std::pow(bath.c, 5));
    double sum = 0.0;
    const double up = td.s_plus2 == 0.0 ? 0.0
                                        : td.s_plus2 * absorption_weighted_cube(td.omega_up, T.T);
    const double down = td.s_minus2 == 0.0
                            ? 0.0
                            : td.s_minus2 * absorption_weighted_cube(td.omega_down, T.T);
    if (up < 0.0 || down < 0.0) {
        throw std::logic_error("entropy_rate: signed pieces produced a negative term");
    }
    sum = up + down;

    const double rate = pref * sum;
    RateResult out{rate, rate > 0.0 ? 1.0 / rate : k_inf, {sys, bath, T.T, m}};
    return out;
}

LinearEntropy linear_entropy(const SpinSystem& sys, const BathParams& bath, Thermal T,
                             HalfInt m, double t) {
    if (t < 0.0) throw std::invalid_argument("linear_entropy: t must be >= 0");
    const double rate = entropy_rate(sys, bath, T, m).rate;
    LinearEntropy out;
    out.value = rate * t;
    out.within_validity = out.value <= 1.0;
    return out;
}

} // namespace spindec
