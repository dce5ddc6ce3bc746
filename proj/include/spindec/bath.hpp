// bath.hpp — Debye phonon bath: superohmic spectral density, Bose factors,
// the damping rate of the tunneling oscillation, the tunneling probability,
// and the linear-entropy growth rate with its decoherence time.

#pragma once

#include "spindec/spin_system.hpp"
#include "spindec/splitting.hpp"

namespace spindec {

// Bath constants. Particle mass and volume never appear separately: the
// combination M omega_D^3 equals 6 pi^2 rho c^3 under the Debye cutoff, so
// only the density is stored.
struct BathParams {
    double B_int; // overall interaction constant (J), >= 0
    double rho;   // mass density (kg/m^3), > 0
    double c;     // sound velocity (m/s), > 0

    BathParams(double B_int_, double rho_, double c_);
};

struct Thermal {
    double T; // K, >= 0; T = 0 is handled as an exact limit

    explicit Thermal(double T_);
};

struct RateContext {
    SpinSystem sys;
    BathParams bath;
    double T = 0.0;
    HalfInt m;
};

struct RateResult {
    double rate = 0.0; // 1/s, >= 0
    double time = 0.0; // s; +inf when rate == 0
    RateContext context;
};

// Superohmic spectral density J(omega) = 3 B_int^2 omega^3 / (4 pi rho c^5).
// Throws on negative omega.
double spectral_density(const BathParams& bath, double omega);

// 1/(exp(hbar omega / kB T) - 1) with exact T = 0 limits (0 for omega > 0,
// -1 for omega < 0). Throws on omega == 0 (no zero-frequency transition).
double bose_factor(double omega, Thermal T);

// Damping rate gamma(beta) of the tunneling oscillation, evaluated literally
// with the emission-convention thermal factor omega^3/(e^{hbar omega/kT}-1)
// at omega = omega_{s,s-2}. Requires s >= 2. The signed pieces must combine
// to a nonnegative rate; a negative result throws (sign-convention tripwire).
RateResult damping_rate(const SpinSystem& sys, const BathParams& bath, Thermal T);

enum class ProbabilityForm { bracket, exponential };

struct TunnelingProbability {
    double value = 0.0;
    bool within_validity = true; // bracket form only: false once gamma t > 1
};

// P_{-s}(t): sin^2(dOmega_inst t / 2) times either the literal perturbative
// bracket [1 - gamma t] or its exponential resummation e^{-gamma t}
// (default downstream). dOmega_inst comes from the instanton splitting and
// is treated as zero once its log-magnitude falls below the underflow cut.
TunnelingProbability tunneling_probability(const SpinSystem& sys, const BathParams& bath,
                                           Thermal T, double t, ProbabilityForm form);

// Linear-entropy growth rate (the bracketed prefactor of t in the
// delta_S(t) formula); time field is the decoherence time 1/rate.
// Each retained term uses the absorption-convention thermal factor
// omega^3/(1 - e^{-hbar omega/kT}) with the signed frequency, and must be
// nonnegative; zero-coefficient channels are skipped.
RateResult entropy_rate(const SpinSystem& sys, const BathParams& bath, Thermal T, HalfInt m);

struct LinearEntropy {
    double value = 0.0;
    bool within_validity = true; // false when the linearized delta_S exceeds 1
};

// delta_S(t) = entropy_rate * t, reported raw.
LinearEntropy linear_entropy(const SpinSystem& sys, const BathParams& bath, Thermal T,
                             HalfInt m, double t);

} // namespace spindec
