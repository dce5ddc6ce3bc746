// spin_system.hpp — giant-spin model: |m> basis operators, the anisotropy
// Hamiltonian H = -A Sz^2 + B (S+^2 + S-^2), unperturbed energies and the
// m -> m±2 transition coefficients.

#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace spindec {

// Half-integer quantum numbers stored as twice their value, so s = 3/2 and
// m = -1/2 are exact. Construct via from_twice / from_double.
struct HalfInt {
    int twice = 0;

    constexpr HalfInt() = default;

    static constexpr HalfInt from_twice(int twice_value) { return HalfInt{twice_value}; }
    static HalfInt from_double(double value); // throws if not k/2

    constexpr double value() const { return 0.5 * twice; }
    constexpr bool is_integer() const { return twice % 2 == 0; }

    friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
    friend constexpr bool operator<(HalfInt a, HalfInt b) { return a.twice < b.twice; }

private:
    constexpr explicit HalfInt(int twice_value) : twice(twice_value) {}
};

// Spin quantum number and anisotropy constants. A is the easy-axis term,
// B the transverse term; the model regime is A >> B (warning, not error,
// when violated).
struct SpinSystem {
    unsigned twice_s; // 2s
    double A;         // easy-axis anisotropy (J), > 0
    double B;         // transverse anisotropy (J), >= 0

    SpinSystem(unsigned twice_s_, double A_, double B_);
    static SpinSystem from_s(double s, double A, double B);

    double s() const { return 0.5 * twice_s; }
    std::size_t dim() const { return twice_s + 1; }
    bool transverse_regime_warning() const { return B > 0.1 * A; }
    bool m_in_range(HalfInt m) const;
};

// Dense real matrix indexed by m = -s..+s ascending. Entries are J for
// Hamiltonians and dimensionless for bare spin operators (spin in units
// of hbar; all hbar factors live in the frequency/rate formulas).
struct SpinMatrix {
    std::size_t dim = 0;
    std::vector<double> entries; // row-major

    SpinMatrix() = default;
    explicit SpinMatrix(std::size_t d) : dim(d), entries(d * d, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
    double at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
};

// Per-level data entering the dissipative formulas: the coefficients
// s±2^m = (s∓m)(s±m+1)(s∓m-1)(s±m+2) and the signed transition
// frequencies ω_{m,m±2} = (E_m - E_{m±2})/hbar.
struct TransitionData {
    HalfInt m;
    double s_plus2 = 0.0;  // exact integer value, 0 when m+2 out of range
    double s_minus2 = 0.0; // exact integer value, 0 when m-2 out of range
    double omega_up = 0.0; // rad/s, signed; meaningful only when has_up
    double omega_down = 0.0;
    bool has_up = false;
    bool has_down = false;
};

// Exact integer coefficients (valid |2m| <= 2s, same parity as 2s).
std::int64_t s_plus2_coefficient(unsigned twice_s, int twice_m);
std::int64_t s_minus2_coefficient(unsigned twice_s, int twice_m);

SpinMatrix build_sz(const SpinSystem& sys);
SpinMatrix build_splus(const SpinSystem& sys);
SpinMatrix build_hamiltonian(const SpinSystem& sys);

// Zeroth-order level energy E_m = -A m^2 (J). B-corrections are dropped,
// consistent with the leading-order treatment of the dissipative rates.
double unperturbed_energy(const SpinSystem& sys, HalfInt m);

TransitionData transition_data(const SpinSystem& sys, HalfInt m);

} // namespace spindec
