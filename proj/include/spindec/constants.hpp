// constants.hpp — physical constants (CODATA exact-by-definition values)

#pragma once

namespace spindec {

inline constexpr double k_hbar = 1.054571817e-34;  // reduced Planck constant (J·s)
inline constexpr double k_boltzmann = 1.380649e-23; // Boltzmann constant (J/K)

// Natural-log magnitude below which an energy is treated as zero when it
// enters oscillatory phases (exp(-700) is already denormal territory).
inline constexpr double k_log_underflow = -700.0;

} // namespace spindec
