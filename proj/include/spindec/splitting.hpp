// splitting.hpp — ground-doublet tunneling splitting: exact diagonalization
// of the parity blocks (double-double refinement of the two lowest levels)
// and the closed-form instanton asymptotic.

#pragma once

#include "spindec/spin_system.hpp"

namespace spindec {

// Energy carried as sign and natural-log magnitude, so quantities like
// (B/A)^s at s ~ 3000 survive far below double range.
struct LogScaledEnergy {
    int sign = 0;                // -1, 0, +1
    double log_abs = -1.0 / 0.0; // ln(|E| / 1 J); -inf when sign == 0

    double value() const; // sign * exp(log_abs); underflows gracefully to 0
    bool underflows_double() const;
};

// Closed-form asymptotic splitting (8 A s^{3/2} / sqrt(pi)) (B/A)^s cos(pi s),
// evaluated in log space. cos(pi s) is resolved exactly from the parity of s
// (zero for half-integer s). Throws when B <= 0.
LogScaledEnergy instanton_splitting(const SpinSystem& sys);

struct SplittingResult {
    double e0 = 0.0;           // lowest level (J)
    double e1 = 0.0;           // second level (J)
    double delta_e_exact = 0.0; // E1 - E0 >= 0 (J)
    bool below_resolution = false; // splitting below the refined solver's resolution
    LogScaledEnergy delta_e_instanton;
    double delta_omega_inst = 0.0; // |dE_inst|/hbar (rad/s); 0 on underflow
};

// Two lowest levels over both parity blocks. The doublet difference is
// refined by Sturm bisection in double-double arithmetic with block entries
// rebuilt from exact integer products, so splittings down to ~1e-31 of the
// spectral width are meaningful; anything smaller is flagged.
// Throws when the dimension exceeds 20001.
SplittingResult exact_splitting(const SpinSystem& sys);

} // namespace spindec
