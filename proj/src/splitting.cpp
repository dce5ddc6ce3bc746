#include "spindec/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spindec/constants.hpp"
#include "spindec/dd.hpp"
#include "spindec/tridiag.hpp"

namespace spindec {

double LogScaledEnergy::value() const {
    if (sign == 0) return 0.0;
    return static_cast<double>(sign) * std::exp(log_abs);
}

bool LogScaledEnergy::underflows_double() const {
    return sign != 0 && log_abs < k_log_underflow;
}

LogScaledEnergy instanton_splitting(const SpinSystem& sys) {
    if (!(sys.B > 0.0)) {
        throw std::invalid_argument("instanton_splitting: requires B > 0");
    }
    LogScaledEnergy out;
    if (sys.twice_s % 2 != 0) {
        return out; // cos(pi s) = 0 exactly for half-integer s
    }
    const unsigned s_int = sys.twice_s / 2;
    out.sign = (s_int % 2 == 0) ? 1 : -1; // cos(pi s) = (-1)^s
    const double s = sys.s();
    out.log_abs = std::log(8.0 * sys.A / std::sqrt(M_PI)) + 1.5 * std::log(s) +
                  s * (std::log(sys.B) - std::log(sys.A));
    return out;
}

namespace {

// Block entries rebuilt in double-double from exact integer products:
// diagonal -A m^2, off-diagonal B sqrt(s+2^m).
void build_block_dd(const SpinSystem& sys, bool same_parity_as_s, std::vector<DD>& diag,
                    std::vector<DD>& offdiag) {
    const ParityBlock shape = build_parity_block(sys, same_parity_as_s);
    diag.clear();
    offdiag.clear();
    for (std::size_t i = 0; i < shape.m_values.size(); ++i) {
        const auto tm = static_cast<std::int64_t>(shape.m_values[i].twice);
        const auto tm2 = static_cast<double>(tm * tm); // exact (<= 2^53)
        diag.push_back(dd_mul(-sys.A, tm2) * DD(0.25));
        if (i + 1 < shape.m_values.size()) {
            const auto coeff = static_cast<double>(
                s_plus2_coefficient(sys.twice_s, shape.m_values[i].twice)); // exact
            offdiag.push_back(DD(sys.B) * dd_sqrt(DD(coeff)));
        }
    }
}

struct Level {
    DD energy;
    int block_order; // 0 = parity-of-s block, for deterministic tie-breaking
};

} // namespace

SplittingResult exact_splitting(const SpinSystem& sys) {
    if (sys.dim() > 20001) {
        throw std::invalid_argument("exact_splitting: dimension cap 20001 exceeded");
    }

    std::vector<Level> lowest;
    double width_scale = 0.0;
    for (int b = 0; b < 2; ++b) {
        std::vector<DD> diag, offdiag;
        build_block_dd(sys, b == 0, diag, offdiag);
        if (diag.empty()) continue;
        const std::size_t want = std::min<std::size_t>(2, diag.size());
        for (std::size_t k = 0; k < want; ++k) {
            lowest.push_back({kth_eigenvalue_bisect<DD>(diag, offdiag, k), b});
        }
        for (const DD& d : diag) width_scale = std::max(width_scale, std::abs(d.to_double()));
    }

    std::stable_sort(lowest.begin(), lowest.end(), [](const Level& a, const Level& b) {
        if (a.energy < b.energy) return true;
        if (b.energy < a.energy) return false;
        return a.block_order < b.block_order;
    });

    SplittingResult out;
    out.e0 = lowest[0].energy.to_double();
    out.e1 = lowest.size() > 1 ? lowest[1].energy.to_double() : out.e0;
    const DD delta = lowest.size() > 1 ? lowest[1].energy - lowest[0].energy : DD(0.0);
    out.delta_e_exact = std::max(0.0, delta.to_double());
    out.below_resolution = out.delta_e_exact <= 16.0 * DD::eps() * width_scale;

    if (sys.B > 0.0) {
        out.delta_e_instanton = instanton_splitting(sys);
        if (out.delta_e_instanton.sign != 0 &&
            out.delta_e_instanton.log_abs >= k_log_underflow) {
            out.delta_omega_inst = std::exp(out.delta_e_instanton.log_abs - std::log(k_hbar));
        }
    }
    return out;
}

} // namespace spindec
