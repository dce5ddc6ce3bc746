#include "spindec/spin_system.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spindec/constants.hpp"

namespace spindec {

HalfInt HalfInt::from_double(double value) {
    const double doubled = 2.0 * value;
    const double rounded = std::nearbyint(doubled);
    if (!(std::abs(doubled - rounded) == 0.0) || std::abs(rounded) > 2.1e9) {
        throw std::invalid_argument("HalfInt: value " + std::to_string(value) +
                                    " is not a half-integer");
    }
    return HalfInt{static_cast<int>(rounded)};
}

SpinSystem::SpinSystem(unsigned twice_s_, double A_, double B_)
    : twice_s(twice_s_), A(A_), B(B_) {
    if (twice_s < 1) {
        throw std::invalid_argument("SpinSystem: s must be >= 1/2");
    }
    if (!(A > 0.0) || !std::isfinite(A)) {
        throw std::invalid_argument("SpinSystem: A must be positive and finite");
    }
    if (!(B >= 0.0) || !std::isfinite(B)) {
        throw std::invalid_argument("SpinSystem: B must be nonnegative and finite");
    }
}

SpinSystem SpinSystem::from_s(double s, double A, double B) {
    const HalfInt hs = HalfInt::from_double(s);
    if (hs.twice < 1) {
        throw std::invalid_argument("SpinSystem: s must be >= 1/2");
    }
    return SpinSystem(static_cast<unsigned>(hs.twice), A, B);
}

bool SpinSystem::m_in_range(HalfInt m) const {
    const int ts = static_cast<int>(twice_s);
    if (m.twice < -ts || m.twice > ts) return false;
    // 2m and 2s must have equal parity for m to sit on the -s..s ladder.
    return ((m.twice - ts) % 2) == 0;
}

namespace {

void require_m(const SpinSystem& sys, HalfInt m, const char* who) {
    if (!sys.m_in_range(m)) {
        throw std::invalid_argument(std::string(who) + ": m = " +
                                    std::to_string(m.value()) + " out of range for s = " +
                                    std::to_string(sys.s()));
    }
}

// Common factor table: each of the four factors of s±2^m is an integer
// when 2s and 2m have equal parity.
std::int64_t coeff_product(std::int64_t ts, std::int64_t tm, bool plus) {
    const std::int64_t sm = plus ? (ts - tm) / 2 : (ts + tm) / 2; // s∓m
    const std::int64_t sp = plus ? (ts + tm) / 2 : (ts - tm) / 2; // s±m
    return sm * (sp + 1) * (sm - 1) * (sp + 2);
}

} // namespace

std::int64_t s_plus2_coefficient(unsigned twice_s, int twice_m) {
    const auto ts = static_cast<std::int64_t>(twice_s);
    if (twice_m > ts - 4) return 0; // m+2 beyond +s
    return coeff_product(ts, twice_m, true);
}

std::int64_t s_minus2_coefficient(unsigned twice_s, int twice_m) {
    const auto ts = static_cast<std::int64_t>(twice_s);
    if (twice_m < -(ts - 4)) return 0; // m-2 beyond -s
    return coeff_product(ts, twice_m, false);
}

SpinMatrix build_sz(const SpinSystem& sys) {
    SpinMatrix out(sys.dim());
    const int ts = static_cast<int>(sys.twice_s);
    for (std::size_t i = 0; i < out.dim; ++i) {
        const int tm = -ts + 2 * static_cast<int>(i);
        out.at(i, i) = 0.5 * tm;
    }
    return out;
}

SpinMatrix build_splus(const SpinSystem& sys) {
    SpinMatrix out(sys.dim());
    const int ts = static_cast<int>(sys.twice_s);
    for (std::size_t i = 0; i + 1 < out.dim; ++i) {
        const std::int64_t tm = -ts + 2 * static_cast<std::int64_t>(i);
        // s(s+1) - m(m+1) = (2s(2s+2) - 2m(2m+2)) / 4, exact in integers
        const std::int64_t num = ts * (ts + 2) - tm * (tm + 2);
        out.at(i + 1, i) = std::sqrt(0.25 * static_cast<double>(num));
    }
    return out;
}

SpinMatrix build_hamiltonian(const SpinSystem& sys) {
    SpinMatrix out(sys.dim());
    const int ts = static_cast<int>(sys.twice_s);
    for (std::size_t i = 0; i < out.dim; ++i) {
        const std::int64_t tm = -ts + 2 * static_cast<std::int64_t>(i);
        out.at(i, i) = -sys.A * 0.25 * static_cast<double>(tm * tm);
        if (i + 2 < out.dim) {
            // <m+2| S+^2 |m> = sqrt(s+2^m); constructed once, mirrored.
            const double c =
                sys.B * std::sqrt(static_cast<double>(coeff_product(ts, static_cast<int>(tm), true)));
            out.at(i + 2, i) = c;
            out.at(i, i + 2) = c;
        }
    }
    return out;
}

double unperturbed_energy(const SpinSystem& sys, HalfInt m) {
    require_m(sys, m, "unperturbed_energy");
    const auto tm = static_cast<std::int64_t>(m.twice);
    return -sys.A * 0.25 * static_cast<double>(tm * tm);
}

TransitionData transition_data(const SpinSystem& sys, HalfInt m) {
    require_m(sys, m, "transition_data");
    const int ts = static_cast<int>(sys.twice_s);

    TransitionData out;
    out.m = m;
    out.s_plus2 = static_cast<double>(s_plus2_coefficient(sys.twice_s, m.twice));
    out.s_minus2 = static_cast<double>(s_minus2_coefficient(sys.twice_s, m.twice));
    out.has_up = m.twice + 4 <= ts;
    out.has_down = m.twice - 4 >= -ts;
    // (E_m - E_{m±2})/hbar = A (±4m + 4)/hbar, signed as defined.
    if (out.has_up) out.omega_up = sys.A * (2.0 * m.twice + 4.0) / k_hbar;
    if (out.has_down) out.omega_down = sys.A * (4.0 - 2.0 * m.twice) / k_hbar;
    return out;
}

} // namespace spindec
