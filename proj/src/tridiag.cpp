#include "spindec/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace spindec {

ParityBlock build_parity_block(const SpinSystem& sys, bool same_parity_as_s) {
    const int ts = static_cast<int>(sys.twice_s);
    ParityBlock block;
    block.same_parity_as_s = same_parity_as_s;

    // m runs with stride 2 (stride 4 in twice-units). The block containing
    // m = +s starts at -s for integer s and at -s+1 for half-integer s.
    const bool s_block_starts_at_minus_s = (ts % 2 == 0);
    const int tm_start = (same_parity_as_s == s_block_starts_at_minus_s) ? -ts : -ts + 2;
    for (int tm = tm_start; tm <= ts; tm += 4) {
        block.m_values.push_back(HalfInt::from_twice(tm));
    }
    for (std::size_t i = 0; i < block.m_values.size(); ++i) {
        const auto tm = static_cast<std::int64_t>(block.m_values[i].twice);
        block.diag.push_back(-sys.A * 0.25 * static_cast<double>(tm * tm));
        if (i + 1 < block.m_values.size()) {
            block.offdiag.push_back(
                sys.B * std::sqrt(static_cast<double>(
                            s_plus2_coefficient(sys.twice_s, block.m_values[i].twice))));
        }
    }
    return block;
}

std::pair<ParityBlock, ParityBlock> parity_blocks(const SpinMatrix& h, const SpinSystem& sys) {
    if (h.dim != sys.dim()) {
        throw std::invalid_argument("parity_blocks: matrix dimension does not match system");
    }
    for (std::size_t i = 0; i < h.dim; ++i) {
        for (std::size_t j = 0; j < h.dim; ++j) {
            const std::size_t gap = i > j ? i - j : j - i;
            if (gap != 0 && gap != 2 && h.at(i, j) != 0.0) {
                throw std::invalid_argument("parity_blocks: input is not pentadiagonal");
            }
        }
    }

    const int ts = static_cast<int>(sys.twice_s);
    auto extract = [&](bool same_parity_as_s) {
        ParityBlock block;
        block.same_parity_as_s = same_parity_as_s;
        // basis index i holds m = -s + i; index of +s is i = 2s
        const std::size_t s_start = (ts % 2 == 0) ? 0 : 1;
        const std::size_t start = same_parity_as_s ? s_start : 1 - s_start;
        for (std::size_t i = start; i < h.dim; i += 2) {
            block.m_values.push_back(HalfInt::from_twice(-ts + 2 * static_cast<int>(i)));
            block.diag.push_back(h.at(i, i));
            if (i + 2 < h.dim) block.offdiag.push_back(h.at(i, i + 2));
        }
        return block;
    };
    return {extract(true), extract(false)};
}

namespace {

void require_finite(const std::vector<double>& v, const char* who) {
    for (double x : v) {
        if (!std::isfinite(x)) throw std::invalid_argument(std::string(who) + ": non-finite entry");
    }
}

} // namespace

std::vector<double> eigvals_tridiagonal(const std::vector<double>& diag,
                                        const std::vector<double>& offdiag) {
    const std::size_t n = diag.size();
    if (n == 0) return {};
    if (offdiag.size() + 1 != n) {
        throw std::invalid_argument("eigvals_tridiagonal: offdiag must have size n-1");
    }
    require_finite(diag, "eigvals_tridiagonal");
    require_finite(offdiag, "eigvals_tridiagonal");

    std::vector<double> d = diag;
    std::vector<double> e(n, 0.0);
    std::copy(offdiag.begin(), offdiag.end(), e.begin());

    const double eps = std::numeric_limits<double>::epsilon();
    for (std::size_t l = 0; l < n; ++l) {
        std::size_t iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 64) {
                    throw std::runtime_error("eigvals_tridiagonal: QL failed to converge");
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (std::size_t ii = m; ii-- > l;) {
                    double f = s * e[ii];
                    const double b = c * e[ii];
                    r = std::hypot(f, g);
                    e[ii + 1] = r;
                    if (r == 0.0) {
                        d[ii + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[ii + 1] - p;
                    r = (d[ii] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[ii + 1] = g + p;
                    g = c * r - b;
                    if (ii == l) {
                        d[l] -= p;
                        e[l] = g;
                        e[m] = 0.0;
                    }
                }
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

namespace {

inline double scalar_to_double(double x) { return x; }
inline double scalar_to_double(DD x) { return x.to_double(); }

inline double scalar_eps(double) { return std::numeric_limits<double>::epsilon(); }
inline double scalar_eps(DD) { return DD::eps(); }

inline double scalar_abs_d(double x) { return std::abs(x); }
inline DD scalar_abs_d(DD x) { return dd_abs(x); }

// Number of eigenvalues strictly below x (Sturm count via the LDL^T pivots).
template <typename Scalar>
std::size_t sturm_count(const std::vector<Scalar>& diag, const std::vector<Scalar>& offdiag,
                        Scalar x, double pivmin) {
    std::size_t count = 0;
    Scalar d = diag[0] - x;
    if (d == Scalar(0.0)) d = Scalar(-pivmin);
    if (d < Scalar(0.0)) ++count;
    for (std::size_t i = 1; i < diag.size(); ++i) {
        d = (diag[i] - x) - (offdiag[i - 1] * offdiag[i - 1]) / d;
        if (d == Scalar(0.0)) d = Scalar(-pivmin);
        if (d < Scalar(0.0)) ++count;
    }
    return count;
}

} // namespace

template <typename Scalar>
Scalar kth_eigenvalue_bisect(const std::vector<Scalar>& diag, const std::vector<Scalar>& offdiag,
                             std::size_t k) {
    const std::size_t n = diag.size();
    if (n == 0 || k >= n) throw std::invalid_argument("kth_eigenvalue_bisect: bad k or empty matrix");
    if (offdiag.size() + 1 != n) {
        throw std::invalid_argument("kth_eigenvalue_bisect: offdiag must have size n-1");
    }

    // Gershgorin bounds
    Scalar lo = diag[0], hi = diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        Scalar radius(0.0);
        if (i > 0) radius = radius + scalar_abs_d(offdiag[i - 1]);
        if (i + 1 < n) radius = radius + scalar_abs_d(offdiag[i]);
        const Scalar l = diag[i] - radius;
        const Scalar h = diag[i] + radius;
        if (l < lo) lo = l;
        if (hi < h) hi = h;
    }

    const double scale = std::max({std::abs(scalar_to_double(lo)), std::abs(scalar_to_double(hi)),
                                   std::numeric_limits<double>::min()});
    const double pivmin = scale * 1e-280;
    const double tol = scalar_eps(Scalar(0.0)) * scale;

    for (int iter = 0; iter < 240; ++iter) {
        const Scalar mid = (lo + hi) * Scalar(0.5);
        if (!(lo < mid) || !(mid < hi)) break; // bracket exhausted at this precision
        if (sturm_count(diag, offdiag, mid, pivmin) > k) {
            hi = mid;
        } else {
            lo = mid;
        }
        if (scalar_to_double(hi - lo) <= tol) break;
    }
    return (lo + hi) * Scalar(0.5);
}

template double kth_eigenvalue_bisect<double>(const std::vector<double>&,
                                              const std::vector<double>&, std::size_t);
template DD kth_eigenvalue_bisect<DD>(const std::vector<DD>&, const std::vector<DD>&,
                                      std::size_t);

} // namespace spindec
