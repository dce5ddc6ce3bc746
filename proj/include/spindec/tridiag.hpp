// tridiag.hpp — parity-block reduction of the anisotropy Hamiltonian and
// symmetric tridiagonal eigensolvers: implicit-shift QL for full spectra,
// Sturm-sequence bisection for selected eigenvalues (templated on scalar
// so the bisection also runs in double-double).

#pragma once

#include <utility>
#include <vector>

#include "spindec/dd.hpp"
#include "spindec/spin_system.hpp"

namespace spindec {

// Invariant subspace spanned by m-values of equal parity; the pentadiagonal
// anisotropy Hamiltonian is exactly tridiagonal within it.
struct ParityBlock {
    bool same_parity_as_s = true;   // block containing m = +s
    std::vector<HalfInt> m_values;  // ascending, stride 2
    std::vector<double> diag;       // J
    std::vector<double> offdiag;    // J, size diag.size()-1
};

// Build a block directly from the system (no dense intermediate); used for
// large dimensions where the dense matrix would be wasteful.
ParityBlock build_parity_block(const SpinSystem& sys, bool same_parity_as_s);

// Split a pentadiagonal Hamiltonian into its two tridiagonal parity blocks.
// The block containing m = +s comes first. Throws on non-pentadiagonal input.
std::pair<ParityBlock, ParityBlock> parity_blocks(const SpinMatrix& h, const SpinSystem& sys);

// All eigenvalues of a symmetric tridiagonal matrix, ascending. Implicit
// shift QL, eigenvalues only; deterministic; rejects non-finite entries.
std::vector<double> eigvals_tridiagonal(const std::vector<double>& diag,
                                        const std::vector<double>& offdiag);

inline std::vector<double> eigvals_tridiagonal(const ParityBlock& block) {
    return eigvals_tridiagonal(block.diag, block.offdiag);
}

// k-th smallest eigenvalue (k = 0-based) by Sturm-sequence bisection.
// Scalar is double or DD. Converges the bracket to ~4 eps of its magnitude.
template <typename Scalar>
Scalar kth_eigenvalue_bisect(const std::vector<Scalar>& diag,
                             const std::vector<Scalar>& offdiag,
                             std::size_t k);

extern template double kth_eigenvalue_bisect<double>(const std::vector<double>&,
                                                     const std::vector<double>&, std::size_t);
extern template DD kth_eigenvalue_bisect<DD>(const std::vector<DD>&,
                                             const std::vector<DD>&, std::size_t);

} // namespace spindec
