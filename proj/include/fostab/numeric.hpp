#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace fostab {

// Every tolerance and cap used by the library lives here so that callers,
// tests, and documentation agree on a single set of numbers.
namespace tol {

/// Maximum entrywise deviation |H(i,j) - conj(H(j,i))| accepted when a
/// Hermitian matrix is constructed from raw complex data.
inline constexpr double herm = 1e-12;

/// Eigenpair residual bound: ||H v - lambda v|| <= eig_residual * (1 + ||H||_F).
inline constexpr double eig_residual = 1e-9;

/// Lyapunov re-substitution bound: ||M*P + PM + Q||_F <= lyap_residual * (1 + ||Q||_F).
inline constexpr double lyap_residual = 1e-8;

/// Accepted drift of |beta| from 1.
inline constexpr double unit_modulus = 1e-15;

/// Eigenvalue floor the feasibility solver enforces on its iterates.
inline constexpr double pd_floor = 1e-6;

/// Default feasibility margin required of a certificate.
inline constexpr double feasibility = 1e-7;

} // namespace tol

/// Largest number of free interval entries the vertex enumerator accepts
/// (the vertex count is 2 to this power).
inline constexpr std::size_t kDefaultVertexCap = 24;

/// Largest number of points the grid oracle will evaluate.
inline constexpr std::uint64_t kDefaultGridCap = 1'000'000;

/// Deterministic uniform draw in [0, 1). Built directly from the generator's
/// bits so results are identical across standard libraries; the distribution
/// classes in <random> are implementation-defined and would break the
/// byte-level reproducibility contract.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace fostab
