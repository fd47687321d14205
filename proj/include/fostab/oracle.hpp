#pragma once

#include <cstdint>
#include <optional>

#include "fostab/interval.hpp"
#include "fostab/stability.hpp"

namespace fostab {

struct GridSpec {
    /// Each free entry is split into this many segments, giving
    /// divisions_per_entry + 1 grid values including both bounds.
    std::size_t divisions_per_entry = 5;
    /// Hard cap on (divisions_per_entry + 1)^k total grid points.
    std::uint64_t grid_cap = kDefaultGridCap;
};

/// Exhaustive-grid counterpart of lambda_bar_vertices: the largest form
/// eigenvalue over a regular grid on the box. Every vertex is a grid point
/// because both bounds of each free entry are grid values. Throws
/// GridExplosionError when the grid would exceed its cap.
double grid_max_lambda(const HermitianMatrix& p, const IntervalMatrix& a,
                       const FractionalOrder& ord, const GridSpec& grid = {});

struct FalsificationResult {
    /// First matrix in scan order that fails the argument test, if any.
    std::optional<RealMatrix> counterexample;
    /// Matrices actually subjected to the argument test.
    std::uint64_t samples_checked;
    /// Smallest argument margin observed across everything checked.
    double worst_margin;
    /// True when the vertex pre-scan was skipped because the vertex count
    /// exceeded the cap; only random samples were checked.
    bool vertex_scan_skipped;
};

/// Robust-stability falsifier: scans the vertices first, then `samples`
/// seeded uniform draws from the box, stopping at the first unstable matrix.
FalsificationResult mc_falsify(const IntervalMatrix& a, const FractionalOrder& ord,
                               std::size_t samples, std::uint64_t seed,
                               std::size_t vertex_cap = kDefaultVertexCap);

} // namespace fostab
