#include "fostab/oracle.hpp"

#include <limits>
#include <string>
#include <vector>

#include "fostab/errors.hpp"

namespace fostab {

double grid_max_lambda(const HermitianMatrix& p, const IntervalMatrix& a,
                       const FractionalOrder& ord, const GridSpec& grid) {
    if (a.dim() != p.dim()) {
        throw ShapeMismatchError("interval dimension does not match P");
    }
    if (grid.divisions_per_entry == 0) {
        throw ConfigError("divisions_per_entry must be at least 1");
    }
    if (grid.grid_cap == 0) {
        throw ConfigError("grid_cap must be positive");
    }

    const auto free = free_positions(a);
    const std::uint64_t per_entry = grid.divisions_per_entry + 1;
    std::uint64_t total = 1;
    for (std::size_t b = 0; b < free.size(); ++b) {
        if (total > grid.grid_cap / per_entry) {
            throw GridExplosionError("grid would exceed its cap of " + std::to_string(grid.grid_cap) + " points");
        }
        total *= per_entry;
    }

    const double divisions = static_cast<double>(grid.divisions_per_entry);
    std::vector<std::size_t> counter(free.size(), 0);
    RealMatrix point = a.lower();

    double best = -std::numeric_limits<double>::infinity();
    for (std::uint64_t step = 0; step < total; ++step) {
        for (std::size_t b = 0; b < free.size(); ++b) {
            const auto [i, j] = free[b];
            const double lo = a.lower()(i, j);
            const double up = a.upper()(i, j);
            const std::size_t c = counter[b];
            // Both bounds are taken verbatim so vertices land on the grid
            // exactly.
            double value;
            if (c == 0) {
                value = lo;
            } else if (c == grid.divisions_per_entry) {
                value = up;
            } else {
                value = lo + (up - lo) * (static_cast<double>(c) / divisions);
            }
            point(i, j) = value;
        }
        const HermitianMatrix form = lyapunov_form(p, point, ord);
        best = std::max(best, hermitian_eig(form).max());

        for (std::size_t b = 0; b < free.size(); ++b) {
            if (++counter[b] <= grid.divisions_per_entry) break;
            counter[b] = 0;
        }
    }
    return best;
}

FalsificationResult mc_falsify(const IntervalMatrix& a, const FractionalOrder& ord,
                               std::size_t samples, std::uint64_t seed,
                               std::size_t vertex_cap) {
    FalsificationResult result{std::nullopt, 0, std::numeric_limits<double>::infinity(), false};

    std::optional<VertexSet> verts;
    try {
        verts.emplace(a, vertex_cap);
    } catch (const VertexExplosionError&) {
        result.vertex_scan_skipped = true;
    }

    const auto check = [&](const RealMatrix& x) {
        const PointVerdict pv = point_stability(x, ord);
        ++result.samples_checked;
        result.worst_margin = std::min(result.worst_margin, pv.min_arg_margin);
        if (!pv.stable) result.counterexample = x;
        return pv.stable;
    };

    if (verts) {
        for (std::uint64_t idx = 0; idx < verts->size(); ++idx) {
            if (!check(verts->vertex(idx))) return result;
        }
    }
    if (samples > 0) {
        for (const RealMatrix& draw : sample(a, samples, seed)) {
            if (!check(draw)) return result;
        }
    }
    return result;
}

} // namespace fostab
