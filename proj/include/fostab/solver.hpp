#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fostab/interval.hpp"
#include "fostab/linalg.hpp"
#include "fostab/stability.hpp"

namespace fostab {

struct SolverConfig {
    std::size_t max_iters = 5000;
    double step0 = 1.0;
    double tol_feas = tol::feasibility;
    std::size_t restarts = 5;
    std::uint64_t seed = 0;
    std::size_t vertex_cap = kDefaultVertexCap;
};

enum class Verdict {
    Feasible,
    Infeasible,
    Unknown,
};

struct FeasibilityResult {
    Verdict verdict;
    /// Present iff Feasible: positive definite P with every vertex form
    /// negative definite by at least tol_feas.
    std::optional<HermitianMatrix> certificate;
    /// Present iff Infeasible: a vertex matrix failing the argument test,
    /// and its enumeration index.
    std::optional<RealMatrix> witness;
    std::optional<std::uint64_t> witness_index;
    /// Objective value max_v lambda_max(L(P, A_v)) after every iteration,
    /// concatenated across restarts.
    std::vector<double> objective_trace;
    /// Feasible/Unknown: negated best objective value (certified margin when
    /// Feasible). Infeasible: the witness's argument margin (negative).
    double margin;
    /// Total iterations across all restarts.
    std::size_t iterations;
    /// Runs performed, counting the initial run and restarts.
    std::size_t runs;
};

/// Searches for a common Lyapunov certificate over the vertex set by
/// projected subgradient descent on f(P) = max_v lambda_max(L(P, A_v)) with
/// trace(P) = n. Feasible requires f <= -tol_feas with P positive definite;
/// Infeasible is declared only with an unstable-vertex witness; everything
/// else is Unknown. Deterministic for identical inputs.
FeasibilityResult find_common_p(const IntervalMatrix& a, const FractionalOrder& ord,
                                const SolverConfig& cfg = {});

struct CertificateCheck {
    /// Raw candidate symmetry within tol::herm.
    bool hermitian_ok;
    double max_hermitian_deviation;
    /// Smallest eigenvalue of the Hermitian part exceeds tol.
    bool positive_definite;
    double min_eigenvalue;
    /// Worst vertex form eigenvalue below -tol.
    bool vertex_lmis_ok;
    double lambda_bar;
    std::uint64_t lambda_bar_index;
    bool pass;
    double tol;
};

/// Three staged checks on a candidate certificate. Stages two and three are
/// evaluated on the Hermitian part of the candidate, so all margins are
/// reported even when the symmetry check fails. Verification failures are
/// entries in the returned report, never exceptions.
CertificateCheck verify_certificate(const ComplexMatrix& p, const IntervalMatrix& a,
                                    const FractionalOrder& ord, double tol = 0.0,
                                    std::size_t vertex_cap = kDefaultVertexCap);

} // namespace fostab
