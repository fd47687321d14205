#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "fostab/interval.hpp"
#include "fostab/linalg.hpp"
#include "fostab/matrix.hpp"

namespace fostab {

/// Differentiation order alpha in [1, 2) together with the rotation
/// beta = exp(j (1 - alpha) pi / 2) that maps the stability wedge
/// |arg(lambda)| > alpha pi / 2 onto the left half plane for real matrices.
/// alpha = 1 yields beta = 1 exactly and the classical integer-order theory.
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha);

    double alpha() const { return alpha_; }
    Complex beta() const { return beta_; }

private:
    double alpha_;
    Complex beta_;
};

/// L(P, A) = beta P A + conj(beta) A^T P, Hermitian for Hermitian P and
/// real A. The returned matrix satisfies the Hermitian identity exactly.
HermitianMatrix lyapunov_form(const HermitianMatrix& p, const RealMatrix& a, const FractionalOrder& ord);

/// Same form with the rotation supplied directly; used to probe rotation
/// conventions in tests.
HermitianMatrix lyapunov_form(const HermitianMatrix& p, const RealMatrix& a, Complex beta);

/// Eigenvalues of a general (non-Hermitian) complex matrix via Householder
/// reduction to Hessenberg form followed by shifted QR iteration. Order of
/// the returned values is an implementation detail. Throws
/// SpectrumFailureError when the iteration stalls.
std::vector<Complex> general_spectrum(const ComplexMatrix& a);

struct PointVerdict {
    bool stable;
    std::vector<Complex> spectrum;
    /// min over eigenvalues of |arg(lambda)| - alpha pi / 2; positive iff
    /// stable. A zero eigenvalue contributes |arg| = 0 and is unstable.
    double min_arg_margin;
};

/// Argument test for a single real matrix: stable iff every eigenvalue
/// satisfies |arg(lambda)| > alpha pi / 2 strictly.
PointVerdict point_stability(const RealMatrix& a, const FractionalOrder& ord);

/// Common-Lyapunov certificate for one stable point: solves
/// (beta A)* P + P (beta A) = -I. Throws NotPointStableError when the
/// argument test fails or the solve reports a non-Hurwitz rotated matrix.
HermitianMatrix point_lyapunov_certificate(const RealMatrix& a, const FractionalOrder& ord);

struct LambdaBarResult {
    /// max over vertices of the largest eigenvalue of L(P, vertex).
    double value;
    RealMatrix argmax_vertex;
    std::uint64_t argmax_index;
};

/// Worst-case largest form eigenvalue over the vertex set; ties resolve to
/// the lowest vertex index.
LambdaBarResult lambda_bar_vertices(const HermitianMatrix& p, const IntervalMatrix& a,
                                    const FractionalOrder& ord,
                                    std::size_t vertex_cap = kDefaultVertexCap);

struct SufficiencyReport {
    /// True when the worst vertex form is negative definite, which certifies
    /// quadratic (hence robust) stability of the whole box.
    bool sufficient;
    /// -value of the worst vertex form eigenvalue; positive when sufficient.
    double margin;
    LambdaBarResult detail;
};

/// Vertex LMI sufficiency test with an explicit candidate P, which must be
/// positive definite.
SufficiencyReport robust_stability_sufficient(const IntervalMatrix& a, const FractionalOrder& ord,
                                              const HermitianMatrix& p,
                                              std::size_t vertex_cap = kDefaultVertexCap);

} // namespace fostab
