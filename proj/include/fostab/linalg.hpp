#pragma once

#include <cstddef>
#include <vector>

#include "fostab/matrix.hpp"

namespace fostab {

/// Square complex matrix constrained to be Hermitian. Construction checks
/// the symmetry of the raw data entrywise against tol::herm and then
/// symmetrizes, so H(i,j) == conj(H(j,i)) holds exactly afterwards and the
/// diagonal is exactly real.
class HermitianMatrix {
public:
    explicit HermitianMatrix(const ComplexMatrix& raw);

    static HermitianMatrix identity(std::size_t n);
    static HermitianMatrix zero(std::size_t n);

    std::size_t dim() const { return mat_.rows(); }

    Complex operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }
    const ComplexMatrix& matrix() const { return mat_; }

    /// Sum of the (real) diagonal.
    double trace() const;
    double frobenius_norm() const { return mat_.frobenius_norm(); }

private:
    ComplexMatrix mat_;
};

/// Full eigendecomposition of a Hermitian matrix.
struct EigResult {
    /// Ascending.
    std::vector<double> eigenvalues;
    /// Unit-norm columns; column k pairs with eigenvalues[k].
    ComplexMatrix eigenvectors;

    double min() const { return eigenvalues.front(); }
    double max() const { return eigenvalues.back(); }
};

/// Eigendecomposition by cyclic complex Jacobi rotations. Deterministic for
/// identical input. Throws NonFiniteError or NoConvergenceError.
EigResult hermitian_eig(const HermitianMatrix& h);

struct PdReport {
    bool positive_definite;
    double min_eigenvalue;
};

/// Positive definiteness test: min eigenvalue strictly greater than margin.
/// margin must be nonnegative.
PdReport is_positive_definite(const HermitianMatrix& h, double margin = 0.0);

/// Solves M*P + PM = -Q for Hermitian P by vectorizing into an (n^2)x(n^2)
/// dense linear system. Requires Q positive definite. Throws NotHurwitzError
/// when no positive definite solution exists (singular operator, indefinite
/// solution, or re-substitution residual beyond tol::lyap_residual), which by
/// the classical Lyapunov theorem happens exactly when some eigenvalue of M
/// leaves the open left half plane.
HermitianMatrix lyapunov_solve(const ComplexMatrix& m, const HermitianMatrix& q);

/// Quadratic form z*Hz, which is real for Hermitian H.
double rayleigh(const HermitianMatrix& h, const std::vector<Complex>& z);

} // namespace fostab
