#include "fostab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "fostab/errors.hpp"
#include "fostab/numeric.hpp"

namespace fostab {

namespace {

double hermitian_deviation(const ComplexMatrix& m) {
    double dev = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i; j < m.cols(); ++j) {
            dev = std::max(dev, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return dev;
}

/// Frobenius norm of the strict off-diagonal part (both triangles).
double off_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (i != j) s += std::norm(m(i, j));
        }
    }
    return std::sqrt(s);
}

/// Gaussian elimination with partial pivoting on a dense complex system.
/// Returns nothing when a pivot falls below the singularity threshold.
std::optional<std::vector<Complex>> solve_dense(ComplexMatrix a, std::vector<Complex> b) {
    const std::size_t n = a.rows();
    const double pivot_floor = static_cast<double>(n) * 1e-15 * std::max(a.max_abs(), 1e-300);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot_row = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double cand = std::abs(a(r, col));
            if (cand > best) {
                best = cand;
                pivot_row = r;
            }
        }
        if (best <= pivot_floor) return std::nullopt;
        if (pivot_row != col) {
            for (std::size_t j = col; j < n; ++j) std::swap(a(col, j), a(pivot_row, j));
            std::swap(b[col], b[pivot_row]);
        }
        const Complex pivot = a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex factor = a(r, col) / pivot;
            if (factor == Complex(0.0, 0.0)) continue;
            a(r, col) = Complex(0.0, 0.0);
            for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= factor * a(col, j);
            b[r] -= factor * b[col];
        }
    }

    std::vector<Complex> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Complex s = b[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
        x[ii] = s / a(ii, ii);
    }
    return x;
}

} // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& raw) : mat_(raw) {
    if (!raw.is_square()) {
        throw ShapeMismatchError("Hermitian matrix must be square");
    }
    if (!raw.all_finite()) {
        throw NonFiniteError("Hermitian matrix has a NaN or infinite entry");
    }
    const double dev = hermitian_deviation(raw);
    if (dev > tol::herm) {
        throw NotHermitianError("matrix deviates from Hermitian symmetry by " + std::to_string(dev));
    }
    const std::size_t n = mat_.rows();
    for (std::size_t i = 0; i < n; ++i) {
        mat_(i, i) = Complex(mat_(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (mat_(i, j) + std::conj(mat_(j, i)));
            mat_(i, j) = avg;
            mat_(j, i) = std::conj(avg);
        }
    }
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
    return HermitianMatrix(ComplexMatrix::identity(n));
}

HermitianMatrix HermitianMatrix::zero(std::size_t n) {
    return HermitianMatrix(ComplexMatrix(n, n));
}

double HermitianMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) t += mat_(i, i).real();
    return t;
}

EigResult hermitian_eig(const HermitianMatrix& h) {
    const std::size_t n = h.dim();
    ComplexMatrix w = h.matrix();
    ComplexMatrix v = ComplexMatrix::identity(n);
    if (!w.all_finite()) {
        throw NonFiniteError("eigensolver input has a NaN or infinite entry");
    }

    const double target = 1e-14 * (1.0 + h.frobenius_norm());
    constexpr int kMaxSweeps = 60;

    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_norm(w) <= target) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex b = w(p, q);
                const double ab = std::abs(b);
                if (ab == 0.0) continue;

                // Unitary 2x2 rotation U = [[c, s], [-conj(s), c]] chosen so
                // that (U* W U)(p,q) vanishes. With b = |b| e^{i phi} the
                // problem reduces to the real symmetric case for the angle.
                const Complex phase = b / ab;
                const double app = w(p, p).real();
                const double aqq = w(q, q).real();
                const double tau = (aqq - app) / (2.0 * ab);
                const double sign = (tau >= 0.0) ? 1.0 : -1.0;
                double t = sign / (std::abs(tau) + std::hypot(1.0, tau));
                if (!std::isfinite(t)) t = 0.0;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const Complex s = (t * c) * phase;

                for (std::size_t j = 0; j < n; ++j) {
                    const Complex wp = w(p, j);
                    const Complex wq = w(q, j);
                    w(p, j) = c * wp - s * wq;
                    w(q, j) = std::conj(s) * wp + c * wq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const Complex wp = w(i, p);
                    const Complex wq = w(i, q);
                    w(i, p) = c * wp - std::conj(s) * wq;
                    w(i, q) = s * wp + c * wq;

                    const Complex vp = v(i, p);
                    const Complex vq = v(i, q);
                    v(i, p) = c * vp - std::conj(s) * vq;
                    v(i, q) = s * vp + c * vq;
                }
                w(p, p) = Complex(app - t * ab, 0.0);
                w(q, q) = Complex(aqq + t * ab, 0.0);
                w(p, q) = Complex(0.0, 0.0);
                w(q, p) = Complex(0.0, 0.0);
            }
        }
    }
    if (!converged && off_norm(w) > target) {
        throw NoConvergenceError("Jacobi eigensolver did not converge within 60 sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return w(a, a).real() < w(b, b).real();
    });

    EigResult result{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        result.eigenvalues[k] = w(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) result.eigenvectors(i, k) = v(i, order[k]);
    }
    return result;
}

PdReport is_positive_definite(const HermitianMatrix& h, double margin) {
    if (margin < 0.0 || !std::isfinite(margin)) {
        throw ConfigError("positive definiteness margin must be nonnegative");
    }
    const EigResult eig = hermitian_eig(h);
    return PdReport{eig.min() > margin, eig.min()};
}

HermitianMatrix lyapunov_solve(const ComplexMatrix& m, const HermitianMatrix& q) {
    if (!m.is_square()) {
        throw ShapeMismatchError("Lyapunov coefficient matrix must be square");
    }
    if (m.rows() != q.dim()) {
        throw ShapeMismatchError("Lyapunov coefficient and right-hand side dimensions differ");
    }
    if (!m.all_finite()) {
        throw NonFiniteError("Lyapunov coefficient matrix has a NaN or infinite entry");
    }
    if (!is_positive_definite(q).positive_definite) {
        throw NotPositiveDefiniteError("Lyapunov right-hand side Q must be positive definite");
    }

    const std::size_t n = m.rows();
    const std::size_t nn = n * n;

    // Column-stacked vectorization: vec(M*P) = (I (x) M*) vec(P) and
    // vec(PM) = (M^T (x) I) vec(P), with vec index i + n*j for entry (i, j).
    ComplexMatrix k(nn, nn);
    std::vector<Complex> rhs(nn);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t row = i + n * j;
            for (std::size_t l = 0; l < n; ++l) {
                k(row, l + n * j) += std::conj(m(l, i));
                k(row, i + n * l) += m(l, j);
            }
            rhs[row] = -q(i, j);
        }
    }

    const auto x = solve_dense(std::move(k), std::move(rhs));
    if (!x) {
        throw NotHurwitzError("Lyapunov operator is singular; the spectrum of M touches the imaginary axis");
    }

    ComplexMatrix praw(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) praw(i, j) = (*x)[i + n * j];
    }
    // The linear solve does not enforce symmetry, so restore it before the
    // checked construction.
    ComplexMatrix psym(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            psym(i, j) = 0.5 * (praw(i, j) + std::conj(praw(j, i)));
        }
    }
    const HermitianMatrix p(psym);

    const PdReport pd = is_positive_definite(p);
    if (!pd.positive_definite) {
        throw NotHurwitzError("Lyapunov solution is not positive definite; M is not Hurwitz");
    }

    const ComplexMatrix residual = m.adjoint() * p.matrix() + p.matrix() * m + q.matrix();
    if (residual.frobenius_norm() > tol::lyap_residual * (1.0 + q.frobenius_norm())) {
        throw NotHurwitzError("Lyapunov re-substitution residual exceeds tolerance; M is at best marginally stable");
    }
    return p;
}

double rayleigh(const HermitianMatrix& h, const std::vector<Complex>& z) {
    if (z.size() != h.dim()) {
        throw ShapeMismatchError("Rayleigh quotient vector length does not match matrix dimension");
    }
    const std::vector<Complex> hz = h.matrix() * z;
    Complex s(0.0, 0.0);
    for (std::size_t i = 0; i < z.size(); ++i) s += std::conj(z[i]) * hz[i];
    return s.real();
}

} // namespace fostab
