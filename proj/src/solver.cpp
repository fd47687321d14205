#include "fostab/solver.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include "fostab/errors.hpp"

namespace fostab {

namespace {

struct SweepResult {
    double value;
    std::uint64_t worst_index;
    std::vector<Complex> top_eigenvector;
};

/// Objective f(P) = max over vertices of lambda_max(L(P, A_v)), together
/// with the top eigenvector of the worst vertex form. Ties keep the lowest
/// vertex index.
SweepResult sweep(const VertexSet& verts, const HermitianMatrix& p, const FractionalOrder& ord) {
    SweepResult r{-std::numeric_limits<double>::infinity(), 0, {}};
    for (std::uint64_t idx = 0; idx < verts.size(); ++idx) {
        const HermitianMatrix form = lyapunov_form(p, verts.vertex(idx), ord);
        const EigResult eig = hermitian_eig(form);
        if (eig.max() > r.value) {
            r.value = eig.max();
            r.worst_index = idx;
            const std::size_t n = p.dim();
            r.top_eigenvector.assign(n, Complex(0.0, 0.0));
            for (std::size_t i = 0; i < n; ++i) {
                r.top_eigenvector[i] = eig.eigenvectors(i, n - 1);
            }
        }
    }
    return r;
}

/// Projection used after every step: enforce the eigenvalue floor, then
/// normalize the trace back to n. The input is exactly Hermitian by
/// construction of the update.
HermitianMatrix project(const ComplexMatrix& raw) {
    HermitianMatrix p(raw);
    const std::size_t n = p.dim();
    const EigResult eig = hermitian_eig(p);
    if (eig.min() < tol::pd_floor) {
        const double shift = tol::pd_floor - eig.min();
        ComplexMatrix lifted = p.matrix();
        for (std::size_t i = 0; i < n; ++i) lifted(i, i) += shift;
        p = HermitianMatrix(lifted);
    }
    return HermitianMatrix((static_cast<double>(n) / p.trace()) * p.matrix());
}

/// Subgradient of f at P: with z the top eigenvector of the worst vertex
/// form and w = A_v z, the derivative of z* L(P) z in P is
/// G = beta w z* + conj(beta) z w*, which is exactly Hermitian as computed.
ComplexMatrix subgradient(const RealMatrix& a_worst, const std::vector<Complex>& z, Complex beta) {
    const std::size_t n = z.size();
    const std::vector<Complex> w = ComplexMatrix::from_real(a_worst) * z;
    ComplexMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            g(i, j) = beta * (w[i] * std::conj(z[j])) + std::conj(beta) * (z[i] * std::conj(w[j]));
        }
    }
    return g;
}

/// Restart iterate I + 0.1 (R + R*) with R drawn entrywise from the run's
/// generator; written so the result is exactly Hermitian.
HermitianMatrix perturbed_start(std::size_t n, std::mt19937_64& rng) {
    ComplexMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            r(i, j) = Complex(2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0);
        }
    }
    ComplexMatrix start = ComplexMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            start(i, j) += 0.1 * (r(i, j) + std::conj(r(j, i)));
        }
    }
    return project(start);
}

void validate(const SolverConfig& cfg) {
    if (cfg.max_iters == 0) throw ConfigError("max_iters must be positive");
    if (!(cfg.step0 > 0.0) || !std::isfinite(cfg.step0)) throw ConfigError("step0 must be positive");
    if (!(cfg.tol_feas > 0.0) || cfg.tol_feas >= 1.0) {
        throw ConfigError("tol_feas must lie in (0, 1)");
    }
    if (cfg.restarts == 0) throw ConfigError("restarts must be positive");
    if (cfg.vertex_cap == 0) throw ConfigError("vertex_cap must be positive");
}

} // namespace

FeasibilityResult find_common_p(const IntervalMatrix& a, const FractionalOrder& ord,
                                const SolverConfig& cfg) {
    validate(cfg);
    const VertexSet verts(a, cfg.vertex_cap);
    const std::size_t n = a.dim();

    FeasibilityResult result{Verdict::Unknown, std::nullopt, std::nullopt, std::nullopt,
                             {},              0.0,          0,            0};

    // A vertex failing the argument test rules out any common certificate.
    for (std::uint64_t idx = 0; idx < verts.size(); ++idx) {
        const RealMatrix v = verts.vertex(idx);
        const PointVerdict pv = point_stability(v, ord);
        if (!pv.stable) {
            result.verdict = Verdict::Infeasible;
            result.witness = v;
            result.witness_index = idx;
            result.margin = pv.min_arg_margin;
            return result;
        }
    }

    std::mt19937_64 rng(cfg.seed);
    double best_value = std::numeric_limits<double>::infinity();

    for (std::size_t run = 0; run <= cfg.restarts; ++run) {
        HermitianMatrix p =
            (run == 0) ? HermitianMatrix::identity(n) : perturbed_start(n, rng);
        ++result.runs;

        for (std::size_t iter = 1; iter <= cfg.max_iters; ++iter) {
            const SweepResult obj = sweep(verts, p, ord);
            result.objective_trace.push_back(obj.value);
            ++result.iterations;
            best_value = std::min(best_value, obj.value);

            if (obj.value <= -cfg.tol_feas && is_positive_definite(p).positive_definite) {
                result.verdict = Verdict::Feasible;
                result.certificate = p;
                result.margin = -obj.value;
                return result;
            }

            const ComplexMatrix g = subgradient(verts.vertex(obj.worst_index),
                                                obj.top_eigenvector, ord.beta());
            const double gnorm = g.frobenius_norm();
            if (gnorm == 0.0) break;
            const double step = cfg.step0 / std::sqrt(static_cast<double>(iter));
            p = project(p.matrix() - (step / gnorm) * g);
        }
    }

    result.verdict = Verdict::Unknown;
    result.margin = -best_value;
    return result;
}

CertificateCheck verify_certificate(const ComplexMatrix& p, const IntervalMatrix& a,
                                    const FractionalOrder& ord, double tol,
                                    std::size_t vertex_cap) {
    if (!p.is_square() || p.rows() != a.dim()) {
        throw ShapeMismatchError("certificate dimension does not match the interval");
    }
    if (!p.all_finite()) {
        throw NonFiniteError("certificate has a NaN or infinite entry");
    }
    if (tol < 0.0 || !std::isfinite(tol)) {
        throw ConfigError("verification tolerance must be nonnegative");
    }

    CertificateCheck check{};
    check.tol = tol;

    double dev = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        for (std::size_t j = i; j < p.cols(); ++j) {
            dev = std::max(dev, std::abs(p(i, j) - std::conj(p(j, i))));
        }
    }
    check.max_hermitian_deviation = dev;
    check.hermitian_ok = dev <= tol::herm;

    const HermitianMatrix hp(0.5 * (p + p.adjoint()));
    const PdReport pd = is_positive_definite(hp, tol);
    check.positive_definite = pd.positive_definite;
    check.min_eigenvalue = pd.min_eigenvalue;

    const LambdaBarResult worst = lambda_bar_vertices(hp, a, ord, vertex_cap);
    check.lambda_bar = worst.value;
    check.lambda_bar_index = worst.argmax_index;
    check.vertex_lmis_ok = worst.value < -tol;

    check.pass = check.hermitian_ok && check.positive_definite && check.vertex_lmis_ok;
    return check;
}

} // namespace fostab
