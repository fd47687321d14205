#include "fostab/stability.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "fostab/errors.hpp"
#include "fostab/numeric.hpp"

namespace fostab {

namespace {

constexpr double kPi = std::numbers::pi;

/// Eigenvalues of a 2x2 complex matrix by the quadratic formula.
std::pair<Complex, Complex> eig2(Complex a, Complex b, Complex c, Complex d) {
    const Complex half_tr = 0.5 * (a + d);
    const Complex disc = std::sqrt(half_tr * half_tr - (a * d - b * c));
    return {half_tr + disc, half_tr - disc};
}

/// In-place Householder reduction to upper Hessenberg form.
void hessenberg(ComplexMatrix& h) {
    const std::size_t n = h.rows();
    if (n < 3) return;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double colnorm = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) colnorm += std::norm(h(i, k));
        colnorm = std::sqrt(colnorm);
        if (colnorm == 0.0) continue;

        const Complex x0 = h(k + 1, k);
        const Complex phase = (x0 == Complex(0.0, 0.0)) ? Complex(1.0, 0.0) : x0 / std::abs(x0);
        const Complex alpha = -phase * colnorm;

        std::vector<Complex> v(n, Complex(0.0, 0.0));
        double vnorm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = h(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) continue;
        const double scale = 2.0 / vnorm2;

        // Left: H <- H - scale * v (v* H)
        for (std::size_t j = k; j < n; ++j) {
            Complex dot(0.0, 0.0);
            for (std::size_t i = k + 1; i < n; ++i) dot += std::conj(v[i]) * h(i, j);
            dot *= scale;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= v[i] * dot;
        }
        // Right: H <- H - (H v) v* * scale
        for (std::size_t i = 0; i < n; ++i) {
            Complex dot(0.0, 0.0);
            for (std::size_t j = k + 1; j < n; ++j) dot += h(i, j) * v[j];
            dot *= scale;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= dot * std::conj(v[j]);
        }

        h(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex(0.0, 0.0);
    }
}

/// Wilkinson shift: the eigenvalue of the trailing 2x2 block closest to the
/// bottom-right entry.
Complex wilkinson_shift(const ComplexMatrix& h, std::size_t hi) {
    const auto [m1, m2] = eig2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    return (std::abs(m1 - h(hi, hi)) <= std::abs(m2 - h(hi, hi))) ? m1 : m2;
}

struct Givens {
    double c;
    Complex s;
};

Givens make_givens(Complex f, Complex g) {
    if (g == Complex(0.0, 0.0)) return {1.0, Complex(0.0, 0.0)};
    const double d = std::sqrt(std::norm(f) + std::norm(g));
    if (f == Complex(0.0, 0.0)) return {0.0, std::conj(g) / d};
    const double af = std::abs(f);
    return {af / d, (f / af) * std::conj(g) / d};
}

} // namespace

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha), beta_(1.0, 0.0) {
    if (!(alpha >= 1.0 && alpha < 2.0)) {
        throw OrderOutOfRangeError("order alpha must satisfy 1 <= alpha < 2");
    }
    const double theta = (1.0 - alpha) * (kPi / 2.0);
    beta_ = Complex(std::cos(theta), std::sin(theta));
}

HermitianMatrix lyapunov_form(const HermitianMatrix& p, const RealMatrix& a, const FractionalOrder& ord) {
    return lyapunov_form(p, a, ord.beta());
}

HermitianMatrix lyapunov_form(const HermitianMatrix& p, const RealMatrix& a, Complex beta) {
    if (!a.is_square() || a.rows() != p.dim()) {
        throw ShapeMismatchError("Lyapunov form requires a square A matching P's dimension");
    }
    if (!a.all_finite()) {
        throw NonFiniteError("Lyapunov form input has a NaN or infinite entry");
    }
    const std::size_t n = p.dim();
    const ComplexMatrix x = beta * (p.matrix() * ComplexMatrix::from_real(a));
    // L = X + X* entry by entry keeps conj-symmetry exact in floating point.
    ComplexMatrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            l(i, j) = x(i, j) + std::conj(x(j, i));
        }
    }
    return HermitianMatrix(l);
}

std::vector<Complex> general_spectrum(const ComplexMatrix& a) {
    if (!a.is_square()) {
        throw ShapeMismatchError("spectrum requires a square matrix");
    }
    if (!a.all_finite()) {
        throw NonFiniteError("spectrum input has a NaN or infinite entry");
    }
    const std::size_t n = a.rows();
    if (n == 1) return {a(0, 0)};
    if (n == 2) {
        const auto [m1, m2] = eig2(a(0, 0), a(0, 1), a(1, 0), a(1, 1));
        return {m1, m2};
    }

    ComplexMatrix h = a;
    hessenberg(h);

    constexpr double eps = 2.22e-16;
    std::vector<Complex> values;
    values.reserve(n);

    std::size_t hi = n - 1;
    std::size_t iters_here = 0;
    std::size_t total_iters = 0;
    const std::size_t total_cap = 100 * n;

    while (true) {
        // Deflate negligible subdiagonals.
        for (std::size_t m = hi; m >= 1; --m) {
            double small = eps * (std::abs(h(m - 1, m - 1)) + std::abs(h(m, m)));
            if (small == 0.0) small = eps * h.frobenius_norm();
            if (std::abs(h(m, m - 1)) <= small) h(m, m - 1) = Complex(0.0, 0.0);
        }
        while (hi > 0 && h(hi, hi - 1) == Complex(0.0, 0.0)) {
            values.push_back(h(hi, hi));
            --hi;
            iters_here = 0;
        }
        if (hi == 0) {
            values.push_back(h(0, 0));
            break;
        }

        std::size_t lo = hi;
        while (lo > 0 && h(lo, lo - 1) != Complex(0.0, 0.0)) --lo;

        if (hi - lo == 1) {
            const auto [m1, m2] = eig2(h(lo, lo), h(lo, hi), h(hi, lo), h(hi, hi));
            values.push_back(m1);
            values.push_back(m2);
            if (lo == 0) break;
            hi = lo - 1;
            iters_here = 0;
            continue;
        }

        ++iters_here;
        ++total_iters;
        if (iters_here > 60 || total_iters > total_cap) {
            throw SpectrumFailureError("shifted QR iteration failed to converge");
        }

        Complex mu = wilkinson_shift(h, hi);
        if (iters_here % 12 == 0) {
            // Exceptional shift to break rare slow cycles.
            mu = h(hi, hi) + Complex(0.75 * std::abs(h(hi, hi - 1)), 0.0);
        }

        // One explicit shifted QR sweep on the active block: factor
        // H - mu I = QR with Givens rotations, then form RQ + mu I.
        for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= mu;

        std::vector<Givens> rots;
        rots.reserve(hi - lo);
        for (std::size_t i = lo; i < hi; ++i) {
            const Givens g = make_givens(h(i, i), h(i + 1, i));
            rots.push_back(g);
            for (std::size_t j = i; j <= hi; ++j) {
                const Complex top = h(i, j);
                const Complex bottom = h(i + 1, j);
                h(i, j) = g.c * top + g.s * bottom;
                h(i + 1, j) = -std::conj(g.s) * top + g.c * bottom;
            }
            h(i + 1, i) = Complex(0.0, 0.0);
        }
        for (std::size_t i = lo; i < hi; ++i) {
            const Givens g = rots[i - lo];
            const std::size_t row_top = lo;
            const std::size_t row_bottom = std::min(i + 1, hi);
            for (std::size_t r = row_top; r <= row_bottom; ++r) {
                const Complex left = h(r, i);
                const Complex right = h(r, i + 1);
                h(r, i) = g.c * left + std::conj(g.s) * right;
                h(r, i + 1) = -g.s * left + g.c * right;
            }
        }
        for (std::size_t i = lo; i <= hi; ++i) h(i, i) += mu;
    }

    return values;
}

PointVerdict point_stability(const RealMatrix& a, const FractionalOrder& ord) {
    if (!a.is_square()) {
        throw ShapeMismatchError("point stability requires a square matrix");
    }
    const std::vector<Complex> spectrum = general_spectrum(ComplexMatrix::from_real(a));
    const double wedge = ord.alpha() * (kPi / 2.0);
    double margin = std::numeric_limits<double>::infinity();
    for (const Complex& lambda : spectrum) {
        const double angle = (lambda == Complex(0.0, 0.0)) ? 0.0 : std::abs(std::arg(lambda));
        margin = std::min(margin, angle - wedge);
    }
    return PointVerdict{margin > 0.0, spectrum, margin};
}

HermitianMatrix point_lyapunov_certificate(const RealMatrix& a, const FractionalOrder& ord) {
    const PointVerdict verdict = point_stability(a, ord);
    if (!verdict.stable) {
        throw NotPointStableError("matrix fails the argument test; no per-point certificate exists");
    }
    const ComplexMatrix m = ord.beta() * ComplexMatrix::from_real(a);
    try {
        return lyapunov_solve(m, HermitianMatrix::identity(a.rows()));
    } catch (const NotHurwitzError& e) {
        throw NotPointStableError(std::string("rotated matrix is numerically marginal: ") + e.what());
    }
}

LambdaBarResult lambda_bar_vertices(const HermitianMatrix& p, const IntervalMatrix& a,
                                    const FractionalOrder& ord, std::size_t vertex_cap) {
    if (a.dim() != p.dim()) {
        throw ShapeMismatchError("interval dimension does not match P");
    }
    const VertexSet verts(a, vertex_cap);
    double best = -std::numeric_limits<double>::infinity();
    std::uint64_t best_index = 0;
    for (std::uint64_t idx = 0; idx < verts.size(); ++idx) {
        const HermitianMatrix form = lyapunov_form(p, verts.vertex(idx), ord);
        const double top = hermitian_eig(form).max();
        if (top > best) {
            best = top;
            best_index = idx;
        }
    }
    return LambdaBarResult{best, verts.vertex(best_index), best_index};
}

SufficiencyReport robust_stability_sufficient(const IntervalMatrix& a, const FractionalOrder& ord,
                                              const HermitianMatrix& p, std::size_t vertex_cap) {
    const PdReport pd = is_positive_definite(p);
    if (!pd.positive_definite) {
        throw NotPositiveDefiniteError("candidate P is not positive definite (min eigenvalue " +
                                       std::to_string(pd.min_eigenvalue) + ")");
    }
    LambdaBarResult worst = lambda_bar_vertices(p, a, ord, vertex_cap);
    return SufficiencyReport{worst.value < 0.0, -worst.value, std::move(worst)};
}

} // namespace fostab
