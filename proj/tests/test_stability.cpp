#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "fostab/errors.hpp"
#include "fostab/interval.hpp"
#include "fostab/linalg.hpp"
#include "fostab/matrix.hpp"
#include "fostab/numeric.hpp"
#include "fostab/stability.hpp"
#include "test_util.hpp"

using namespace fostab;

namespace {

constexpr double kPi = 3.14159265358979323846;

RealMatrix scalar(double v) {
    RealMatrix m(1, 1);
    m(0, 0) = v;
    return m;
}

/// Sorts by real part then imaginary part so two spectra can be compared.
std::vector<Complex> sorted(std::vector<Complex> v) {
    std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) {
            return a.real() < b.real();
        }
        return a.imag() < b.imag();
    });
    return v;
}

/// Real matrix whose spectrum is buried deep in the left half plane, far
/// enough from the imaginary axis to sit inside the wedge for any
/// alpha <= 1.9.
RealMatrix deep_hurwitz(std::size_t n, std::mt19937_64& rng) {
    RealMatrix m = testutil::random_real(n, rng);
    RealMatrix shifted = m;
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            norm += m(i, j) * m(i, j);
        }
    }
    norm = std::sqrt(norm);
    const double shift = 8.0 * norm + testutil::uniform(rng, 0.2, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        shifted(i, i) -= shift;
    }
    return shifted;
}

double spectrum_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    REQUIRE(a.size() == b.size());
    auto sa = sorted(a);
    auto sb = sorted(b);
    double worst = 0.0;
    for (std::size_t i = 0; i < sa.size(); ++i) {
        worst = std::max(worst, std::abs(sa[i] - sb[i]));
    }
    return worst;
}

} // namespace

TEST_CASE("order validation accepts [1, 2) and rejects everything else") {
    CHECK_NOTHROW((FractionalOrder(1.0)));
    CHECK_NOTHROW((FractionalOrder(1.999999)));
    CHECK_THROWS_AS((FractionalOrder(0.9)), OrderOutOfRangeError);
    CHECK_THROWS_AS((FractionalOrder(2.0)), OrderOutOfRangeError);
    CHECK_THROWS_AS((FractionalOrder(-1.5)), OrderOutOfRangeError);
    CHECK_THROWS_AS((FractionalOrder(std::numeric_limits<double>::quiet_NaN())), OrderOutOfRangeError);
    CHECK_THROWS_AS((FractionalOrder(std::numeric_limits<double>::infinity())), OrderOutOfRangeError);
}

TEST_CASE("rotation is exp(j (1 - alpha) pi / 2) with unit modulus") {
    FractionalOrder classical(1.0);
    CHECK(classical.beta() == Complex(1.0, 0.0));

    FractionalOrder half(1.5);
    Complex expected = std::exp(Complex(0.0, -kPi / 4.0));
    CHECK(std::abs(half.beta() - expected) < 1e-15);
    CHECK(std::abs(std::abs(half.beta()) - 1.0) <= tol::unit_modulus);

    for (double alpha : {1.0, 1.1, 1.3, 1.5, 1.7, 1.9, 1.99}) {
        FractionalOrder ord(alpha);
        CHECK(std::abs(std::abs(ord.beta()) - 1.0) <= tol::unit_modulus);
        CHECK(std::arg(ord.beta()) <= 0.0);
        CHECK(std::abs(std::arg(ord.beta()) - (1.0 - alpha) * kPi / 2.0) < 1e-15);
    }
}

TEST_CASE("scalar form value matches the closed-form 2 Re(beta) p a") {
    FractionalOrder ord(1.5);
    HermitianMatrix p = HermitianMatrix::identity(1);
    HermitianMatrix form = lyapunov_form(p, scalar(-1.0), ord);
    // beta = exp(-j pi / 4), so L = -(beta + conj(beta)) = -sqrt(2).
    CHECK(form(0, 0).imag() == 0.0);
    CHECK(std::abs(form(0, 0).real() - (-std::sqrt(2.0))) < 1e-15);
}

TEST_CASE("form output is exactly Hermitian and shape-checked") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 1000; ++trial) {
        std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
        FractionalOrder ord(1.0 + 0.9 * fostab::uniform01(rng));
        HermitianMatrix p = testutil::random_hermitian(n, rng);
        RealMatrix a = testutil::random_real(n, rng);
        HermitianMatrix form = lyapunov_form(p, a, ord);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(form(i, i).imag() == 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(form(i, j) == std::conj(form(j, i)));
            }
        }
    }

    FractionalOrder ord(1.5);
    CHECK_THROWS_AS(lyapunov_form(HermitianMatrix::identity(2), RealMatrix(3, 3), ord),
                    ShapeMismatchError);
}

TEST_CASE("form is linear in p") {
    std::mt19937_64 rng(4);
    FractionalOrder ord(1.7);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + static_cast<std::size_t>(trial % 2);
        HermitianMatrix p1 = testutil::random_hermitian(n, rng);
        HermitianMatrix p2 = testutil::random_hermitian(n, rng);
        RealMatrix a = testutil::random_real(n, rng);

        ComplexMatrix sum_matrix = p1.matrix() + p2.matrix();
        HermitianMatrix psum(sum_matrix);
        ComplexMatrix lhs = lyapunov_form(psum, a, ord).matrix();
        ComplexMatrix rhs = lyapunov_form(p1, a, ord).matrix() + lyapunov_form(p2, a, ord).matrix();
        CHECK((lhs - rhs).max_abs() < 1e-12);
    }
}

TEST_CASE("alpha = 1 reduces the form to the classical P A + A^T P") {
    std::mt19937_64 rng(5);
    FractionalOrder ord(1.0);
    for (int trial = 0; trial < 100; ++trial) {
        HermitianMatrix p = testutil::random_hermitian(3, rng);
        RealMatrix a = testutil::random_real(3, rng);
        ComplexMatrix ac = ComplexMatrix::from_real(a);
        ComplexMatrix classical =
            p.matrix() * ac + ac.adjoint() * p.matrix();
        ComplexMatrix form = lyapunov_form(p, a, ord).matrix();
        CHECK((form - classical).max_abs() < 1e-13);
    }
}

TEST_CASE("conjugating the rotation is undone by conjugating p") {
    // For real A the map P -> conj(P) turns a certificate for one rotation
    // direction into one for the other, so testing a single direction covers
    // both; this is the identity that makes that sound.
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 2 + static_cast<std::size_t>(trial % 2);
        FractionalOrder ord(1.0 + 0.9 * fostab::uniform01(rng));
        HermitianMatrix p = testutil::random_hermitian(n, rng);
        ComplexMatrix conj_raw(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                conj_raw(i, j) = std::conj(p(i, j));
            }
        }
        HermitianMatrix conj_p(conj_raw);
        RealMatrix a = testutil::random_real(n, rng);

        HermitianMatrix minus = lyapunov_form(conj_p, a, ord.beta());
        HermitianMatrix plus = lyapunov_form(p, a, std::conj(ord.beta()));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(std::abs(plus(i, j) - std::conj(minus(i, j))) < 1e-15);
            }
        }
        auto em = hermitian_eig(minus);
        auto ep = hermitian_eig(plus);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(em.eigenvalues[i] - ep.eigenvalues[i]) < 1e-10);
        }
    }
}

TEST_CASE("general spectrum matches closed forms on small frozen matrices") {
    SUBCASE("diagonal") {
        ComplexMatrix a(2, 2);
        a(0, 0) = Complex(3.0, 1.0);
        a(1, 1) = Complex(-2.0, 0.5);
        auto spec = general_spectrum(a);
        CHECK(spectrum_distance(spec, {Complex(3.0, 1.0), Complex(-2.0, 0.5)}) < 1e-12);
    }
    SUBCASE("rotation by 90 degrees has eigenvalues +-j") {
        RealMatrix a(2, 2);
        a(0, 1) = -1.0;
        a(1, 0) = 1.0;
        auto spec = general_spectrum(ComplexMatrix::from_real(a));
        CHECK(spectrum_distance(spec, {Complex(0.0, -1.0), Complex(0.0, 1.0)}) < 1e-12);
    }
    SUBCASE("defective Jordan block") {
        ComplexMatrix a(2, 2);
        a(0, 0) = 2.0;
        a(0, 1) = 1.0;
        a(1, 1) = 2.0;
        auto spec = general_spectrum(a);
        CHECK(spectrum_distance(spec, {Complex(2.0, 0.0), Complex(2.0, 0.0)}) < 1e-7);
    }
    SUBCASE("companion matrix of z^3 - 6 z^2 + 11 z - 6") {
        ComplexMatrix a(3, 3);
        a(0, 2) = 6.0;
        a(1, 2) = -11.0;
        a(2, 2) = 6.0;
        a(1, 0) = 1.0;
        a(2, 1) = 1.0;
        auto spec = general_spectrum(a);
        CHECK(spectrum_distance(spec, {Complex(1.0, 0.0), Complex(2.0, 0.0), Complex(3.0, 0.0)}) < 1e-9);
    }
}

TEST_CASE("general spectrum agrees with characteristic polynomial roots") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 400; ++trial) {
        std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
        RealMatrix a = testutil::random_real(n, rng);
        auto spec = general_spectrum(ComplexMatrix::from_real(a));
        REQUIRE(spec.size() == n);

        auto poly = testutil::char_poly(a);
        for (Complex lambda : spec) {
            double scale = std::pow(1.0 + std::abs(lambda), static_cast<double>(n));
            CHECK(std::abs(testutil::poly_eval(poly, lambda)) < 1e-8 * scale);
        }
    }
}

TEST_CASE("general spectrum preserves the trace of complex matrices") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
        ComplexMatrix a = testutil::random_complex(n, rng);
        auto spec = general_spectrum(a);
        REQUIRE(spec.size() == n);

        Complex trace_sum = 0.0;
        Complex spec_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            trace_sum += a(i, i);
        }
        for (Complex lambda : spec) {
            spec_sum += lambda;
        }
        CHECK(std::abs(trace_sum - spec_sum) < 1e-9 * (1.0 + std::abs(trace_sum)));
    }
}

TEST_CASE("real matrices produce conjugate-paired spectra") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
        RealMatrix a = testutil::random_real(n, rng);
        auto spec = general_spectrum(ComplexMatrix::from_real(a));
        for (Complex z : spec) {
            double nearest = std::numeric_limits<double>::infinity();
            for (Complex w : spec) {
                nearest = std::min(nearest, std::abs(std::conj(z) - w));
            }
            CHECK(nearest < 1e-8);
        }
    }
}

TEST_CASE("point stability is the strict argument test") {
    SUBCASE("negative scalar is stable for every order") {
        for (double alpha : {1.0, 1.5, 1.9}) {
            auto verdict = point_stability(scalar(-1.0), FractionalOrder(alpha));
            CHECK(verdict.stable);
            CHECK(std::abs(verdict.min_arg_margin - (kPi - alpha * kPi / 2.0)) < 1e-12);
        }
    }
    SUBCASE("positive scalar is unstable for every order") {
        auto verdict = point_stability(scalar(1.0), FractionalOrder(1.0));
        CHECK(!verdict.stable);
        CHECK(verdict.min_arg_margin < 0.0);
    }
    SUBCASE("zero eigenvalue is unstable by definition") {
        auto verdict = point_stability(scalar(0.0), FractionalOrder(1.5));
        CHECK(!verdict.stable);
        CHECK(std::abs(verdict.min_arg_margin - (-1.5 * kPi / 2.0)) < 1e-12);
    }
    SUBCASE("oscillator inside the fractional wedge but not the half plane") {
        // Eigenvalues -1 +- 10 j, |arg| ~ 1.6705 rad.
        RealMatrix a(2, 2);
        a(0, 0) = -1.0;
        a(0, 1) = 10.0;
        a(1, 0) = -10.0;
        a(1, 1) = -1.0;
        CHECK(point_stability(a, FractionalOrder(1.0)).stable);
        CHECK(!point_stability(a, FractionalOrder(1.1)).stable);
    }
    SUBCASE("purely imaginary eigenvalues are stable only below the wedge") {
        RealMatrix a(2, 2);
        a(0, 1) = 1.0;
        a(1, 0) = -1.0;
        CHECK(!point_stability(a, FractionalOrder(1.0)).stable);
        CHECK(!point_stability(a, FractionalOrder(1.5)).stable);
    }
}

TEST_CASE("point certificate solves the rotated Lyapunov equation") {
    SUBCASE("scalar") {
        FractionalOrder ord(1.5);
        HermitianMatrix p = point_lyapunov_certificate(scalar(-1.0), ord);
        // L(P, -1) = -sqrt(2) p must equal -1, so p = 1 / sqrt(2).
        CHECK(std::abs(p(0, 0).real() - 1.0 / std::sqrt(2.0)) < 1e-12);
    }
    SUBCASE("random stable points produce valid certificates") {
        std::mt19937_64 rng(9);
        int built = 0;
        for (int trial = 0; trial < 300 && built < 120; ++trial) {
            std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
            FractionalOrder ord(1.0 + 0.9 * fostab::uniform01(rng));
            RealMatrix a = deep_hurwitz(n, rng);
            if (!point_stability(a, ord).stable) {
                continue;
            }
            HermitianMatrix p = point_lyapunov_certificate(a, ord);
            CHECK(is_positive_definite(p).positive_definite);
            HermitianMatrix form = lyapunov_form(p, a, ord);
            auto eig = hermitian_eig(form);
            CHECK(std::abs(eig.max() + 1.0) < 1e-8);
            ++built;
        }
        CHECK(built >= 120);
    }
    SUBCASE("unstable points are rejected") {
        CHECK_THROWS_AS(point_lyapunov_certificate(scalar(1.0), FractionalOrder(1.5)),
                        NotPointStableError);
        CHECK_THROWS_AS(point_lyapunov_certificate(scalar(0.0), FractionalOrder(1.0)),
                        NotPointStableError);
    }
}

TEST_CASE("worst vertex form eigenvalue is found with ties to the lowest index") {
    FractionalOrder ord(1.0);
    HermitianMatrix p = HermitianMatrix::identity(1);

    IntervalMatrix box(scalar(-2.0), scalar(-1.0));
    auto res = lambda_bar_vertices(p, box, ord);
    // Form values are -4 at vertex 0 and -2 at vertex 1.
    CHECK(std::abs(res.value - (-2.0)) < 1e-14);
    CHECK(res.argmax_index == 1);
    CHECK(res.argmax_vertex(0, 0) == -1.0);

    IntervalMatrix degenerate(scalar(-3.0), scalar(-3.0));
    auto single = lambda_bar_vertices(p, degenerate, ord);
    CHECK(single.argmax_index == 0);
    CHECK(std::abs(single.value - (-6.0)) < 1e-14);
}

TEST_CASE("vertex maximum dominates the form on sampled interiors") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2;
        FractionalOrder ord(1.0 + 0.9 * fostab::uniform01(rng));
        IntervalMatrix box = testutil::random_interval_around(testutil::random_real(n, rng), rng, 0.3, 4);
        HermitianMatrix p = testutil::random_hermitian(n, rng);
        ComplexMatrix shifted =
            p.matrix() + Complex(3.0 * p.frobenius_norm() + 1.0, 0.0) * ComplexMatrix::identity(n);
        HermitianMatrix pd_p(shifted);

        auto res = lambda_bar_vertices(pd_p, box, ord);
        for (const RealMatrix& s : sample(box, 50, static_cast<std::uint64_t>(trial))) {
            auto eig = hermitian_eig(lyapunov_form(pd_p, s, ord));
            CHECK(eig.max() <= res.value + 1e-9);
        }
    }
}

TEST_CASE("sufficiency verdict reports the negation margin") {
    FractionalOrder ord(1.0);
    RealMatrix lo(2, 2);
    lo(0, 0) = -3.0;
    lo(1, 1) = -2.0;
    IntervalMatrix box(lo, lo);

    auto report = robust_stability_sufficient(box, ord, HermitianMatrix::identity(2));
    CHECK(report.sufficient);
    CHECK(std::abs(report.margin - 4.0) < 1e-12);
    CHECK(std::abs(report.detail.value + 4.0) < 1e-12);

    IntervalMatrix bad(scalar(-1.0), scalar(1.0));
    auto fail = robust_stability_sufficient(bad, ord, HermitianMatrix::identity(1));
    CHECK(!fail.sufficient);
    CHECK(fail.margin <= 0.0);

    ComplexMatrix raw(2, 2);
    raw(0, 0) = 1.0;
    raw(1, 1) = -1.0;
    HermitianMatrix indefinite(raw);
    CHECK_THROWS_AS(robust_stability_sufficient(box, ord, indefinite), NotPositiveDefiniteError);
}
