#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fostab/errors.hpp"
#include "fostab/linalg.hpp"
#include "fostab/numeric.hpp"
#include "test_util.hpp"

using namespace fostab;
using testutil::random_complex;
using testutil::random_hermitian;
using testutil::random_hurwitz;
using testutil::random_unit_vector;

namespace {

ComplexMatrix make2(Complex a, Complex b, Complex c, Complex d) {
    ComplexMatrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

double eig_residual(const HermitianMatrix& h, const EigResult& eig) {
    double worst = 0.0;
    const std::size_t n = h.dim();
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Complex> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = eig.eigenvectors(i, k);
        std::vector<Complex> hv = h.matrix() * v;
        for (std::size_t i = 0; i < n; ++i) hv[i] -= eig.eigenvalues[k] * v[i];
        worst = std::max(worst, norm2(hv));
    }
    return worst;
}

} // namespace

TEST_CASE("matrix constructors reject empty shapes") {
    CHECK_THROWS_AS((RealMatrix(0, 2)), ShapeMismatchError);
    CHECK_THROWS_AS((ComplexMatrix(3, 0)), ShapeMismatchError);
}

TEST_CASE("hermitian construction checks symmetry and finiteness") {
    CHECK_THROWS_AS(HermitianMatrix(ComplexMatrix(2, 3)), ShapeMismatchError);

    ComplexMatrix bad = make2(Complex(1, 0), Complex(1, 0), Complex(2, 0), Complex(1, 0));
    CHECK_THROWS_AS((HermitianMatrix(bad)), NotHermitianError);

    ComplexMatrix nan = make2(Complex(1, 0), Complex(0, 0), Complex(0, 0),
                              Complex(std::nan(""), 0));
    CHECK_THROWS_AS((HermitianMatrix(nan)), NonFiniteError);

    // Deviation within tol::herm is accepted and averaged away.
    ComplexMatrix close = make2(Complex(1, 0), Complex(0.5, 1e-13), Complex(0.5, 0),
                                Complex(2, 0));
    const HermitianMatrix h(close);
    CHECK(h(0, 1) == std::conj(h(1, 0)));
    CHECK(h(0, 0).imag() == 0.0);
}

TEST_CASE("hermitian eig on frozen examples") {
    SUBCASE("identity") {
        const EigResult eig = hermitian_eig(HermitianMatrix::identity(2));
        CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("symmetric off-diagonal pair") {
        const HermitianMatrix h(make2(Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0)));
        const EigResult eig = hermitian_eig(h);
        CHECK(eig.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
        CHECK(eig.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("complex off-diagonal") {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        const HermitianMatrix h(make2(Complex(2, 0), Complex(0, 1), Complex(0, -1), Complex(2, 0)));
        const EigResult eig = hermitian_eig(h);
        CHECK(eig.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(eig.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-13));
        CHECK(eig_residual(h, eig) <= tol::eig_residual * (1.0 + h.frobenius_norm()));
    }
    SUBCASE("1x1") {
        ComplexMatrix m(1, 1);
        m(0, 0) = Complex(-4.25, 0.0);
        const EigResult eig = hermitian_eig(HermitianMatrix(m));
        CHECK(eig.eigenvalues[0] == doctest::Approx(-4.25).epsilon(1e-15));
    }
}

TEST_CASE("hermitian eig round-trip residual on random matrices") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng() % 6);
        const HermitianMatrix h = random_hermitian(n, rng, 3.0);
        const EigResult eig = hermitian_eig(h);

        REQUIRE(eig.eigenvalues.size() == n);
        for (std::size_t k = 1; k < n; ++k) {
            CHECK(eig.eigenvalues[k - 1] <= eig.eigenvalues[k]);
        }
        CHECK(eig_residual(h, eig) <= tol::eig_residual * (1.0 + h.frobenius_norm()));

        // Columns stay orthonormal.
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a; b < n; ++b) {
                Complex dot(0.0, 0.0);
                for (std::size_t i = 0; i < n; ++i) {
                    dot += std::conj(eig.eigenvectors(i, a)) * eig.eigenvectors(i, b);
                }
                const double expected = (a == b) ? 1.0 : 0.0;
                CHECK(std::abs(dot - Complex(expected, 0.0)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("largest eigenvalue dominates random Rayleigh quotients") {
    std::mt19937_64 rng(202);
    const HermitianMatrix h = random_hermitian(5, rng, 2.0);
    const EigResult eig = hermitian_eig(h);
    for (int trial = 0; trial < 1000; ++trial) {
        const double q = rayleigh(h, random_unit_vector(5, rng));
        CHECK(q <= eig.max() + 1e-9);
        CHECK(q >= eig.min() - 1e-9);
    }
}

TEST_CASE("positive definiteness report") {
    CHECK(is_positive_definite(HermitianMatrix::identity(3)).positive_definite);

    const HermitianMatrix indefinite(
        make2(Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0)));
    const PdReport report = is_positive_definite(indefinite);
    CHECK_FALSE(report.positive_definite);
    CHECK(report.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-14));

    CHECK_FALSE(is_positive_definite(HermitianMatrix::identity(2), 1.0).positive_definite);
    CHECK_THROWS_AS(is_positive_definite(HermitianMatrix::identity(2), -0.5), ConfigError);
}

TEST_CASE("lyapunov solve on frozen examples") {
    SUBCASE("diagonal real") {
        // M = diag(-1, -2), Q = I: P = diag(1/2, 1/4).
        const ComplexMatrix m = make2(Complex(-1, 0), Complex(0, 0), Complex(0, 0), Complex(-2, 0));
        const HermitianMatrix p = lyapunov_solve(m, HermitianMatrix::identity(2));
        CHECK(p(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(p(1, 1).real() == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(std::abs(p(0, 1)) <= 1e-12);
    }
    SUBCASE("rotated scalar") {
        // M = -exp(-j pi/4): 2 Re(M) P = -1 gives P = 1/sqrt(2).
        ComplexMatrix m(1, 1);
        m(0, 0) = -std::exp(Complex(0.0, -std::acos(-1.0) / 4.0));
        const HermitianMatrix p = lyapunov_solve(m, HermitianMatrix::identity(1));
        CHECK(p(0, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    }
    SUBCASE("not Hurwitz") {
        ComplexMatrix m(1, 1);
        m(0, 0) = Complex(1.0, 0.0);
        CHECK_THROWS_AS(lyapunov_solve(m, HermitianMatrix::identity(1)), NotHurwitzError);
    }
    SUBCASE("marginal spectrum means singular operator") {
        const ComplexMatrix m = make2(Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0));
        CHECK_THROWS_AS(lyapunov_solve(m, HermitianMatrix::identity(2)), NotHurwitzError);
    }
    SUBCASE("indefinite Q is rejected") {
        const ComplexMatrix m = make2(Complex(-1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0));
        const HermitianMatrix q(
            make2(Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0)));
        CHECK_THROWS_AS(lyapunov_solve(m, q), NotPositiveDefiniteError);
    }
}

TEST_CASE("lyapunov solve satisfies the equation on random Hurwitz matrices") {
    std::mt19937_64 rng(303);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng() % 4);
        const ComplexMatrix m = random_hurwitz(n, rng);
        const HermitianMatrix q = HermitianMatrix::identity(n);
        const HermitianMatrix p = lyapunov_solve(m, q);

        CHECK(is_positive_definite(p).positive_definite);
        const ComplexMatrix residual = m.adjoint() * p.matrix() + p.matrix() * m + q.matrix();
        CHECK(residual.frobenius_norm() <= tol::lyap_residual * (1.0 + q.frobenius_norm()));
    }
}

TEST_CASE("rayleigh quotient matches the quadratic form") {
    std::mt19937_64 rng(404);
    const HermitianMatrix h = random_hermitian(3, rng);
    const std::vector<Complex> z = random_unit_vector(3, rng);
    // Independent evaluation.
    Complex acc(0.0, 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            acc += std::conj(z[i]) * h(i, j) * z[j];
        }
    }
    CHECK(std::abs(acc.imag()) <= 1e-12);
    CHECK(rayleigh(h, z) == doctest::Approx(acc.real()).epsilon(1e-12));
}
