#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace fostab {

using Complex = std::complex<double>;

/// Dense real matrix with row-major storage.
class RealMatrix {
public:
    RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    static RealMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    bool all_finite() const;
    double frobenius_norm() const;
    double max_abs() const;

    friend bool operator==(const RealMatrix& a, const RealMatrix& b) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

/// Dense complex matrix with row-major storage.
class ComplexMatrix {
public:
    ComplexMatrix(std::size_t rows, std::size_t cols, Complex fill = Complex(0.0, 0.0));

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix from_real(const RealMatrix& a);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    /// Conjugate transpose.
    ComplexMatrix adjoint() const;

    bool all_finite() const;
    double frobenius_norm() const;
    double max_abs() const;

    friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
ComplexMatrix operator*(double s, const ComplexMatrix& a);

/// Matrix times column vector.
std::vector<Complex> operator*(const ComplexMatrix& a, const std::vector<Complex>& x);

double norm2(const std::vector<Complex>& x);

} // namespace fostab
