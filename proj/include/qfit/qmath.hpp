#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfit {

using Complex = std::complex<double>;

/// Dense complex matrix in row-major order. Everything in this library is
/// 2x2 or 4x4, so simplicity wins over blocking/vectorization tricks.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

    static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return ComplexMatrix(rows, cols); }
    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Complex>& data() const { return data_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;
    /// Largest elementwise |a_ij|.
    double max_abs() const;
    /// Largest elementwise |a_ij - conj(a_ji)|; 0 for exactly Hermitian input.
    double hermiticity_residual() const;
    bool is_hermitian(double tol = 1e-12) const { return square() && hermiticity_residual() <= tol; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(double s, ComplexMatrix m);

/// Kronecker product with block ordering a(i,j)*b; dimensions multiply.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// sigma_0..sigma_3 (identity and the Pauli matrices).
const ComplexMatrix& pauli(int k);

struct NotHermitianError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Full spectrum of a Hermitian matrix. Eigenvalues are descending and
/// eigenvectors are stored as columns, phase-normalized so the first nonzero
/// entry of each column is real positive. Ties in the eigenvalue sort are
/// broken by lexicographic comparison of the normalized columns, making the
/// decomposition deterministic across runs.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Cyclic Jacobi diagonalization. Runs sweeps until the off-diagonal
/// Frobenius norm drops below 1e-13 (or 100 sweeps). Eigenvalues in
/// [-1e-12, 0) are clamped to 0 so downstream probability uses never see
/// PSD rounding noise. Throws NotHermitianError when the input fails the
/// Hermiticity check.
SpectralDecomposition eigh(const ComplexMatrix& m, double hermiticity_tol = 1e-10);

struct DensityDiagnostics {
    double hermiticity_residual = 0.0;
    double trace_residual = 0.0;
    double min_eigenvalue = 0.0;

    bool pass() const {
        return hermiticity_residual <= 1e-10 && trace_residual <= 1e-10 && min_eigenvalue >= -1e-10;
    }
};

/// Diagnostics, not exceptions: reports how far m is from a density matrix.
DensityDiagnostics validate_density(const ComplexMatrix& m);

}  // namespace qfit
