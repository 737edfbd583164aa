#include "qfit/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qfit {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const Complex& v : data_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexMatrix::hermiticity_residual() const {
    if (!square()) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (Complex& v : data_) v *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    ComplexMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(double s, ComplexMatrix m) { return m *= Complex{s, 0.0}; }

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex v = a(i, j);
            if (v == Complex{0.0, 0.0}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = v * b(k, l);
        }
    return out;
}

const ComplexMatrix& pauli(int k) {
    static const std::vector<ComplexMatrix> sigma = [] {
        std::vector<ComplexMatrix> s(4, ComplexMatrix(2, 2));
        s[0](0, 0) = 1.0;
        s[0](1, 1) = 1.0;
        s[1](0, 1) = 1.0;
        s[1](1, 0) = 1.0;
        s[2](0, 1) = Complex{0.0, -1.0};
        s[2](1, 0) = Complex{0.0, 1.0};
        s[3](0, 0) = 1.0;
        s[3](1, 1) = -1.0;
        return s;
    }();
    return sigma.at(static_cast<std::size_t>(k));
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q). The off-diagonal phase is
// absorbed into the rotation so the 2x2 subproblem reduces to the real case.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double r = std::abs(apq);
    if (r < 1e-300) {
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        return;
    }
    const Complex phase = apq / r;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double tau = (app - aqq) / (2.0 * r);
    double t;
    if (tau >= 0.0)
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    else
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const std::size_t n = a.rows();
    // Columns: [cp', cq'] = [cp, cq] * [[c, -s*phase],[s*conj(phase), c]]
    for (std::size_t i = 0; i < n; ++i) {
        const Complex aip = a(i, p);
        const Complex aiq = a(i, q);
        a(i, p) = c * aip + s * std::conj(phase) * aiq;
        a(i, q) = -s * phase * aip + c * aiq;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const Complex apj = a(p, j);
        const Complex aqj = a(q, j);
        a(p, j) = c * apj + s * phase * aqj;
        a(q, j) = -s * std::conj(phase) * apj + c * aqj;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = Complex{a(p, p).real(), 0.0};
    a(q, q) = Complex{a(q, q).real(), 0.0};

    for (std::size_t i = 0; i < n; ++i) {
        const Complex vip = v(i, p);
        const Complex viq = v(i, q);
        v(i, p) = c * vip + s * std::conj(phase) * viq;
        v(i, q) = -s * phase * vip + c * viq;
    }
}

// Phase-normalize a column so its first entry above threshold is real positive.
void normalize_column_phase(ComplexMatrix& v, std::size_t col) {
    for (std::size_t i = 0; i < v.rows(); ++i) {
        const Complex e = v(i, col);
        if (std::abs(e) > 1e-12) {
            const Complex w = std::conj(e) / std::abs(e);
            for (std::size_t k = 0; k < v.rows(); ++k) v(k, col) *= w;
            return;
        }
    }
}

bool column_lex_less(const ComplexMatrix& v, std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < v.rows(); ++i) {
        const Complex x = v(i, a);
        const Complex y = v(i, b);
        if (x.real() != y.real()) return x.real() < y.real();
        if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
    return false;
}

}  // namespace

SpectralDecomposition eigh(const ComplexMatrix& m, double hermiticity_tol) {
    if (!m.square()) throw NotHermitianError("eigh: matrix is not square");
    if (m.hermiticity_residual() > hermiticity_tol)
        throw NotHermitianError("eigh: Hermiticity residual " + std::to_string(m.hermiticity_residual()) +
                                " exceeds tolerance");

    const std::size_t n = m.rows();
    // Work on the exactly Hermitian part so rounding asymmetry cannot leak in.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (off_diagonal_norm(a) <= 1e-13) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (std::abs(a(p, q)) > 0.0) jacobi_rotate(a, v, p, q);
    }

    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) {
        double lambda = a(i, i).real();
        if (lambda < 0.0 && lambda >= -1e-12) lambda = 0.0;
        vals[i] = lambda;
    }
    for (std::size_t c = 0; c < n; ++c) normalize_column_phase(v, c);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (vals[x] != vals[y]) return vals[x] > vals[y];
        return column_lex_less(v, x, y);
    });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        out.eigenvalues[c] = vals[order[c]];
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, c) = v(i, order[c]);
    }
    return out;
}

DensityDiagnostics validate_density(const ComplexMatrix& m) {
    if (!m.square()) throw std::invalid_argument("validate_density: matrix is not square");
    DensityDiagnostics d;
    d.hermiticity_residual = m.hermiticity_residual();
    d.trace_residual = std::abs(m.trace() - Complex{1.0, 0.0});
    // Spectrum of the Hermitian part; validate never throws.
    const std::size_t n = m.rows();
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    const SpectralDecomposition sd = eigh(h, 1e-6);
    d.min_eigenvalue = sd.eigenvalues.empty() ? 0.0 : sd.eigenvalues.back();
    return d;
}

}  // namespace qfit
