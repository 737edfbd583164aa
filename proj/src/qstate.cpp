#include "qfit/qstate.hpp"

#include <cmath>

namespace qfit {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

ResourceParams::ResourceParams(double c1_, double c2_, double c3_) : c1(c1_), c2(c2_), c3(c3_) {
    if (std::abs(c1) > 1.0 || std::abs(c2) > 1.0 || std::abs(c3) > 1.0)
        throw std::out_of_range("ResourceParams: |c_i| must not exceed 1");
}

ProbeParams::ProbeParams(double theta_, double phi_) : theta(theta_), phi(phi_) {
    if (!(theta >= 0.0 && theta <= kPi)) throw std::out_of_range("ProbeParams: theta must lie in [0, pi]");
    if (!(phi >= 0.0 && phi < kTwoPi)) throw std::out_of_range("ProbeParams: phi must lie in [0, 2*pi)");
}

XState x_state(const ResourceParams& c) {
    ComplexMatrix rho = 0.25 * ComplexMatrix::identity(4);
    const double coeff[3] = {c.c1, c.c2, c.c3};
    for (int k = 0; k < 3; ++k) rho += 0.25 * coeff[k] * tensor(pauli(k + 1), pauli(k + 1));
    return XState{rho, validate_density(rho)};
}

ComplexMatrix probe_single(const ProbeParams& p) {
    const Complex a{std::cos(p.theta / 2.0), 0.0};
    const Complex b = std::polar(std::sin(p.theta / 2.0), p.phi);
    ComplexMatrix rho(2, 2);
    rho(0, 0) = a * std::conj(a);
    rho(0, 1) = a * std::conj(b);
    rho(1, 0) = b * std::conj(a);
    rho(1, 1) = b * std::conj(b);
    return rho;
}

ComplexMatrix probe_double(const ProbeParams& p) {
    const Complex a{std::cos(p.theta / 2.0), 0.0};
    const Complex b = std::polar(std::sin(p.theta / 2.0), p.phi);
    ComplexMatrix rho(4, 4);
    rho(0, 0) = a * std::conj(a);
    rho(0, 3) = a * std::conj(b);
    rho(3, 0) = b * std::conj(a);
    rho(3, 3) = b * std::conj(b);
    return rho;
}

BlochVector bloch_from_density(const ComplexMatrix& rho) {
    if (rho.rows() != 2 || rho.cols() != 2)
        throw std::invalid_argument("bloch_from_density: expected a 2x2 matrix");
    BlochVector r;
    r.rx = (rho * pauli(1)).trace().real();
    r.ry = (rho * pauli(2)).trace().real();
    r.rz = (rho * pauli(3)).trace().real();
    return r;
}

ComplexMatrix density_from_bloch(const BlochVector& r) {
    ComplexMatrix rho = 0.5 * ComplexMatrix::identity(2);
    rho += 0.5 * r.rx * pauli(1);
    rho += 0.5 * r.ry * pauli(2);
    rho += 0.5 * r.rz * pauli(3);
    return rho;
}

}  // namespace qfit
