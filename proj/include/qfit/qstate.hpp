#pragma once

#include <cmath>
#include <stdexcept>

#include "qfit/qmath.hpp"

namespace qfit {

struct UnphysicalStateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// X-state coefficients (c1, c2, c3). The bound |ci| <= 1 is necessary but
/// not sufficient for physicality; x_state() reports the actual spectrum.
struct ResourceParams {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    ResourceParams() = default;
    ResourceParams(double c1_, double c2_, double c3_);
};

/// Weight theta in [0, pi] and phase phi in [0, 2*pi).
struct ProbeParams {
    double theta = 0.0;
    double phi = 0.0;

    ProbeParams() = default;
    ProbeParams(double theta_, double phi_);
};

struct BlochVector {
    double rx = 0.0;
    double ry = 0.0;
    double rz = 0.0;

    double norm() const { return std::sqrt(rx * rx + ry * ry + rz * rz); }
};

struct XState {
    ComplexMatrix rho;
    DensityDiagnostics diagnostics;
};

/// (1/4)(I + sum_i c_i sigma_i (x) sigma_i). Returned together with density
/// diagnostics instead of throwing: callers sweeping the c-cube need to see
/// and skip the non-PSD region explicitly. Basis order |00>,|01>,|10>,|11>.
XState x_state(const ResourceParams& c);

/// Density matrix of cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
ComplexMatrix probe_single(const ProbeParams& p);

/// Density matrix of cos(theta/2)|00> + e^{i phi} sin(theta/2)|11>.
ComplexMatrix probe_double(const ProbeParams& p);

/// r_k = tr(rho sigma_k) for a 2x2 density matrix.
BlochVector bloch_from_density(const ComplexMatrix& rho);

/// (1/2)(I + r . sigma); inverse of bloch_from_density for valid states.
ComplexMatrix density_from_bloch(const BlochVector& r);

}  // namespace qfit
