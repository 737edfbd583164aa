#pragma once

#include <functional>
#include <limits>
#include <string>

#include "qfit/channels.hpp"
#include "qfit/qmath.hpp"
#include "qfit/qstate.hpp"

namespace qfit {

struct BlochOutOfBallError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A parameterized family of density matrices (theta, phi) -> rho. The
/// evaluator must be deterministic; stencil points may fall slightly outside
/// the nominal parameter ranges and are handled by the estimators.
struct ParamFamily {
    std::function<ComplexMatrix(double theta, double phi)> evaluate;
    int dimension = 2;
    std::string description;
};

enum class ParamAxis { Theta, Phi };
enum class QfiMethod { Analytic, Spectral, Bloch };

const char* to_token(QfiMethod method);  // "analytic" | "spectral" | "bloch"

struct SpectralStats {
    int dropped_modes = 0;
    bool one_sided = false;
};

struct QfiDiagnostics {
    double step = 0.0;
    int dropped_modes_theta = 0;
    int dropped_modes_phi = 0;
    bool one_sided_theta = false;
    double bloch_residual = std::numeric_limits<double>::quiet_NaN();
};

struct QfiResult {
    double f_theta = 0.0;
    double f_phi = 0.0;
    QfiMethod method = QfiMethod::Spectral;
    QfiDiagnostics diagnostics;
};

/// Spectral-formula QFI with the derivative taken on rho itself:
///   F = sum over mode pairs with lam_i + lam_j > 1e-10 of
///       2 |<psi_i| drho |psi_j>|^2 / (lam_i + lam_j)
/// where drho is a central difference (one-sided second-order stencil when a
/// theta step would leave [0, pi]; phi wraps modulo 2*pi). This symmetric
/// form needs no eigenvector derivatives and handles rank-deficient states;
/// the number of discarded near-null mode pairs is reported through stats.
double qfi_spectral(const ParamFamily& family, ParamAxis axis, const ProbeParams& at, double h = 1e-5,
                    SpectralStats* stats = nullptr);

/// Bloch-vector QFI of a single qubit: |dr|^2 + (r.dr)^2/(1-|r|^2) on the
/// mixed branch, |dr|^2 when 1-|r|^2 <= 1e-9 (near-pure states would hit
/// catastrophic cancellation in the mixed branch). Throws BlochOutOfBallError
/// when |r| > 1 + 1e-8.
double qfi_bloch(const BlochVector& r, const BlochVector& dr);

/// (theta, phi) -> teleport_single(eps(x_state(c)), probe_single(theta, phi)).
/// The channel output is computed once and validated; throws
/// UnphysicalStateError when the resource is not a physical state.
ParamFamily teleported_family_single(const ChannelConfig& cfg, const ResourceParams& c);

/// Same pipeline with teleport_double and probe_double.
ParamFamily teleported_family_double(const ChannelConfig& cfg, const ResourceParams& c);

/// Everything the sweep driver needs from one grid point: spectral values for
/// both axes and, for single-qubit families, the Bloch-formula values
/// obtained from the same stencil.
struct PipelinePoint {
    double f_theta_spectral = 0.0;
    double f_phi_spectral = 0.0;
    double f_theta_bloch = std::numeric_limits<double>::quiet_NaN();
    double f_phi_bloch = std::numeric_limits<double>::quiet_NaN();
    QfiDiagnostics diagnostics;
};

PipelinePoint qfi_pipeline_point(const ParamFamily& family, const ProbeParams& at, double h = 1e-5);

/// End-to-end teleported QFI. Spectral values are reported; for qubits == 1
/// the Bloch-formula cross-check residual lands in diagnostics.
QfiResult qfi_teleported(const ChannelConfig& cfg, const ResourceParams& c, const ProbeParams& at,
                         int qubits, double h = 1e-5);

}  // namespace qfit
