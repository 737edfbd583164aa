#include "qfit/qfi.hpp"

#include <cmath>

#include "qfit/teleport.hpp"

namespace qfit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kModeCut = 1e-10;   // lam_i + lam_j below this is treated as null
constexpr double kPureCut = 1e-9;    // 1 - |r|^2 below this routes to the pure branch

double wrap_phi(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

struct Stencil {
    ComplexMatrix center;
    ComplexMatrix derivative;
    bool one_sided = false;
};

// Derivative of the family along one axis; second-order accurate everywhere.
Stencil differentiate(const ParamFamily& family, ParamAxis axis, const ProbeParams& at, double h) {
    Stencil st;
    const double th = at.theta;
    const double ph = at.phi;
    st.center = family.evaluate(th, ph);
    if (axis == ParamAxis::Phi) {
        const ComplexMatrix plus = family.evaluate(th, wrap_phi(ph + h));
        const ComplexMatrix minus = family.evaluate(th, wrap_phi(ph - h));
        st.derivative = (1.0 / (2.0 * h)) * (plus - minus);
        return st;
    }
    if (th - h < 0.0) {
        st.one_sided = true;
        const ComplexMatrix p1 = family.evaluate(th + h, ph);
        const ComplexMatrix p2 = family.evaluate(th + 2.0 * h, ph);
        st.derivative = (1.0 / (2.0 * h)) * (-3.0 * st.center + 4.0 * p1 - p2);
    } else if (th + h > kPi) {
        st.one_sided = true;
        const ComplexMatrix m1 = family.evaluate(th - h, ph);
        const ComplexMatrix m2 = family.evaluate(th - 2.0 * h, ph);
        st.derivative = (1.0 / (2.0 * h)) * (3.0 * st.center - 4.0 * m1 + m2);
    } else {
        const ComplexMatrix plus = family.evaluate(th + h, ph);
        const ComplexMatrix minus = family.evaluate(th - h, ph);
        st.derivative = (1.0 / (2.0 * h)) * (plus - minus);
    }
    return st;
}

void check_step(double h) {
    if (!(h >= 1e-7 && h <= 1e-3))
        throw std::out_of_range("qfi_spectral: step size must lie in [1e-7, 1e-3]");
}

double spectral_from_stencil(const Stencil& st, SpectralStats* stats) {
    const SpectralDecomposition sd = eigh(st.center);
    const std::size_t n = sd.eigenvalues.size();
    double f = 0.0;
    int dropped = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double s = sd.eigenvalues[i] + sd.eigenvalues[j];
            if (s <= kModeCut) {
                ++dropped;
                continue;
            }
            Complex amp = 0.0;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    amp += std::conj(sd.eigenvectors(a, i)) * st.derivative(a, b) * sd.eigenvectors(b, j);
            f += 2.0 * std::norm(amp) / s;
        }
    if (stats) {
        stats->dropped_modes = dropped;
        stats->one_sided = st.one_sided;
    }
    return f;
}

BlochVector bloch_of(const ComplexMatrix& drho_or_rho) { return bloch_from_density(drho_or_rho); }

}  // namespace

const char* to_token(QfiMethod method) {
    switch (method) {
        case QfiMethod::Analytic: return "analytic";
        case QfiMethod::Spectral: return "spectral";
        case QfiMethod::Bloch: return "bloch";
    }
    return "?";
}

double qfi_spectral(const ParamFamily& family, ParamAxis axis, const ProbeParams& at, double h,
                    SpectralStats* stats) {
    check_step(h);
    return spectral_from_stencil(differentiate(family, axis, at, h), stats);
}

double qfi_bloch(const BlochVector& r, const BlochVector& dr) {
    const double r2 = r.rx * r.rx + r.ry * r.ry + r.rz * r.rz;
    if (r2 > (1.0 + 1e-8) * (1.0 + 1e-8))
        throw BlochOutOfBallError("qfi_bloch: |r| exceeds the Bloch ball");
    const double dr2 = dr.rx * dr.rx + dr.ry * dr.ry + dr.rz * dr.rz;
    const double gap = 1.0 - r2;
    if (gap <= kPureCut) return dr2;
    const double rdot = r.rx * dr.rx + r.ry * dr.ry + r.rz * dr.rz;
    return dr2 + rdot * rdot / gap;
}

namespace {

ParamFamily teleported_family(const ChannelConfig& cfg, const ResourceParams& c, int qubits) {
    const XState res = x_state(c);
    if (!res.diagnostics.pass())
        throw UnphysicalStateError("teleported_family: resource X-state is not a physical density matrix");
    ComplexMatrix noisy = apply_memory_channel(res.rho, cfg);
    const DensityDiagnostics out_diag = validate_density(noisy);
    if (!out_diag.pass())
        throw InvalidStateError("teleported_family: channel output failed density validation");

    ParamFamily fam;
    fam.dimension = qubits == 1 ? 2 : 4;
    fam.description = std::string(to_label(cfg.kind)) + " teleported " +
                      (qubits == 1 ? "single-qubit" : "two-qubit") + " family";
    if (qubits == 1) {
        fam.evaluate = [noisy](double theta, double phi) {
            ProbeParams raw;
            raw.theta = theta;
            raw.phi = phi;
            return teleport_single(noisy, probe_single(raw));
        };
    } else {
        fam.evaluate = [noisy](double theta, double phi) {
            ProbeParams raw;
            raw.theta = theta;
            raw.phi = phi;
            return teleport_double(noisy, probe_double(raw));
        };
    }
    return fam;
}

}  // namespace

ParamFamily teleported_family_single(const ChannelConfig& cfg, const ResourceParams& c) {
    return teleported_family(cfg, c, 1);
}

ParamFamily teleported_family_double(const ChannelConfig& cfg, const ResourceParams& c) {
    return teleported_family(cfg, c, 2);
}

PipelinePoint qfi_pipeline_point(const ParamFamily& family, const ProbeParams& at, double h) {
    check_step(h);
    PipelinePoint pt;
    pt.diagnostics.step = h;

    const Stencil st_theta = differentiate(family, ParamAxis::Theta, at, h);
    const Stencil st_phi = differentiate(family, ParamAxis::Phi, at, h);

    SpectralStats stats;
    pt.f_theta_spectral = spectral_from_stencil(st_theta, &stats);
    pt.diagnostics.dropped_modes_theta = stats.dropped_modes;
    pt.diagnostics.one_sided_theta = stats.one_sided;
    pt.f_phi_spectral = spectral_from_stencil(st_phi, &stats);
    pt.diagnostics.dropped_modes_phi = stats.dropped_modes;

    if (family.dimension == 2) {
        const BlochVector r = bloch_of(st_theta.center);
        pt.f_theta_bloch = qfi_bloch(r, bloch_of(st_theta.derivative));
        pt.f_phi_bloch = qfi_bloch(r, bloch_of(st_phi.derivative));
        pt.diagnostics.bloch_residual = std::max(std::abs(pt.f_theta_spectral - pt.f_theta_bloch),
                                                 std::abs(pt.f_phi_spectral - pt.f_phi_bloch));
    }
    return pt;
}

QfiResult qfi_teleported(const ChannelConfig& cfg, const ResourceParams& c, const ProbeParams& at,
                         int qubits, double h) {
    if (qubits != 1 && qubits != 2)
        throw std::out_of_range("qfi_teleported: qubits must be 1 or 2");
    const ParamFamily fam = teleported_family(cfg, c, qubits);
    const PipelinePoint pt = qfi_pipeline_point(fam, at, h);
    QfiResult res;
    res.f_theta = std::max(pt.f_theta_spectral, 0.0);
    res.f_phi = std::max(pt.f_phi_spectral, 0.0);
    res.method = QfiMethod::Spectral;
    res.diagnostics = pt.diagnostics;
    return res;
}

}  // namespace qfit
