#include "qfit/channels.hpp"

#include <cmath>

namespace qfit {

const char* to_token(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::AmplitudeDamping: return "ad";
        case ChannelKind::PhaseDamping: return "pd";
        case ChannelKind::Depolarizing: return "de";
    }
    return "?";
}

const char* to_label(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::AmplitudeDamping: return "amplitude-damping";
        case ChannelKind::PhaseDamping: return "phase-damping";
        case ChannelKind::Depolarizing: return "depolarizing";
    }
    return "?";
}

ChannelKind kind_from_token(const std::string& token) {
    if (token == "ad") return ChannelKind::AmplitudeDamping;
    if (token == "pd") return ChannelKind::PhaseDamping;
    if (token == "de") return ChannelKind::Depolarizing;
    throw std::out_of_range("unknown channel kind '" + token + "' (expected ad, pd or de)");
}

ChannelConfig::ChannelConfig(ChannelKind kind_, double d_, double mu_) : kind(kind_), d(d_), mu(mu_) {
    if (!(d >= 0.0 && d <= 1.0)) throw std::out_of_range("ChannelConfig: d must lie in [0, 1]");
    if (!(mu >= 0.0 && mu <= 1.0)) throw std::out_of_range("ChannelConfig: mu must lie in [0, 1]");
}

namespace {

void check_d(double d) {
    if (!(d >= 0.0 && d <= 1.0)) throw std::out_of_range("kraus construction: d must lie in [0, 1]");
}

ComplexMatrix amplitude_damping_op(int k, double d) {
    ComplexMatrix a(2, 2);
    if (k == 0) {
        a(0, 0) = std::sqrt(1.0 - d);
        a(1, 1) = 1.0;
    } else {
        a(1, 0) = std::sqrt(d);
    }
    return a;
}

// Single-use probabilities for the Pauli-type channels. Dephasing is
// parameterized so one use scales coherences by exactly (1 - d), i.e. a
// phase flip with probability d/2; depolarizing uses P0 = 1-d, Pk = d/3.
std::vector<std::pair<int, double>> pauli_probabilities(ChannelKind kind, double d) {
    if (kind == ChannelKind::PhaseDamping) return {{0, 1.0 - d / 2.0}, {3, d / 2.0}};
    return {{0, 1.0 - d}, {1, d / 3.0}, {2, d / 3.0}, {3, d / 3.0}};
}

}  // namespace

KrausSet kraus_uncorrelated(ChannelKind kind, double d) {
    check_d(d);
    KrausSet set{kind, KrausBranch::Uncorrelated, {}, {}};
    if (kind == ChannelKind::AmplitudeDamping) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                set.operators.push_back(tensor(amplitude_damping_op(i, d), amplitude_damping_op(j, d)));
                set.weights.push_back(1.0);
            }
        return set;
    }
    const auto probs = pauli_probabilities(kind, d);
    for (const auto& [i, pi] : probs)
        for (const auto& [j, pj] : probs) {
            set.operators.push_back(std::sqrt(pi * pj) * tensor(pauli(i), pauli(j)));
            set.weights.push_back(pi * pj);
        }
    return set;
}

KrausSet kraus_correlated(ChannelKind kind, double d) {
    check_d(d);
    KrausSet set{kind, KrausBranch::Correlated, {}, {}};
    if (kind == ChannelKind::AmplitudeDamping) {
        ComplexMatrix e00 = ComplexMatrix::identity(4);
        e00(0, 0) = std::sqrt(1.0 - d);
        ComplexMatrix e11(4, 4);
        e11(3, 0) = std::sqrt(d);
        set.operators = {e00, e11};
        set.weights = {1.0, 1.0};
        return set;
    }
    for (const auto& [k, pk] : pauli_probabilities(kind, d)) {
        set.operators.push_back(std::sqrt(pk) * tensor(pauli(k), pauli(k)));
        set.weights.push_back(pk);
    }
    return set;
}

namespace {

ComplexMatrix kraus_sum(const KrausSet& set, const ComplexMatrix& rho) {
    ComplexMatrix out(rho.rows(), rho.cols());
    for (const ComplexMatrix& e : set.operators) out += e * rho * e.adjoint();
    return out;
}

}  // namespace

ComplexMatrix apply_memory_channel(const ComplexMatrix& rho, const ChannelConfig& cfg) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw InvalidStateError("apply_memory_channel: expected a 4x4 density matrix");
    const DensityDiagnostics diag = validate_density(rho);
    if (!diag.pass())
        throw InvalidStateError("apply_memory_channel: input fails density validation");
    const KrausSet u = kraus_uncorrelated(cfg.kind, cfg.d);
    const KrausSet c = kraus_correlated(cfg.kind, cfg.d);
    ComplexMatrix out = (1.0 - cfg.mu) * kraus_sum(u, rho);
    out += cfg.mu * kraus_sum(c, rho);
    return out;
}

double cptp_residual(const KrausSet& uncorrelated, const KrausSet& correlated, double mu) {
    ComplexMatrix acc(4, 4);
    for (const ComplexMatrix& e : uncorrelated.operators) acc += (1.0 - mu) * (e.adjoint() * e);
    for (const ComplexMatrix& e : correlated.operators) acc += mu * (e.adjoint() * e);
    return (acc - ComplexMatrix::identity(4)).frobenius_norm();
}

double verify_cptp(const ChannelConfig& cfg) {
    return cptp_residual(kraus_uncorrelated(cfg.kind, cfg.d), kraus_correlated(cfg.kind, cfg.d), cfg.mu);
}

}  // namespace qfit
