#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qfit/qmath.hpp"

namespace qfit {

enum class ChannelKind { AmplitudeDamping, PhaseDamping, Depolarizing };

const char* to_token(ChannelKind kind);          // "ad" | "pd" | "de"
const char* to_label(ChannelKind kind);          // human-readable name
ChannelKind kind_from_token(const std::string& token);

/// Channel kind plus decoherence strength d and memory coefficient mu,
/// both in [0, 1].
struct ChannelConfig {
    ChannelKind kind = ChannelKind::AmplitudeDamping;
    double d = 0.0;
    double mu = 0.0;

    ChannelConfig() = default;
    ChannelConfig(ChannelKind kind_, double d_, double mu_);
};

enum class KrausBranch { Uncorrelated, Correlated };

/// Two-qubit Kraus set for one branch of the memory channel. Probability
/// factors are folded into the operator entries at construction, so the full
/// set of a branch satisfies sum E^dag E = I_4 on its own; the branch weights
/// (1-mu, mu) enter only when the two branches are combined. Zero-weight
/// operators are kept so the set cardinality is independent of d.
struct KrausSet {
    ChannelKind kind;
    KrausBranch branch;
    std::vector<ComplexMatrix> operators;
    std::vector<double> weights;  // the folded probability of each operator
};

KrausSet kraus_uncorrelated(ChannelKind kind, double d);
KrausSet kraus_correlated(ChannelKind kind, double d);

/// eps(rho) = (1-mu) sum_ij E^u rho E^u+  +  mu sum_k E^c rho E^c+.
/// Throws InvalidStateError when rho is not a valid 4x4 density matrix.
ComplexMatrix apply_memory_channel(const ComplexMatrix& rho, const ChannelConfig& cfg);

/// || (1-mu) sum E^u+ E^u + mu sum E^c+ E^c - I_4 ||_F for the given config.
double verify_cptp(const ChannelConfig& cfg);

/// Same residual on explicit sets; lets tests inject faults.
double cptp_residual(const KrausSet& uncorrelated, const KrausSet& correlated, double mu);

}  // namespace qfit
