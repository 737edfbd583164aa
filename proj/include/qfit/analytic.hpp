#pragma once

#include <optional>

#include "qfit/channels.hpp"
#include "qfit/qfi.hpp"
#include "qfit/qstate.hpp"

namespace qfit {

struct DegenerateDenominatorError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DZeroError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Per-channel coefficient bundles of the teleported Bloch vector:
///   amplitude damping  a = (1-sqrt(1-d))*mu,  b = a - 2[1 - d(1-mu)],
///                      m = 2 c3 [(2-d)d(1-mu) - 1] - 2 d^2 (1-mu)
///   phase damping      delta = 1 - (2-d)d(1-mu)
///   depolarizing       lambda = 9 - 8(3-2d)d(1-mu)
struct ChannelCoefficients {
    ChannelKind kind = ChannelKind::AmplitudeDamping;
    double a = 0.0;
    double b = 0.0;
    double m = 0.0;
    double delta = 0.0;
    double lambda = 0.0;
};

ChannelCoefficients channel_coefficients(ChannelKind kind, double d, double mu, double c3);

/// Closed-form teleported QFI for both parameters. The teleported Bloch
/// vector is (X sin(th)cos(ph), Y sin(th)sin(ph), Z cos(th)) with per-kind
/// (X, Y, Z); the quadratic leading terms and the rational correction terms
/// are evaluated directly. When the correction denominator 1-|r|^2 falls
/// below 1e-12 (teleported state pure) the pure-branch value |dr|^2 is used.
/// Purely algebraic: no physicality requirement on c.
QfiResult closed_form_qfi(ChannelKind kind, double d, double mu, const ResourceParams& c,
                          const ProbeParams& at);

enum class ThetaLocation { HalfPi, ZeroOrPi };
enum class ClipDirection { None, Below, Above };

const char* to_token(ThetaLocation loc);
const char* to_token(ClipDirection dir);

/// Memory threshold between the two candidate estimation points.
/// location_above holds for mu >= mu_star, location_below for mu < mu_star.
/// When no crossing exists mu_star is empty and both locations carry the
/// globally dominant point. raw_value keeps the unclipped formula value for
/// the phase-damping case.
struct ThresholdResult {
    std::optional<double> mu_star;
    ThetaLocation location_above = ThetaLocation::HalfPi;
    ThetaLocation location_below = ThetaLocation::ZeroOrPi;
    bool degenerate = false;
    ClipDirection clipped = ClipDirection::None;
    double raw_value = 0.0;
};

/// Explicit phase-damping threshold
///   mu* = [sqrt2 |c3| - (1-d)^2 S] / [(2-d) d S],
///   S = sqrt(c1^2 + c2^2 + (c1^2 - c2^2) cos(2 phi)),
/// clipped to [0,1] with the direction reported; a clip below 0 therefore
/// means theta = pi/2 is never optimal. Throws DZeroError at d = 0 (all mu
/// equivalent) and DegenerateDenominatorError when S vanishes.
ThresholdResult pd_threshold(const ResourceParams& c, double d, double phi);

/// Amplitude-damping threshold: root of g(mu) = F_theta(0) - F_theta(pi/2)
/// by bisection to an interval of 1e-12. No sign change -> empty mu_star with
/// the dominant location; |g| <= 1e-12 at every sample -> degenerate.
ThresholdResult ad_threshold(const ResourceParams& c, double d, double phi);

/// Depolarizing optimum: HalfPi iff c3^2 >= c1^2 cos^2(phi) + c2^2 sin^2(phi)
/// (ties included), independent of d and mu.
ThetaLocation de_optimal_location(const ResourceParams& c, double phi);

/// Location of the minimum of the amplitude-damping F_theta(pi/2) over d.
/// c3 in [0,1]: c3/(1+c3) (mu-independent). c3 in [-1,0): the closed-form
/// root, falling back to golden-section minimization when the radicand turns
/// negative beyond rounding; results clamped to [0,1].
double ad_min_location(double c3, double mu);

}  // namespace qfit
