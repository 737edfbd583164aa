#include "qfit/analytic.hpp"

#include <cmath>

namespace qfit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPureDenominator = 1e-12;

void check_unit_interval(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::out_of_range(std::string(name) + " must lie in [0, 1]");
}

// Axis amplitudes of the teleported Bloch vector
// r = (X sin cos, Y sin sin, Z cos).
struct BlochAmplitudes {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

BlochAmplitudes bloch_amplitudes(ChannelKind kind, double d, double mu, const ResourceParams& c) {
    const ChannelCoefficients k = channel_coefficients(kind, d, mu, c.c3);
    BlochAmplitudes r;
    switch (kind) {
        case ChannelKind::AmplitudeDamping:
            r.x = 0.5 * (k.b * c.c1 - k.a * c.c2);
            r.y = 0.5 * (k.b * c.c2 - k.a * c.c1);
            r.z = 0.5 * k.m;
            break;
        case ChannelKind::PhaseDamping:
            r.x = -k.delta * c.c1;
            r.y = -k.delta * c.c2;
            r.z = -c.c3;
            break;
        case ChannelKind::Depolarizing:
            r.x = -(k.lambda / 9.0) * c.c1;
            r.y = -(k.lambda / 9.0) * c.c2;
            r.z = -(k.lambda / 9.0) * c.c3;
            break;
    }
    return r;
}

double f_theta_at(ChannelKind kind, double d, double mu, const ResourceParams& c, double theta,
                  double phi) {
    ProbeParams at;
    at.theta = theta;
    at.phi = phi;
    return closed_form_qfi(kind, d, mu, c, at).f_theta;
}

double golden_min_over_d(double c3, double mu) {
    const auto half_m = [&](double d) {
        return c3 * ((2.0 - d) * d * (1.0 - mu) - 1.0) - d * d * (1.0 - mu);
    };
    const auto f = [&](double d) {
        const double g = half_m(d);
        return g * g;
    };
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = 0.0, hi = 1.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > 1e-10) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

ChannelCoefficients channel_coefficients(ChannelKind kind, double d, double mu, double c3) {
    check_unit_interval(d, "d");
    check_unit_interval(mu, "mu");
    ChannelCoefficients k;
    k.kind = kind;
    k.a = (1.0 - std::sqrt(1.0 - d)) * mu;
    k.b = k.a - 2.0 * (1.0 - d * (1.0 - mu));
    k.m = 2.0 * c3 * ((2.0 - d) * d * (1.0 - mu) - 1.0) - 2.0 * d * d * (1.0 - mu);
    k.delta = 1.0 - (2.0 - d) * d * (1.0 - mu);
    k.lambda = 9.0 - 8.0 * (3.0 - 2.0 * d) * d * (1.0 - mu);
    return k;
}

QfiResult closed_form_qfi(ChannelKind kind, double d, double mu, const ResourceParams& c,
                          const ProbeParams& at) {
    const BlochAmplitudes r = bloch_amplitudes(kind, d, mu, c);
    const double x2 = r.x * r.x, y2 = r.y * r.y, z2 = r.z * r.z;
    const double st = std::sin(at.theta), ct = std::cos(at.theta);
    const double sp = std::sin(at.phi), cp = std::cos(at.phi);
    const double st2 = st * st, ct2 = ct * ct, sp2 = sp * sp, cp2 = cp * cp;

    // 1 - |r|^2; shared denominator of both rational correction terms.
    const double den = 1.0 - (x2 * cp2 + y2 * sp2) * st2 - z2 * ct2;

    QfiResult res;
    res.method = QfiMethod::Analytic;

    const double lead_theta = x2 * ct2 * cp2 + y2 * ct2 * sp2 + z2 * st2;
    const double lead_phi = (x2 * sp2 + y2 * cp2) * st2;
    if (den < kPureDenominator) {
        res.f_theta = lead_theta;
        res.f_phi = lead_phi;
        return res;
    }
    const double w = x2 * cp2 + y2 * sp2 - z2;
    res.f_theta = lead_theta + st2 * ct2 * w * w / den;
    const double v = (y2 - x2) * sp * cp;
    res.f_phi = lead_phi + st2 * st2 * v * v / den;
    return res;
}

const char* to_token(ThetaLocation loc) { return loc == ThetaLocation::HalfPi ? "pi/2" : "0_or_pi"; }

const char* to_token(ClipDirection dir) {
    switch (dir) {
        case ClipDirection::None: return "none";
        case ClipDirection::Below: return "below";
        case ClipDirection::Above: return "above";
    }
    return "?";
}

ThresholdResult pd_threshold(const ResourceParams& c, double d, double phi) {
    if (d == 0.0) throw DZeroError("pd_threshold: undefined at d = 0 (all mu equivalent)");
    check_unit_interval(d, "d");
    const double s2 = c.c1 * c.c1 + c.c2 * c.c2 + (c.c1 * c.c1 - c.c2 * c.c2) * std::cos(2.0 * phi);
    if (s2 <= 1e-15)
        throw DegenerateDenominatorError("pd_threshold: c1^2 cos^2(phi) + c2^2 sin^2(phi) vanishes");
    const double s = std::sqrt(s2);

    ThresholdResult res;
    res.raw_value = (std::sqrt(2.0) * std::abs(c.c3) - (1.0 - d) * (1.0 - d) * s) / ((2.0 - d) * d * s);
    // Delta grows with mu while F_theta(pi/2) = c3^2 stays flat, so the
    // equator wins below the threshold and the poles win above it.
    res.location_above = ThetaLocation::ZeroOrPi;
    res.location_below = ThetaLocation::HalfPi;
    if (res.raw_value < 0.0) {
        res.clipped = ClipDirection::Below;
        res.mu_star = 0.0;
    } else if (res.raw_value > 1.0) {
        res.clipped = ClipDirection::Above;
        res.mu_star = 1.0;
    } else {
        res.mu_star = res.raw_value;
    }
    return res;
}

ThresholdResult ad_threshold(const ResourceParams& c, double d, double phi) {
    check_unit_interval(d, "d");
    const auto g = [&](double mu) {
        return f_theta_at(ChannelKind::AmplitudeDamping, d, mu, c, 0.0, phi) -
               f_theta_at(ChannelKind::AmplitudeDamping, d, mu, c, kPi / 2.0, phi);
    };

    ThresholdResult res;
    const int samples = 101;
    double max_abs_g = 0.0;
    int bracket = -1;
    double prev = g(0.0);
    for (int i = 1; i < samples; ++i) {
        const double mu = static_cast<double>(i) / (samples - 1);
        const double cur = g(mu);
        max_abs_g = std::max(max_abs_g, std::max(std::abs(prev), std::abs(cur)));
        if (bracket < 0 && prev * cur <= 0.0 && (prev != 0.0 || cur != 0.0)) bracket = i;
        prev = cur;
    }
    if (max_abs_g <= 1e-12) {
        res.degenerate = true;
        res.mu_star = 0.0;
        return res;
    }
    if (bracket < 0) {
        const ThetaLocation dominant = g(0.5) > 0.0 ? ThetaLocation::ZeroOrPi : ThetaLocation::HalfPi;
        res.location_above = dominant;
        res.location_below = dominant;
        return res;
    }

    double lo = static_cast<double>(bracket - 1) / (samples - 1);
    double hi = static_cast<double>(bracket) / (samples - 1);
    double glo = g(lo);
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (glo * gm <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            glo = gm;
        }
    }
    const double root = 0.5 * (lo + hi);
    res.mu_star = root;
    // g > 0 below the root means the poles dominate there.
    const double below = g(std::max(0.0, root - 0.01));
    res.location_below = below > 0.0 ? ThetaLocation::ZeroOrPi : ThetaLocation::HalfPi;
    res.location_above =
        res.location_below == ThetaLocation::ZeroOrPi ? ThetaLocation::HalfPi : ThetaLocation::ZeroOrPi;
    return res;
}

ThetaLocation de_optimal_location(const ResourceParams& c, double phi) {
    const double cp = std::cos(phi), sp = std::sin(phi);
    const double rhs = c.c1 * c.c1 * cp * cp + c.c2 * c.c2 * sp * sp;
    return c.c3 * c.c3 >= rhs ? ThetaLocation::HalfPi : ThetaLocation::ZeroOrPi;
}

double ad_min_location(double c3, double mu) {
    if (std::abs(c3) > 1.0) throw std::out_of_range("ad_min_location: |c3| must not exceed 1");
    check_unit_interval(mu, "mu");
    if (c3 >= 0.0) return c3 / (1.0 + c3);

    const double radicand = (c3 + c3 * c3 * mu) * (mu - 1.0);
    if (radicand < -1e-14) return golden_min_over_d(c3, mu);
    const double denom = c3 * (1.0 - mu) - std::sqrt(std::max(radicand, 0.0));
    if (std::abs(denom) < 1e-15) return golden_min_over_d(c3, mu);
    const double d = c3 / denom;
    return std::min(std::max(d, 0.0), 1.0);
}

}  // namespace qfit
