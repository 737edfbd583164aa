#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "qfit/channels.hpp"
#include "qfit/qstate.hpp"
#include "qfit/teleport.hpp"

using qfit::ChannelConfig;
using qfit::ChannelKind;
using qfit::ComplexMatrix;
using qfit::ProbeParams;
using qfit::ResourceParams;

namespace {

constexpr double kPi = 3.14159265358979323846;

ProbeParams random_probe(std::mt19937& rng) {
    std::uniform_real_distribution<double> th(0.0, kPi);
    std::uniform_real_distribution<double> ph(0.0, 6.283185307179586);
    double phi = ph(rng);
    if (phi >= 6.283185307179586) phi = 0.0;
    return ProbeParams(th(rng), phi);
}

ResourceParams random_physical_resource(std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (;;) {
        const double c1 = unit(rng), c2 = unit(rng), c3 = unit(rng);
        if (1 - c1 - c2 - c3 >= 0 && 1 - c1 + c2 + c3 >= 0 && 1 + c1 - c2 + c3 >= 0 &&
            1 + c1 + c2 - c3 >= 0)
            return ResourceParams(c1, c2, c3);
    }
}

}  // namespace

TEST_CASE("bell basis is orthonormal with the fixed index convention") {
    const auto& basis = qfit::bell_basis();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const ComplexMatrix ip = basis[i].adjoint() * basis[j];
            CHECK(std::abs(ip(0, 0) - (i == j ? qfit::Complex{1.0, 0.0} : qfit::Complex{0.0, 0.0})) <=
                  1e-12);
        }
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(basis[0](1, 0) - qfit::Complex{s, 0.0}) <= 1e-15);
    CHECK(std::abs(basis[0](2, 0) + qfit::Complex{s, 0.0}) <= 1e-15);
    CHECK(std::abs(basis[3](1, 0) - qfit::Complex{s, 0.0}) <= 1e-15);
    CHECK(std::abs(basis[3](2, 0) - qfit::Complex{s, 0.0}) <= 1e-15);
}

TEST_CASE("bell probabilities of reference states") {
    const auto singlet = qfit::x_state(ResourceParams(-1.0, -1.0, -1.0));
    const auto p = qfit::bell_probabilities(singlet.rho);
    CHECK(p.p[0] == doctest::Approx(1.0).epsilon(1e-13));
    for (int k = 1; k < 4; ++k) CHECK(p.p[k] <= 1e-13);

    const auto mixed = qfit::bell_probabilities(0.25 * ComplexMatrix::identity(4));
    for (int k = 0; k < 4; ++k) CHECK(mixed.p[k] == doctest::Approx(0.25).epsilon(1e-13));

    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const ResourceParams c = random_physical_resource(rng);
        const auto st = qfit::x_state(c);
        const auto bp = qfit::bell_probabilities(st.rho);
        // Independent route: oracle inner products against explicit vectors.
        const oracle::Mat<4> rho = oracle::from_matrix<4>(st.rho);
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(bp.p[i] - oracle::bell_probability(rho, i)) <= 1e-12);
        // And the closed form in the c coefficients.
        CHECK(std::abs(bp.p[0] - 0.25 * (1 - c.c1 - c.c2 - c.c3)) <= 1e-12);
        CHECK(std::abs(bp.p[1] - 0.25 * (1 - c.c1 + c.c2 + c.c3)) <= 1e-12);
        CHECK(std::abs(bp.p[2] - 0.25 * (1 + c.c1 - c.c2 + c.c3)) <= 1e-12);
        CHECK(std::abs(bp.p[3] - 0.25 * (1 + c.c1 + c.c2 - c.c3)) <= 1e-12);
    }
}

TEST_CASE("singlet resource teleports perfectly") {
    const auto singlet = qfit::x_state(ResourceParams(-1.0, -1.0, -1.0));
    std::mt19937 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix probe = qfit::probe_single(random_probe(rng));
        CHECK((qfit::teleport_single(singlet.rho, probe) - probe).max_abs() <= 1e-12);
        const ComplexMatrix probe2 = qfit::probe_double(random_probe(rng));
        CHECK((qfit::teleport_double(singlet.rho, probe2) - probe2).max_abs() <= 1e-12);
    }
}

TEST_CASE("maximally mixed resource erases the probe") {
    const ComplexMatrix mixed = 0.25 * ComplexMatrix::identity(4);
    std::mt19937 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix out = qfit::teleport_single(mixed, qfit::probe_single(random_probe(rng)));
        CHECK((out - 0.5 * ComplexMatrix::identity(2)).max_abs() <= 1e-12);
        const ComplexMatrix out2 = qfit::teleport_double(mixed, qfit::probe_double(random_probe(rng)));
        CHECK((out2 - 0.25 * ComplexMatrix::identity(4)).max_abs() <= 1e-12);
    }
}

TEST_CASE("teleported Bloch vector under noisy amplitude damping") {
    // c = (1, 1, -1): r = ((B-A)/2 cos sin, (B-A)/2 sin sin, M/2 cos) with
    // A = (1-sqrt(1-d)) mu, B = A - 2[1 - d(1-mu)],
    // M = 2 c3 [(2-d)d(1-mu) - 1] - 2 d^2 (1-mu).
    const auto st = qfit::x_state(ResourceParams(1.0, 1.0, -1.0));
    for (int id = 0; id < 5; ++id)
        for (int im = 0; im < 5; ++im) {
            const double d = id / 4.0;
            const double mu = im / 4.0;
            const ComplexMatrix res =
                qfit::apply_memory_channel(st.rho, ChannelConfig(ChannelKind::AmplitudeDamping, d, mu));
            const double a = (1.0 - std::sqrt(1.0 - d)) * mu;
            const double b = a - 2.0 * (1.0 - d * (1.0 - mu));
            const double m = 2.0 * (-1.0) * ((2.0 - d) * d * (1.0 - mu) - 1.0) - 2.0 * d * d * (1.0 - mu);
            for (const auto& [theta, phi] : {std::pair{0.4, 0.3}, {1.2, 2.2}, {2.6, 5.1}}) {
                const ComplexMatrix out =
                    qfit::teleport_single(res, qfit::probe_single(ProbeParams(theta, phi)));
                const auto r = qfit::bloch_from_density(out);
                CHECK(std::abs(r.rx - 0.5 * (b - a) * std::cos(phi) * std::sin(theta)) <= 1e-10);
                CHECK(std::abs(r.ry - 0.5 * (b - a) * std::sin(phi) * std::sin(theta)) <= 1e-10);
                CHECK(std::abs(r.rz - 0.5 * m * std::cos(theta)) <= 1e-10);
            }
        }
}

TEST_CASE("double teleportation matches the 16-term oracle sum") {
    const auto st = qfit::x_state(ResourceParams(1.0, 1.0, -1.0));
    const ComplexMatrix res =
        qfit::apply_memory_channel(st.rho, ChannelConfig(ChannelKind::Depolarizing, 0.3, 0.5));
    const ComplexMatrix probe2 = qfit::probe_double(ProbeParams(kPi / 2.0, 0.0));
    const ComplexMatrix out = qfit::teleport_double(res, probe2);
    const oracle::Mat<4> expected =
        oracle::teleport_double(oracle::from_matrix<4>(res), oracle::from_matrix<4>(probe2));
    CHECK(oracle::max_diff(expected, out) <= 1e-13);
}

TEST_CASE("teleportation is unital and preserves trace and positivity") {
    std::mt19937 rng(77);
    for (int r = 0; r < 100; ++r) {
        const auto st = qfit::x_state(random_physical_resource(rng));
        CHECK((qfit::teleport_single(st.rho, 0.5 * ComplexMatrix::identity(2)) -
               0.5 * ComplexMatrix::identity(2))
                  .max_abs() <= 1e-12);
        for (int p = 0; p < 10; ++p) {
            const ComplexMatrix out = qfit::teleport_single(st.rho, qfit::probe_single(random_probe(rng)));
            const auto diag = qfit::validate_density(out);
            CHECK(diag.trace_residual <= 1e-10);
            CHECK(diag.min_eigenvalue >= -1e-10);
        }
    }
    // Randomized positivity for the doubled protocol, smaller volume.
    for (int r = 0; r < 20; ++r) {
        const auto st = qfit::x_state(random_physical_resource(rng));
        for (int p = 0; p < 5; ++p) {
            const ComplexMatrix out = qfit::teleport_double(st.rho, qfit::probe_double(random_probe(rng)));
            const auto diag = qfit::validate_density(out);
            CHECK(diag.trace_residual <= 1e-10);
            CHECK(diag.min_eigenvalue >= -1e-10);
        }
    }
}

TEST_CASE("doubled protocol factorizes over product probes") {
    std::mt19937 rng(123);
    for (int trial = 0; trial < 15; ++trial) {
        const auto st = qfit::x_state(random_physical_resource(rng));
        const ComplexMatrix pa = qfit::probe_single(random_probe(rng));
        const ComplexMatrix pb = qfit::probe_single(random_probe(rng));
        const ComplexMatrix lhs = qfit::teleport_double(st.rho, tensor(pa, pb));
        const ComplexMatrix rhs =
            tensor(qfit::teleport_single(st.rho, pa), qfit::teleport_single(st.rho, pb));
        CHECK((lhs - rhs).max_abs() <= 1e-10);
    }
}

TEST_CASE("fully correlated Pauli channels keep Bell resources at a point mass") {
    std::mt19937 rng(55);
    for (ChannelKind kind : {ChannelKind::PhaseDamping, ChannelKind::Depolarizing}) {
        for (double d : {0.3, 0.8}) {
            // Singlet: point mass at index 0, output equals the probe.
            const auto singlet = qfit::x_state(ResourceParams(-1.0, -1.0, -1.0));
            const ComplexMatrix res_s = qfit::apply_memory_channel(singlet.rho, ChannelConfig(kind, d, 1.0));
            const ComplexMatrix probe = qfit::probe_single(random_probe(rng));
            CHECK((qfit::teleport_single(res_s, probe) - probe).max_abs() <= 1e-10);

            // c = (1,1,-1): point mass at index 3, output is the fixed
            // sigma_z frame of the probe.
            const auto triplet = qfit::x_state(ResourceParams(1.0, 1.0, -1.0));
            const ComplexMatrix res_t = qfit::apply_memory_channel(triplet.rho, ChannelConfig(kind, d, 1.0));
            const ComplexMatrix expected = qfit::pauli(3) * probe * qfit::pauli(3);
            CHECK((qfit::teleport_single(res_t, probe) - expected).max_abs() <= 1e-10);
        }
    }
}

TEST_CASE("teleport rejects non-density input") {
    const auto st = qfit::x_state(ResourceParams(0.0, 0.0, 0.0));
    ComplexMatrix junk(2, 2);
    junk(0, 0) = 3.0;
    CHECK_THROWS_AS(qfit::teleport_single(st.rho, junk), qfit::InvalidStateError);
    CHECK_THROWS_AS(qfit::bell_probabilities(ComplexMatrix::identity(4)), qfit::InvalidStateError);
}
