#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qfit/grid.hpp"
#include "qfit/verify.hpp"

using qfit::ChannelKind;
using qfit::GridSpec;
using qfit::QfiMethod;
using qfit::ResourceParams;
using qfit::SweepConfig;
using qfit::SweepRecord;
using qfit::SweepSummary;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("grid spec endpoints") {
    const GridSpec g{0.0, 1.0, 11};
    CHECK(g.value(0) == 0.0);
    CHECK(g.value(10) == 1.0);
    CHECK(g.value(5) == doctest::Approx(0.5).epsilon(1e-15));
    const GridSpec single{0.3, 0.9, 1};
    CHECK(single.value(0) == 0.3);
}

TEST_CASE("config validation catches bad ranges and unphysical resources") {
    SweepConfig cfg;
    cfg.kinds = {ChannelKind::PhaseDamping};
    cfg.methods = {QfiMethod::Analytic};
    CHECK_NOTHROW(qfit::validate(cfg));

    SweepConfig bad = cfg;
    bad.d_grid = GridSpec{0.0, 1.2, 5};
    CHECK_THROWS_AS(qfit::validate(bad), qfit::ConfigError);

    bad = cfg;
    bad.phi_grid = GridSpec{0.0, 2.0 * kPi, 4};  // phi must stay below 2*pi
    CHECK_THROWS_AS(qfit::validate(bad), qfit::ConfigError);

    bad = cfg;
    bad.qubits = 2;  // analytic method has no two-qubit closed form
    CHECK_THROWS_AS(qfit::validate(bad), qfit::ConfigError);

    bad = cfg;
    bad.c = ResourceParams(1.0, 1.0, 1.0);
    CHECK_THROWS_AS(qfit::validate(bad), qfit::UnphysicalResourceError);

    bad = cfg;
    bad.kinds.clear();
    CHECK_THROWS_AS(qfit::validate(bad), qfit::ConfigError);
}

TEST_CASE("dephasing immunity shows up in a minimal sweep") {
    SweepConfig cfg;
    cfg.kinds = {ChannelKind::PhaseDamping};
    cfg.d_grid = GridSpec{0.2, 0.8, 2};
    cfg.mu_grid = GridSpec{0.1, 0.9, 2};
    cfg.theta_grid = GridSpec{kPi / 2.0, kPi / 2.0, 1};
    cfg.phi_grid = GridSpec{0.0, 0.0, 1};
    cfg.c = ResourceParams(1.0, 1.0, -1.0);
    cfg.methods = {QfiMethod::Analytic};
    const auto records = qfit::run_sweep(cfg);
    REQUIRE(records.size() == 4);
    for (const SweepRecord& r : records) {
        CHECK(r.f_theta == doctest::Approx(1.0).epsilon(1e-12));
        CHECK_FALSE(r.residual.has_value());
    }
}

TEST_CASE("clean singlet point: analytic and spectral coincide") {
    SweepConfig cfg;
    cfg.kinds = {ChannelKind::AmplitudeDamping};
    cfg.d_grid = GridSpec{0.0, 0.0, 1};
    cfg.mu_grid = GridSpec{0.0, 0.0, 1};
    cfg.theta_grid = GridSpec{1.1, 1.1, 1};
    cfg.phi_grid = GridSpec{0.7, 0.7, 1};
    cfg.c = ResourceParams(-1.0, -1.0, -1.0);
    cfg.methods = {QfiMethod::Analytic, QfiMethod::Spectral};
    SweepSummary summary;
    const auto records = qfit::run_sweep(cfg, &summary);
    REQUIRE(records.size() == 2);
    CHECK(records[0].method == QfiMethod::Analytic);
    CHECK(records[1].method == QfiMethod::Spectral);
    CHECK(records[1].residual.has_value());
    CHECK(summary.max_residual <= 1e-7);
    CHECK(records[1].f_theta == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("records come out in lexicographic order and all QFI values are in range") {
    SweepConfig cfg;
    cfg.kinds = {ChannelKind::Depolarizing, ChannelKind::AmplitudeDamping};
    cfg.d_grid = GridSpec{0.0, 1.0, 3};
    cfg.mu_grid = GridSpec{0.0, 1.0, 2};
    cfg.theta_grid = GridSpec{0.0, kPi, 3};
    cfg.phi_grid = GridSpec{0.0, kPi, 2};
    cfg.c = ResourceParams(1.0, 1.0, -1.0);
    cfg.methods = {QfiMethod::Spectral, QfiMethod::Analytic, QfiMethod::Bloch};
    const auto records = qfit::run_sweep(cfg);
    REQUIRE(records.size() == 2 * 3 * 2 * 3 * 2 * 3);

    auto key = [](const SweepRecord& r) {
        return std::tuple(static_cast<int>(r.kind), r.d, r.mu, r.theta, r.phi,
                          static_cast<int>(r.method));
    };
    for (std::size_t i = 1; i < records.size(); ++i) CHECK(key(records[i - 1]) < key(records[i]));
    for (const SweepRecord& r : records) {
        CHECK(r.f_theta >= 0.0);
        CHECK(r.f_theta <= 1.0 + 1e-8);
        CHECK(r.f_phi >= 0.0);
        CHECK(r.f_phi <= 1.0 + 1e-8);
    }
}

TEST_CASE("serial reference and OpenMP engine produce identical bytes") {
    SweepConfig cfg;
    cfg.kinds = {ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping, ChannelKind::Depolarizing};
    cfg.d_grid = GridSpec{0.0, 1.0, 4};
    cfg.mu_grid = GridSpec{0.0, 1.0, 3};
    cfg.theta_grid = GridSpec{0.0, kPi, 4};
    cfg.phi_grid = GridSpec{0.0, 3.0, 3};
    cfg.c = ResourceParams(0.8, 0.6, -0.7);
    cfg.methods = {QfiMethod::Analytic, QfiMethod::Spectral, QfiMethod::Bloch};
    cfg.threads = 3;
    const std::string parallel = qfit::sweep_records_to_csv(qfit::run_sweep(cfg));
    const std::string serial = qfit::sweep_records_to_csv(qfit::run_sweep_serial(cfg));
    CHECK(parallel == serial);

    cfg.qubits = 2;
    cfg.methods = {QfiMethod::Spectral};
    const std::string parallel2 = qfit::sweep_records_to_csv(qfit::run_sweep(cfg));
    const std::string serial2 = qfit::sweep_records_to_csv(qfit::run_sweep_serial(cfg));
    CHECK(parallel2 == serial2);
}

TEST_CASE("config JSON round-trip is idempotent") {
    SweepConfig cfg;
    cfg.kinds = {ChannelKind::PhaseDamping, ChannelKind::Depolarizing};
    cfg.d_grid = GridSpec{0.1, 0.9, 7};
    cfg.theta_grid = GridSpec{0.0, kPi, 5};
    cfg.phi_grid = GridSpec{0.0, 3.0, 4};
    cfg.c = ResourceParams(0.5, -0.25, 0.125);
    cfg.qubits = 1;
    cfg.methods = {QfiMethod::Analytic, QfiMethod::Bloch};
    cfg.out = "result.csv";
    cfg.format = qfit::OutputFormat::Json;
    cfg.threads = 2;
    const std::string once = qfit::sweep_config_to_json(cfg);
    const std::string twice = qfit::sweep_config_to_json(qfit::sweep_config_from_json(once));
    CHECK(once == twice);
    CHECK_THROWS_AS(qfit::sweep_config_from_json("{not json"), qfit::ConfigError);
    CHECK_THROWS_AS(qfit::sweep_config_from_json("{\"channels\": [\"zz\"]}"), qfit::ConfigError);
}

TEST_CASE("CSV header and number formatting are stable") {
    CHECK(qfit::format_scientific(1.0) == "1.0000000000000000e+00");
    CHECK(qfit::format_scientific(0.0625) == "6.2500000000000000e-02");
    CHECK(qfit::format_scientific(-0.5) == "-5.0000000000000000e-01");

    SweepConfig cfg;
    cfg.kinds = {ChannelKind::PhaseDamping};
    cfg.d_grid = GridSpec{0.5, 0.5, 1};
    cfg.mu_grid = GridSpec{0.5, 0.5, 1};
    cfg.theta_grid = GridSpec{kPi / 2.0, kPi / 2.0, 1};
    cfg.phi_grid = GridSpec{0.0, 0.0, 1};
    cfg.c = ResourceParams(1.0, 1.0, -1.0);
    const std::string csv = qfit::sweep_records_to_csv(qfit::run_sweep(cfg));
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "kind,D,mu,theta,phi,qubits,f_theta,f_phi,method,residual");
}

TEST_CASE("two-qubit depolarizing sweep matches the frozen golden CSV") {
    SweepConfig cfg;
    cfg.kinds = {ChannelKind::Depolarizing};
    cfg.d_grid = GridSpec{0.0, 1.0, 11};
    cfg.mu_grid = GridSpec{0.0, 1.0, 11};
    cfg.theta_grid = GridSpec{kPi / 2.0, kPi / 2.0, 1};
    cfg.phi_grid = GridSpec{0.0, 0.0, 1};
    cfg.c = ResourceParams(1.0, 1.0, -1.0);
    cfg.qubits = 2;
    cfg.methods = {QfiMethod::Spectral};
    const std::string csv = qfit::sweep_records_to_csv(qfit::run_sweep(cfg));

    std::ifstream golden(std::string(QFIT_TEST_DATA_DIR) + "/golden_de_double_11x11.csv",
                         std::ios::binary);
    REQUIRE(golden.good());
    std::stringstream buffer;
    buffer << golden.rdbuf();
    CHECK(csv == buffer.str());
}

TEST_CASE("figure surfaces reproduce the headline features") {
    qfit::FigureConfig cfg;
    cfg.n = 11;

    // Dephasing leaves the single-qubit F_theta surface flat at 1.
    cfg.id = 1;
    cfg.kind = ChannelKind::PhaseDamping;
    for (const auto& row : qfit::figure_data(cfg)) CHECK(std::abs(row.f_single - 1.0) <= 1e-6);

    // Full memory recovers F_phi = 1 at theta = pi/2 for every kind.
    cfg.id = 2;
    for (ChannelKind kind : {ChannelKind::AmplitudeDamping, ChannelKind::PhaseDamping,
                             ChannelKind::Depolarizing}) {
        cfg.kind = kind;
        for (const auto& row : qfit::figure_data(cfg))
            if (row.mu == 1.0) CHECK(std::abs(row.f_single - 1.0) <= 1e-6);
    }

    // Memoryless amplitude damping dips at d = 1/2 (c3 = -1).
    cfg.id = 1;
    cfg.kind = ChannelKind::AmplitudeDamping;
    cfg.n = 41;
    const auto rows = qfit::figure_data(cfg);
    double best_d = -1.0, best_f = 1e300;
    for (const auto& row : rows)
        if (row.mu == 0.0 && row.f_single < best_f) {
            best_f = row.f_single;
            best_d = row.d;
        }
    CHECK(std::abs(best_d - 0.5) <= 0.025 + 1e-12);

    CHECK_THROWS_AS(qfit::figure_data(qfit::FigureConfig{3, ChannelKind::Depolarizing, 1, 5, 0, 1e-5}),
                    qfit::ConfigError);
}

TEST_CASE("figure CSV is deterministic across worker counts") {
    qfit::FigureConfig cfg;
    cfg.id = 1;
    cfg.kind = ChannelKind::Depolarizing;
    cfg.n = 9;
    cfg.threads = 1;
    const std::string one = qfit::figure_rows_to_csv(qfit::figure_data(cfg));
    cfg.threads = 4;
    const std::string four = qfit::figure_rows_to_csv(qfit::figure_data(cfg));
    const std::string serial = qfit::figure_rows_to_csv(qfit::figure_data_serial(cfg));
    CHECK(one == four);
    CHECK(one == serial);
    std::istringstream lines(one);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "D,mu,f_single,f_double");
}

TEST_CASE("quick verification level passes and stays fast") {
    const auto t0 = std::chrono::steady_clock::now();
    const qfit::VerifyReport report = qfit::run_verify(qfit::VerifyLevel::Quick);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& check : report.checks) {
        INFO(check.name, ": observed ", check.observed, " tol ", check.tolerance, " ", check.detail);
        CHECK(check.pass);
    }
    CHECK(report.all_pass);
    CHECK(seconds < 10.0);
    const std::string json = qfit::verify_report_json(report);
    CHECK(json.find("\"all_pass\": true") != std::string::npos);
}
