#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qfit/analytic.hpp"
#include "qfit/channels.hpp"
#include "qfit/qfi.hpp"
#include "qfit/qstate.hpp"

namespace qfit {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnphysicalResourceError : ConfigError {
    using ConfigError::ConfigError;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Uniformly spaced inclusive grid; count == 1 collapses to start.
struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 1;

    double value(std::size_t i) const {
        if (count <= 1) return start;
        return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
};

enum class OutputFormat { Csv, Json };

struct SweepConfig {
    std::vector<ChannelKind> kinds;
    GridSpec d_grid{0.0, 1.0, 11};
    GridSpec mu_grid{0.0, 1.0, 11};
    GridSpec theta_grid{1.57079632679489661923, 1.57079632679489661923, 1};
    GridSpec phi_grid{0.0, 0.0, 1};
    ResourceParams c{1.0, 1.0, -1.0};
    int qubits = 1;
    std::vector<QfiMethod> methods{QfiMethod::Analytic};
    std::string out;  // empty -> stdout
    OutputFormat format = OutputFormat::Csv;
    int threads = 0;  // 0 -> runtime default
    double step = 1e-5;
};

struct SweepRecord {
    ChannelKind kind = ChannelKind::AmplitudeDamping;
    double d = 0.0;
    double mu = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    int qubits = 1;
    double f_theta = 0.0;
    double f_phi = 0.0;
    QfiMethod method = QfiMethod::Analytic;
    std::optional<double> residual;  // vs analytic, when both methods run
};

struct SweepSummary {
    std::size_t records = 0;
    double max_residual = 0.0;
    bool has_residual = false;
};

/// Throws ConfigError on bad ranges and UnphysicalResourceError when the
/// requested resource coefficients fail density validation.
void validate(const SweepConfig& cfg);

/// Records in lexicographic (kind, d index, mu index, theta index, phi index,
/// method) order. run_sweep partitions the (kind, d, mu) blocks across
/// OpenMP workers; run_sweep_serial is the plain-loop reference. Both produce
/// bit-identical output.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, SweepSummary* summary = nullptr);
std::vector<SweepRecord> run_sweep_serial(const SweepConfig& cfg, SweepSummary* summary = nullptr);

/// 17-significant-digit scientific notation, locale independent.
std::string format_scientific(double v);

std::string sweep_records_to_csv(const std::vector<SweepRecord>& records);
std::string sweep_records_to_json(const SweepConfig& cfg, const std::vector<SweepRecord>& records,
                                  const SweepSummary& summary);

std::string sweep_config_to_json(const SweepConfig& cfg);
SweepConfig sweep_config_from_json(const std::string& text);

/// Fixed-parameter surfaces behind the figure subcommand: theta = pi/2,
/// phi = 0, c = (sign, sign, -1); id 1 reports F_theta, id 2 reports F_phi,
/// each for the single- and two-qubit pipelines on an n x n (d, mu) grid.
struct FigureConfig {
    int id = 1;
    ChannelKind kind = ChannelKind::Depolarizing;
    int sign = +1;
    std::size_t n = 41;
    int threads = 0;
    double step = 1e-5;
};

struct FigureRow {
    double d = 0.0;
    double mu = 0.0;
    double f_single = 0.0;
    double f_double = 0.0;
};

std::vector<FigureRow> figure_data(const FigureConfig& cfg);
std::vector<FigureRow> figure_data_serial(const FigureConfig& cfg);
std::string figure_rows_to_csv(const std::vector<FigureRow>& rows);

}  // namespace qfit
