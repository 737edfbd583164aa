// Command-line driver: parameter sweeps, figure-surface reproduction,
// threshold and minimum-location reports, and the verification suite.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfit/analytic.hpp"
#include "qfit/grid.hpp"
#include "qfit/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitIoError = 3;

std::vector<std::string> split_csv_list(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    return parts;
}

qfit::GridSpec parse_grid(const std::string& text, const char* name) {
    const std::vector<std::string> parts = split_csv_list([&] {
        std::string t = text;
        for (char& ch : t)
            if (ch == ':') ch = ',';
        return t;
    }());
    if (parts.size() != 3)
        throw qfit::ConfigError(std::string(name) + ": expected start:stop:count, got '" + text + "'");
    qfit::GridSpec g;
    try {
        g.start = std::stod(parts[0]);
        g.stop = std::stod(parts[1]);
        const long long n = std::stoll(parts[2]);
        if (n < 1) throw qfit::ConfigError(std::string(name) + ": count must be at least 1");
        g.count = static_cast<std::size_t>(n);
    } catch (const std::invalid_argument&) {
        throw qfit::ConfigError(std::string(name) + ": cannot parse '" + text + "'");
    }
    return g;
}

qfit::ResourceParams parse_resource(const std::string& text) {
    const std::vector<std::string> parts = split_csv_list(text);
    if (parts.size() != 3) throw qfit::ConfigError("--c: expected c1,c2,c3, got '" + text + "'");
    try {
        return qfit::ResourceParams(std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2]));
    } catch (const std::invalid_argument&) {
        throw qfit::ConfigError("--c: cannot parse '" + text + "'");
    } catch (const std::out_of_range& e) {
        throw qfit::ConfigError(std::string("--c: ") + e.what());
    }
}

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw qfit::IoError("cannot open '" + path + "' for writing");
    out << payload;
    if (!out) throw qfit::IoError("failed while writing '" + path + "'");
}

int run_sweep_command(const std::string& channels, const std::string& d_grid, const std::string& mu_grid,
                      const std::string& theta_grid, const std::string& phi_grid, const std::string& c_text,
                      int qubits, const std::string& methods, const std::string& out,
                      const std::string& format, int threads, const std::string& config_path,
                      const std::vector<bool>& passed) {
    qfit::SweepConfig cfg;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw qfit::IoError("cannot open config file '" + config_path + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        cfg = qfit::sweep_config_from_json(buffer.str());
    }
    // Flags override whatever the config file set.
    if (passed[0]) {
        cfg.kinds.clear();
        for (const std::string& tok : split_csv_list(channels)) {
            try {
                cfg.kinds.push_back(qfit::kind_from_token(tok));
            } catch (const std::out_of_range& e) {
                throw qfit::ConfigError(e.what());
            }
        }
    }
    if (passed[1]) cfg.d_grid = parse_grid(d_grid, "--d-grid");
    if (passed[2]) cfg.mu_grid = parse_grid(mu_grid, "--mu-grid");
    if (passed[3]) cfg.theta_grid = parse_grid(theta_grid, "--theta-grid");
    if (passed[4]) cfg.phi_grid = parse_grid(phi_grid, "--phi-grid");
    if (passed[5]) cfg.c = parse_resource(c_text);
    if (passed[6]) cfg.qubits = qubits;
    if (passed[7]) {
        cfg.methods.clear();
        for (const std::string& tok : split_csv_list(methods)) {
            if (tok == "analytic")
                cfg.methods.push_back(qfit::QfiMethod::Analytic);
            else if (tok == "spectral")
                cfg.methods.push_back(qfit::QfiMethod::Spectral);
            else if (tok == "bloch")
                cfg.methods.push_back(qfit::QfiMethod::Bloch);
            else
                throw qfit::ConfigError("--method: unknown method '" + tok + "'");
        }
    }
    if (passed[8]) cfg.out = out;
    if (passed[9]) {
        if (format == "csv")
            cfg.format = qfit::OutputFormat::Csv;
        else if (format == "json")
            cfg.format = qfit::OutputFormat::Json;
        else
            throw qfit::ConfigError("--format: expected csv or json");
    }
    if (passed[10]) cfg.threads = threads;

    qfit::SweepSummary summary;
    const std::vector<qfit::SweepRecord> records = qfit::run_sweep(cfg, &summary);
    const std::string payload = cfg.format == qfit::OutputFormat::Csv
                                    ? qfit::sweep_records_to_csv(records)
                                    : qfit::sweep_records_to_json(cfg, records, summary);
    write_output(cfg.out, payload);
    std::cerr << "sweep: " << summary.records << " records";
    if (summary.has_residual) std::cerr << ", max |numeric - analytic| = " << summary.max_residual;
    std::cerr << "\n";
    if (summary.has_residual && summary.max_residual > 1e-5) {
        std::cerr << "sweep: residual exceeds 1e-5\n";
        return kExitVerificationFailure;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Teleported quantum Fisher information through memory channels"};
    app.require_subcommand(1);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "QFI over a (channel, D, mu, theta, phi) grid");
    std::string channels = "de", d_grid = "0:1:11", mu_grid = "0:1:11", theta_grid, phi_grid;
    std::string c_text = "1,1,-1", methods = "analytic", out, format = "csv", config_path;
    int qubits = 1, threads = 0;
    sweep->add_option("--channel", channels, "Comma list of ad|pd|de");
    sweep->add_option("--d-grid", d_grid, "start:stop:count for D");
    sweep->add_option("--mu-grid", mu_grid, "start:stop:count for mu");
    sweep->add_option("--theta-grid", theta_grid, "start:stop:count for theta");
    sweep->add_option("--phi-grid", phi_grid, "start:stop:count for phi");
    sweep->add_option("--c", c_text, "Resource coefficients c1,c2,c3");
    sweep->add_option("--qubits", qubits, "1 or 2");
    sweep->add_option("--method", methods, "Comma list of analytic,spectral,bloch");
    sweep->add_option("--out", out, "Output file (default stdout)");
    sweep->add_option("--format", format, "csv or json");
    sweep->add_option("--threads", threads, "Worker count (0 = default)");
    sweep->add_option("--config", config_path, "JSON config file; flags override");

    // figure
    auto* figure = app.add_subcommand("figure", "Surface data for the QFI figures");
    int fig_id = 1, fig_sign_val = +1, fig_threads = 0;
    std::string fig_channel = "de", fig_sign = "+", fig_out;
    figure->add_option("--id", fig_id, "1 = F_theta surface, 2 = F_phi surface");
    figure->add_option("--channel", fig_channel, "ad|pd|de");
    figure->add_option("--sign", fig_sign, "+ or - (c1 = c2 = +-1, c3 = -1)");
    figure->add_option("--out", fig_out, "Output CSV file (default stdout)");
    figure->add_option("--threads", fig_threads, "Worker count (0 = default)");

    // threshold
    auto* threshold = app.add_subcommand("threshold", "Memory threshold mu* for ad or pd");
    std::string th_channel = "pd", th_c = "1,1,0.5";
    double th_d = 0.5, th_phi = 0.0;
    threshold->add_option("--channel", th_channel, "ad|pd");
    threshold->add_option("--c", th_c, "Resource coefficients c1,c2,c3");
    threshold->add_option("--d", th_d, "Decoherence strength");
    threshold->add_option("--phi", th_phi, "Phase of the probe");

    // minloc
    auto* minloc = app.add_subcommand("minloc", "D minimizing the amplitude-damping F_theta(pi/2)");
    double ml_c3 = 0.5, ml_mu = 0.0;
    minloc->add_option("--c3", ml_c3, "Resource c3");
    minloc->add_option("--mu", ml_mu, "Memory coefficient");

    // verify
    auto* verify = app.add_subcommand("verify", "Run the invariant suite");
    std::string v_level = "quick", v_out;
    int v_threads = 0;
    verify->add_option("--level", v_level, "quick or full");
    verify->add_option("--out", v_out, "JSON report file");
    verify->add_option("--threads", v_threads, "Worker count (0 = default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (sweep->parsed()) {
            const std::vector<bool> passed = {
                sweep->count("--channel") > 0, sweep->count("--d-grid") > 0,
                sweep->count("--mu-grid") > 0, sweep->count("--theta-grid") > 0,
                sweep->count("--phi-grid") > 0, sweep->count("--c") > 0,
                sweep->count("--qubits") > 0,  sweep->count("--method") > 0,
                sweep->count("--out") > 0,     sweep->count("--format") > 0,
                sweep->count("--threads") > 0};
            return run_sweep_command(channels, d_grid, mu_grid, theta_grid, phi_grid, c_text, qubits,
                                     methods, out, format, threads, config_path, passed);
        }
        if (figure->parsed()) {
            qfit::FigureConfig cfg;
            cfg.id = fig_id;
            try {
                cfg.kind = qfit::kind_from_token(fig_channel);
            } catch (const std::out_of_range& e) {
                throw qfit::ConfigError(e.what());
            }
            if (fig_sign == "+")
                cfg.sign = +1;
            else if (fig_sign == "-")
                cfg.sign = -1;
            else
                throw qfit::ConfigError("--sign: expected + or -");
            cfg.threads = fig_threads;
            (void)fig_sign_val;
            write_output(fig_out, qfit::figure_rows_to_csv(qfit::figure_data(cfg)));
            return kExitOk;
        }
        if (threshold->parsed()) {
            const qfit::ResourceParams c = parse_resource(th_c);
            nlohmann::json j;
            j["channel"] = th_channel;
            j["c"] = {c.c1, c.c2, c.c3};
            j["d"] = th_d;
            j["phi"] = th_phi;
            qfit::ThresholdResult res;
            try {
                if (th_channel == "pd")
                    res = qfit::pd_threshold(c, th_d, th_phi);
                else if (th_channel == "ad")
                    res = qfit::ad_threshold(c, th_d, th_phi);
                else
                    throw qfit::ConfigError("--channel: threshold supports ad or pd");
            } catch (const qfit::DZeroError& e) {
                throw qfit::ConfigError(e.what());
            } catch (const qfit::DegenerateDenominatorError& e) {
                throw qfit::ConfigError(e.what());
            } catch (const std::out_of_range& e) {
                throw qfit::ConfigError(e.what());
            }
            if (res.mu_star)
                j["mu_star"] = *res.mu_star;
            else
                j["mu_star"] = nullptr;
            j["location_above"] = qfit::to_token(res.location_above);
            j["location_below"] = qfit::to_token(res.location_below);
            j["degenerate"] = res.degenerate;
            j["clipped"] = qfit::to_token(res.clipped);
            if (th_channel == "pd") j["raw_value"] = res.raw_value;
            std::cout << j.dump(2) << "\n";
            return kExitOk;
        }
        if (minloc->parsed()) {
            nlohmann::json j;
            j["c3"] = ml_c3;
            j["mu"] = ml_mu;
            try {
                j["d_min"] = qfit::ad_min_location(ml_c3, ml_mu);
            } catch (const std::out_of_range& e) {
                throw qfit::ConfigError(e.what());
            }
            std::cout << j.dump(2) << "\n";
            return kExitOk;
        }
        if (verify->parsed()) {
            qfit::VerifyLevel level;
            if (v_level == "quick")
                level = qfit::VerifyLevel::Quick;
            else if (v_level == "full")
                level = qfit::VerifyLevel::Full;
            else
                throw qfit::ConfigError("--level: expected quick or full");
            const qfit::VerifyReport report = qfit::run_verify(level, v_threads);
            for (const qfit::CheckResult& c : report.checks)
                std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " (observed " << c.observed
                          << ", tolerance " << c.tolerance << ") " << c.detail << "\n";
            std::cout << (report.all_pass ? "verify: all checks passed" : "verify: FAILURES present")
                      << " in " << report.seconds << " s\n";
            if (!v_out.empty()) write_output(v_out, qfit::verify_report_json(report));
            return report.all_pass ? kExitOk : kExitVerificationFailure;
        }
    } catch (const qfit::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const qfit::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitOk;
}
