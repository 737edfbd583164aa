#include "qfit/grid.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace qfit {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

int resolve_threads(int requested) { return requested > 0 ? requested : omp_get_max_threads(); }

std::vector<ChannelKind> canonical_kinds(std::vector<ChannelKind> kinds) {
    std::sort(kinds.begin(), kinds.end(),
              [](ChannelKind a, ChannelKind b) { return static_cast<int>(a) < static_cast<int>(b); });
    kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
    return kinds;
}

std::vector<QfiMethod> canonical_methods(std::vector<QfiMethod> methods) {
    std::sort(methods.begin(), methods.end(),
              [](QfiMethod a, QfiMethod b) { return static_cast<int>(a) < static_cast<int>(b); });
    methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
    return methods;
}

void check_grid(const GridSpec& g, double lo, double hi, bool open_upper, const char* name) {
    if (g.count < 1) throw ConfigError(std::string(name) + ": count must be at least 1");
    const double a = std::min(g.start, g.stop);
    const double b = std::max(g.start, g.stop);
    if (a < lo || b > hi || (open_upper && b >= hi))
        throw ConfigError(std::string(name) + ": grid bounds leave the parameter range");
}

struct SweepPlan {
    std::vector<ChannelKind> kinds;
    std::vector<QfiMethod> methods;
    bool want_analytic = false;
    bool want_spectral = false;
    bool want_bloch = false;
    std::size_t blocks = 0;
    std::size_t points_per_block = 0;
};

SweepPlan make_plan(const SweepConfig& cfg) {
    SweepPlan plan;
    plan.kinds = canonical_kinds(cfg.kinds);
    plan.methods = canonical_methods(cfg.methods);
    for (QfiMethod m : plan.methods) {
        if (m == QfiMethod::Analytic) plan.want_analytic = true;
        if (m == QfiMethod::Spectral) plan.want_spectral = true;
        if (m == QfiMethod::Bloch) plan.want_bloch = true;
    }
    plan.blocks = plan.kinds.size() * cfg.d_grid.count * cfg.mu_grid.count;
    plan.points_per_block = cfg.theta_grid.count * cfg.phi_grid.count;
    return plan;
}

// One (kind, d, mu) block: the channel is applied once, every (theta, phi)
// point reuses the family.
void sweep_block(const SweepConfig& cfg, const SweepPlan& plan, std::size_t block,
                 std::vector<SweepRecord>& records) {
    const std::size_t nmu = cfg.mu_grid.count;
    const std::size_t nd = cfg.d_grid.count;
    const std::size_t i_kind = block / (nd * nmu);
    const std::size_t i_d = (block / nmu) % nd;
    const std::size_t i_mu = block % nmu;

    const ChannelKind kind = plan.kinds[i_kind];
    const double d = cfg.d_grid.value(i_d);
    const double mu = cfg.mu_grid.value(i_mu);
    const ChannelConfig channel(kind, d, mu);

    ParamFamily family;
    const bool pipeline = plan.want_spectral || plan.want_bloch;
    if (pipeline)
        family = cfg.qubits == 1 ? teleported_family_single(channel, cfg.c)
                                 : teleported_family_double(channel, cfg.c);

    const std::size_t n_methods = plan.methods.size();
    std::size_t idx = block * plan.points_per_block * n_methods;
    for (std::size_t it = 0; it < cfg.theta_grid.count; ++it)
        for (std::size_t ip = 0; ip < cfg.phi_grid.count; ++ip) {
            const ProbeParams at(cfg.theta_grid.value(it), cfg.phi_grid.value(ip));

            QfiResult analytic;
            if (plan.want_analytic) analytic = closed_form_qfi(kind, d, mu, cfg.c, at);
            PipelinePoint pt;
            if (pipeline) pt = qfi_pipeline_point(family, at, cfg.step);

            for (QfiMethod m : plan.methods) {
                SweepRecord rec;
                rec.kind = kind;
                rec.d = d;
                rec.mu = mu;
                rec.theta = at.theta;
                rec.phi = at.phi;
                rec.qubits = cfg.qubits;
                rec.method = m;
                switch (m) {
                    case QfiMethod::Analytic:
                        rec.f_theta = analytic.f_theta;
                        rec.f_phi = analytic.f_phi;
                        break;
                    case QfiMethod::Spectral:
                        rec.f_theta = std::max(pt.f_theta_spectral, 0.0);
                        rec.f_phi = std::max(pt.f_phi_spectral, 0.0);
                        break;
                    case QfiMethod::Bloch:
                        rec.f_theta = std::max(pt.f_theta_bloch, 0.0);
                        rec.f_phi = std::max(pt.f_phi_bloch, 0.0);
                        break;
                }
                if (m != QfiMethod::Analytic && plan.want_analytic)
                    rec.residual = std::max(std::abs(rec.f_theta - analytic.f_theta),
                                            std::abs(rec.f_phi - analytic.f_phi));
                records[idx++] = rec;
            }
        }
}

std::vector<SweepRecord> run_sweep_impl(const SweepConfig& cfg, SweepSummary* summary, bool parallel) {
    validate(cfg);
    const SweepPlan plan = make_plan(cfg);
    std::vector<SweepRecord> records(plan.blocks * plan.points_per_block * plan.methods.size());

    if (parallel) {
        const int nt = resolve_threads(cfg.threads);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
        for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(plan.blocks); ++b)
            sweep_block(cfg, plan, static_cast<std::size_t>(b), records);
    } else {
        for (std::size_t b = 0; b < plan.blocks; ++b) sweep_block(cfg, plan, b, records);
    }

    if (summary) {
        summary->records = records.size();
        summary->max_residual = 0.0;
        summary->has_residual = false;
        for (const SweepRecord& r : records)
            if (r.residual) {
                summary->has_residual = true;
                summary->max_residual = std::max(summary->max_residual, *r.residual);
            }
    }
    return records;
}

}  // namespace

void validate(const SweepConfig& cfg) {
    if (cfg.kinds.empty()) throw ConfigError("sweep: at least one channel kind is required");
    if (cfg.methods.empty()) throw ConfigError("sweep: at least one method is required");
    if (cfg.qubits != 1 && cfg.qubits != 2) throw ConfigError("sweep: qubits must be 1 or 2");
    check_grid(cfg.d_grid, 0.0, 1.0, false, "d-grid");
    check_grid(cfg.mu_grid, 0.0, 1.0, false, "mu-grid");
    check_grid(cfg.theta_grid, 0.0, kPi, false, "theta-grid");
    check_grid(cfg.phi_grid, 0.0, kTwoPi, true, "phi-grid");
    if (!(cfg.step >= 1e-7 && cfg.step <= 1e-3)) throw ConfigError("sweep: step must lie in [1e-7, 1e-3]");
    if (cfg.qubits == 2)
        for (QfiMethod m : cfg.methods)
            if (m != QfiMethod::Spectral)
                throw ConfigError("sweep: only the spectral method covers two-qubit probes");
    if (std::abs(cfg.c.c1) > 1.0 || std::abs(cfg.c.c2) > 1.0 || std::abs(cfg.c.c3) > 1.0)
        throw ConfigError("sweep: |c_i| must not exceed 1");
    const XState res = x_state(cfg.c);
    if (!res.diagnostics.pass()) {
        std::ostringstream msg;
        msg << "sweep: resource c = (" << cfg.c.c1 << ", " << cfg.c.c2 << ", " << cfg.c.c3
            << ") is not a physical state (min eigenvalue " << res.diagnostics.min_eigenvalue << ")";
        throw UnphysicalResourceError(msg.str());
    }
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, SweepSummary* summary) {
    return run_sweep_impl(cfg, summary, true);
}

std::vector<SweepRecord> run_sweep_serial(const SweepConfig& cfg, SweepSummary* summary) {
    return run_sweep_impl(cfg, summary, false);
}

std::string format_scientific(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 16);
    return std::string(buf, res.ptr);
}

std::string sweep_records_to_csv(const std::vector<SweepRecord>& records) {
    std::string out = "kind,D,mu,theta,phi,qubits,f_theta,f_phi,method,residual\n";
    for (const SweepRecord& r : records) {
        out += to_token(r.kind);
        out += ',';
        out += format_scientific(r.d);
        out += ',';
        out += format_scientific(r.mu);
        out += ',';
        out += format_scientific(r.theta);
        out += ',';
        out += format_scientific(r.phi);
        out += ',';
        out += std::to_string(r.qubits);
        out += ',';
        out += format_scientific(r.f_theta);
        out += ',';
        out += format_scientific(r.f_phi);
        out += ',';
        out += to_token(r.method);
        out += ',';
        if (r.residual) out += format_scientific(*r.residual);
        out += '\n';
    }
    return out;
}

namespace {

nlohmann::json grid_to_json(const GridSpec& g) {
    return nlohmann::json{{"start", g.start}, {"stop", g.stop}, {"count", g.count}};
}

GridSpec grid_from_json(const nlohmann::json& j) {
    GridSpec g;
    g.start = j.at("start").get<double>();
    g.stop = j.at("stop").get<double>();
    g.count = j.at("count").get<std::size_t>();
    return g;
}

nlohmann::json config_to_json_obj(const SweepConfig& cfg) {
    nlohmann::json j;
    std::vector<std::string> kinds;
    for (ChannelKind k : cfg.kinds) kinds.emplace_back(to_token(k));
    std::vector<std::string> methods;
    for (QfiMethod m : cfg.methods) methods.emplace_back(to_token(m));
    j["channels"] = kinds;
    j["d_grid"] = grid_to_json(cfg.d_grid);
    j["mu_grid"] = grid_to_json(cfg.mu_grid);
    j["theta_grid"] = grid_to_json(cfg.theta_grid);
    j["phi_grid"] = grid_to_json(cfg.phi_grid);
    j["c"] = {cfg.c.c1, cfg.c.c2, cfg.c.c3};
    j["qubits"] = cfg.qubits;
    j["methods"] = methods;
    j["out"] = cfg.out;
    j["format"] = cfg.format == OutputFormat::Csv ? "csv" : "json";
    j["threads"] = cfg.threads;
    j["step"] = cfg.step;
    return j;
}

}  // namespace

std::string sweep_config_to_json(const SweepConfig& cfg) { return config_to_json_obj(cfg).dump(2); }

SweepConfig sweep_config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    SweepConfig cfg;
    try {
        cfg.kinds.clear();
        for (const auto& k : j.at("channels")) cfg.kinds.push_back(kind_from_token(k.get<std::string>()));
        if (j.contains("d_grid")) cfg.d_grid = grid_from_json(j.at("d_grid"));
        if (j.contains("mu_grid")) cfg.mu_grid = grid_from_json(j.at("mu_grid"));
        if (j.contains("theta_grid")) cfg.theta_grid = grid_from_json(j.at("theta_grid"));
        if (j.contains("phi_grid")) cfg.phi_grid = grid_from_json(j.at("phi_grid"));
        if (j.contains("c")) {
            const auto c = j.at("c");
            cfg.c = ResourceParams(c.at(0).get<double>(), c.at(1).get<double>(), c.at(2).get<double>());
        }
        if (j.contains("qubits")) cfg.qubits = j.at("qubits").get<int>();
        if (j.contains("methods")) {
            cfg.methods.clear();
            for (const auto& m : j.at("methods")) {
                const std::string tok = m.get<std::string>();
                if (tok == "analytic")
                    cfg.methods.push_back(QfiMethod::Analytic);
                else if (tok == "spectral")
                    cfg.methods.push_back(QfiMethod::Spectral);
                else if (tok == "bloch")
                    cfg.methods.push_back(QfiMethod::Bloch);
                else
                    throw ConfigError("config: unknown method '" + tok + "'");
            }
        }
        if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
        if (j.contains("format")) {
            const std::string f = j.at("format").get<std::string>();
            if (f == "csv")
                cfg.format = OutputFormat::Csv;
            else if (f == "json")
                cfg.format = OutputFormat::Json;
            else
                throw ConfigError("config: unknown format '" + f + "'");
        }
        if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
        if (j.contains("step")) cfg.step = j.at("step").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    } catch (const std::out_of_range& e) {
        throw ConfigError(std::string("config value error: ") + e.what());
    }
    return cfg;
}

std::string sweep_records_to_json(const SweepConfig& cfg, const std::vector<SweepRecord>& records,
                                  const SweepSummary& summary) {
    nlohmann::json j;
    j["config"] = config_to_json_obj(cfg);
    nlohmann::json rows = nlohmann::json::array();
    for (const SweepRecord& r : records) {
        nlohmann::json row;
        row["kind"] = to_token(r.kind);
        row["D"] = r.d;
        row["mu"] = r.mu;
        row["theta"] = r.theta;
        row["phi"] = r.phi;
        row["qubits"] = r.qubits;
        row["f_theta"] = r.f_theta;
        row["f_phi"] = r.f_phi;
        row["method"] = to_token(r.method);
        if (r.residual)
            row["residual"] = *r.residual;
        else
            row["residual"] = nullptr;
        rows.push_back(std::move(row));
    }
    j["records"] = std::move(rows);
    j["summary"] = {{"records", summary.records},
                    {"max_residual", summary.max_residual},
                    {"has_residual", summary.has_residual}};
    return j.dump(2);
}

namespace {

void figure_row(const FigureConfig& cfg, const ParamAxis axis, std::size_t index,
                std::vector<FigureRow>& rows) {
    const std::size_t i_d = index / cfg.n;
    const std::size_t i_mu = index % cfg.n;
    const GridSpec axis_grid{0.0, 1.0, cfg.n};
    FigureRow row;
    row.d = axis_grid.value(i_d);
    row.mu = axis_grid.value(i_mu);

    const ChannelConfig channel(cfg.kind, row.d, row.mu);
    const ResourceParams c(cfg.sign > 0 ? 1.0 : -1.0, cfg.sign > 0 ? 1.0 : -1.0, -1.0);
    const ProbeParams at(kPi / 2.0, 0.0);

    const ParamFamily single = teleported_family_single(channel, c);
    const ParamFamily doubled = teleported_family_double(channel, c);
    SpectralStats stats;
    row.f_single = std::max(qfi_spectral(single, axis, at, cfg.step, &stats), 0.0);
    row.f_double = std::max(qfi_spectral(doubled, axis, at, cfg.step, &stats), 0.0);
    rows[index] = row;
}

std::vector<FigureRow> figure_impl(const FigureConfig& cfg, bool parallel) {
    if (cfg.id != 1 && cfg.id != 2) throw ConfigError("figure: id must be 1 or 2");
    if (cfg.sign != 1 && cfg.sign != -1) throw ConfigError("figure: sign must be +1 or -1");
    if (cfg.n < 2) throw ConfigError("figure: grid needs at least 2 points per axis");
    const ParamAxis axis = cfg.id == 1 ? ParamAxis::Theta : ParamAxis::Phi;
    std::vector<FigureRow> rows(cfg.n * cfg.n);
    if (parallel) {
        const int nt = resolve_threads(cfg.threads);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(rows.size()); ++i)
            figure_row(cfg, axis, static_cast<std::size_t>(i), rows);
    } else {
        for (std::size_t i = 0; i < rows.size(); ++i) figure_row(cfg, axis, i, rows);
    }
    return rows;
}

}  // namespace

std::vector<FigureRow> figure_data(const FigureConfig& cfg) { return figure_impl(cfg, true); }

std::vector<FigureRow> figure_data_serial(const FigureConfig& cfg) { return figure_impl(cfg, false); }

std::string figure_rows_to_csv(const std::vector<FigureRow>& rows) {
    std::string out = "D,mu,f_single,f_double\n";
    for (const FigureRow& r : rows) {
        out += format_scientific(r.d);
        out += ',';
        out += format_scientific(r.mu);
        out += ',';
        out += format_scientific(r.f_single);
        out += ',';
        out += format_scientific(r.f_double);
        out += '\n';
    }
    return out;
}

}  // namespace qfit
