#pragma once

#include <string>
#include <vector>

#include "qfit/channels.hpp"

namespace qfit {

enum class VerifyLevel { Quick, Full };

struct CheckResult {
    std::string name;
    bool pass = false;
    double observed = 0.0;   // worst residual / deviation the check saw
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyReport {
    VerifyLevel level = VerifyLevel::Quick;
    std::vector<CheckResult> checks;
    bool all_pass = false;
    double seconds = 0.0;
};

/// Runs every check at quick (coarse grids) or full (acceptance grids)
/// density. Failures are report content, never exceptions.
VerifyReport run_verify(VerifyLevel level, int threads = 0);

std::string verify_report_json(const VerifyReport& report);

/// Individual checks, grid densities explicit so the acceptance suite can
/// run them at the exact advertised sizes.
namespace checks {

CheckResult analytic_numeric_equivalence(std::size_t nd, std::size_t nmu, std::size_t nth,
                                         std::size_t nph, double tol, int threads);
CheckResult memory_recovery(std::size_t nth, std::size_t nph, double tol, int threads);
CheckResult pd_immunity(std::size_t nd, std::size_t nmu, double tol, int threads);
CheckResult pd_threshold_fixed_point();
CheckResult ad_min_location_numeric(double tol);
CheckResult de_closed_form(std::size_t nd, std::size_t nmu, double tol, int threads);
CheckResult single_double_ordering(std::size_t nd, std::size_t nmu, double tol, int threads);
CheckResult stated_ordering_criterion(std::size_t nd, std::size_t nmu, double tol, int threads);
CheckResult cptp_suite(std::size_t nd, std::size_t nmu, std::size_t nstates, int threads);
CheckResult perfect_teleportation(std::size_t nprobes);
CheckResult figure_determinism(std::size_t n);

}  // namespace checks

}  // namespace qfit
