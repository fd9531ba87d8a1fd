#pragma once

#include <map>
#include <optional>

#include "qcverify/report.hpp"

namespace qcv {

using ParamMap = std::map<std::string, double>;

// Verification drivers behind the CLI subcommands. Each returns a Report
// whose verdicts decide the exit code.
Report verify_example(int which);  // 1, 2 or 3
Report verify_heisenberg();
Report jacobi_all(const std::string& extra_algebra_path = "");
Report check_closed(const std::string& metric, const ParamMap& params, int samples,
                    uint64_t seed, double tol);
Report check_einstein(const std::string& metric, const ParamMap& params, int samples,
                      uint64_t seed);
Report check_ricci_flat(const std::string& metric, const ParamMap& params, int samples,
                        uint64_t seed, double tol);
Report holonomy_cmd(const std::string& metric, const ParamMap& params, int points,
                    uint64_t seed);
Report solve_ode_cmd(const std::string& family, const ParamMap& params, int samples,
                     uint64_t seed);
Report family_residuals_cmd(const std::string& family_or_empty, int samples);
Report appendix_crosscheck_cmd(int which, double a, int samples, uint64_t seed);
Report build_metric_cmd(const std::string& metric, const ParamMap& params, int samples,
                        uint64_t seed);
Report report_all(uint64_t seed);

std::string registry_listing();

}  // namespace qcv
