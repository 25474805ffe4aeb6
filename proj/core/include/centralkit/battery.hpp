#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace centralkit {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;  ///< measured quantities
};

struct BatteryOptions {
  std::size_t threads = 1;
};

CriterionResult check_nt_smooth_order(const BatteryOptions& opt = {});
CriterionResult check_post_shock_order(const BatteryOptions& opt = {});
CriterionResult check_pointwise_bound(const BatteryOptions& opt = {});
CriterionResult check_tvd_conservation(const BatteryOptions& opt = {});
CriterionResult check_reductions(const BatteryOptions& opt = {});
CriterionResult check_convection_diffusion(const BatteryOptions& opt = {});
CriterionResult check_edge_detection(const BatteryOptions& opt = {});
CriterionResult check_mollifier_recovery(const BatteryOptions& opt = {});
CriterionResult check_galerkin_conservation(const BatteryOptions& opt = {});
CriterionResult check_sv_postprocessing(const BatteryOptions& opt = {});
CriterionResult check_sod_self_convergence(const BatteryOptions& opt = {});

using CriterionFn = std::function<CriterionResult(const BatteryOptions&)>;
/// All criteria in order.
std::vector<CriterionFn> battery_criteria();

/// Runs every criterion, optionally reporting each result as it completes.
std::vector<CriterionResult> run_battery(
    const BatteryOptions& opt = {},
    const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS] 3 name: detail"
std::string format_result(const CriterionResult& r);

}  // namespace centralkit
