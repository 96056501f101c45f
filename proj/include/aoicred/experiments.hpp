#pragma once

#include <string>
#include <vector>

#include "aoicred/policies.hpp"

namespace aoicred {

// One sweep = a grid of (beta, alpha) points over a base system. "fig3" is
// the single-process trade-off curve, "fig4" the two-process RR-vs-AS
// comparison, "fig5" the optimal trial-count sweep; "custom" runs the fig3
// machinery over caller-supplied grids.
struct SweepSpec {
  std::string kind = "fig3";
  std::vector<double> betas;   // in (0, 1]
  std::vector<double> alphas;  // recovery rate grid (alpha_1 when K = 2)
  SystemConfig base;
  SimBudget budget;
  std::string out_dir = ".";
  double xi_max = 10.0;    // RR wait search range
  int grid_points = 40;    // RR wait search grid intervals
  int m_max = 8;           // AS trial-count bound
  bool service_parameter_is_rate = false;  // how the service scale was read

  void validate() const;
};

// Default parameterizations of the three shipped sweeps.
SweepSpec fig3_spec();
SweepSpec fig4_spec(bool service_parameter_is_rate = false);
SweepSpec fig5_spec(bool service_parameter_is_rate = false);

struct SweepResult {
  std::string csv_path;
  std::string manifest_path;
  std::string header;              // CSV header line
  std::vector<std::string> rows;   // data rows exactly as written
};

// Single-process trade-off: one row per (beta, alpha) from the weighted
// solver plus a zero-wait baseline row per alpha (written with beta = 0, so
// its objective column is the bare error).
SweepResult run_fig3(const SweepSpec& spec);

// Optimized RR and AS objectives per (beta, alpha_1).
SweepResult run_fig4(const SweepSpec& spec);

// Optimal AS trial counts per alpha_1.
SweepResult run_fig5(const SweepSpec& spec);

}  // namespace aoicred
