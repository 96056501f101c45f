#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "aoicred/policies.hpp"

namespace aoicred {

// Parsed run configuration. Sections are optional in the file; absent sweep
// fields keep their "unset" sentinels so callers can layer defaults under
// them (flags beat config values, config values beat built-in defaults).
struct RunConfig {
  SystemConfig system;  // default: one process, lambda 9, mean-1 service,
                        // alpha 1, beta 1
  bool system_given = false;
  bool service_is_rate = false;
  SimBudget budget;
  bool budget_given = false;
  std::string out_dir;  // "" = unset

  std::string sweep_kind;           // "" = unset
  std::vector<double> sweep_betas;  // empty = unset
  std::vector<double> sweep_alphas;
  double xi_max = -1.0;  // negative = unset
  int grid_points = -1;
  int m_max = -1;
};

// Strict parse: unknown keys anywhere are rejected, as are type mismatches
// and out-of-range values. Throws config_error.
RunConfig parse_run_config(const nlohmann::json& j);

// Reads and parses a JSON config file; unreadable or malformed input throws
// config_error.
RunConfig load_run_config(const std::string& path);

NoiseKind parse_noise(const std::string& name);
const char* noise_name(NoiseKind kind);

}  // namespace aoicred
