#pragma once

#include <cstdint>
#include <vector>

#include "aoicred/model.hpp"

namespace aoicred {

// Round-robin schedule with one wait per cycle, applied before process 1's
// slot: omega = [xi - sum_k Y_{k,prev}]^+ over the K most recent services.
struct RRPolicy {
  double xi = 0.0;
};

// Asymmetric schedule: process k gets m[k] back-to-back trials per cycle,
// no waiting anywhere.
struct ASSchedule {
  std::vector<int> m;
};

enum class NoiseKind { Gaussian, Uniform, None };

struct SimBudget {
  std::uint64_t cycles = 100000;  // total recorded cycles (epochs when K=1)
  std::uint64_t seed = 1;
  int replications = 1;  // cycles split evenly across replications
  int threads = 1;
  NoiseKind noise = NoiseKind::Gaussian;
};

struct ProcessMetrics {
  double aoi = 0.0;
  double aoi_ci = 0.0;  // 95% half-widths; 0 in analytic mode
  double err = 0.0;     // Rao-Blackwellized estimate of the mean squared stamp error
  double err_ci = 0.0;
  double err_raw = 0.0;  // plain average of (S - S')^2
  double err_raw_ci = 0.0;
};

struct MetricReport {
  std::vector<ProcessMetrics> per_process;
  double objective = 0.0;  // sum_k beta_k*aoi_k + (1-beta_k)*err_k
  double objective_ci = 0.0;
  bool simulated = true;  // false when filled from closed forms
  std::uint64_t cycles = 0;
  std::uint64_t seed = 0;
};

// Objective recomputed from the per-process parts and the config weights.
inline double report_objective(const SystemConfig& cfg, const MetricReport& rep) {
  double obj = 0.0;
  for (int k = 0; k < cfg.K(); ++k) {
    const auto& pm = rep.per_process[std::size_t(k)];
    double beta = cfg.processes[std::size_t(k)].beta;
    obj += beta * pm.aoi + (1.0 - beta) * pm.err;
  }
  return obj;
}

}  // namespace aoicred
