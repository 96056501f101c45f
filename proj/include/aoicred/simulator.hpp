#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "aoicred/policies.hpp"

namespace aoicred {

// One delivered sample. S is the true generation stamp, S_prime the received
// (noisy) stamp, D = S + Y the delivery instant, L = D - D_prev the epoch
// length, W the wait contained in the epoch, start_age the age at D_prev.
struct EpochRecord {
  int process = 0;  // 1-based in traces
  std::uint64_t i = 0;
  double S = 0.0;
  double S_prime = 0.0;
  double D = 0.0;
  double Y = 0.0;
  double X = 0.0;
  double W = 0.0;
  double L = 0.0;
  double start_age = 0.0;
};

struct SimEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  std::string kind;  // "raw" | "rao-blackwell"
};

struct SingleSimResult {
  SimEstimate aoi;      // empirical (sum a*L + L^2/2) / (sum L)
  SimEstimate err;      // Rao-Blackwellized: average of h(gap)
  SimEstimate err_raw;  // average of realized (S - S')^2
};

// Single-process threshold policy: epochs of wait + inter-arrival + service.
// With trace set, one CSV row per delivery (replication 0 only).
SingleSimResult simulate_single(const SystemConfig& cfg, ThresholdPolicy policy,
                                const SimBudget& budget,
                                std::ostream* trace = nullptr);

// Round-robin cycles with one threshold wait per cycle. wait_slot moves the
// wait before another process's slot (0-based); for identical processes that
// choice only relabels the cycle, so summed metrics match in distribution.
MetricReport simulate_rr(const SystemConfig& cfg, const RRPolicy& policy,
                         const SimBudget& budget, std::ostream* trace = nullptr,
                         int wait_slot = 0);

// Asymmetric schedule: bursts of m_k zero-wait trials per process per cycle.
MetricReport simulate_as(const SystemConfig& cfg, const ASSchedule& sched,
                         const SimBudget& budget, std::ostream* trace = nullptr);

const char* trace_header();  // CSV column list for the trace dump

}  // namespace aoicred
