#pragma once

#include <cstdint>
#include <vector>

namespace aoicred {

// Per-batch accumulation for one process. Batches are cycle-aligned so the
// ratio and mean estimators below see (approximately) i.i.d. blocks.
struct Batch {
  double num = 0.0;        // sum of start_age*L + L^2/2
  double den = 0.0;        // sum of L
  double rb = 0.0;         // sum of h(gap): Rao-Blackwellized error terms
  double raw = 0.0;        // sum of (S - S')^2: raw error terms
  std::uint64_t cnt = 0;   // deliveries in the batch
};

struct EstimateSE {
  double value = 0.0;
  double se = 0.0;
};

// Number of batches for n cycles: n/64 clamped to [16, 1024] (or n when n < 16).
int batch_count(std::uint64_t n);

// Batch-means estimate and standard error of (sum num_b) / (sum den_b).
EstimateSE batch_ratio(const std::vector<double>& num,
                       const std::vector<double>& den);

// Standard error of the weighted objective
//   sum_k beta_k * aoi_k + (1 - beta_k) * err_k
// via per-batch linearization, capturing cross-metric covariance.
// batches[k] holds process k's batch list; all lists share the batch layout.
double objective_se(const std::vector<std::vector<Batch>>& batches,
                    const std::vector<double>& beta);

}  // namespace aoicred
