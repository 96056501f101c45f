#pragma once

#include <utility>

#include "aoicred/policies.hpp"

namespace aoicred {

// Metric evaluation for the two cyclic schedules. Estimates come from the
// epoch simulator; the closed multi-process forms are not available, so Monte
// Carlo is the authoritative evaluator (cross-checked in tests against an
// independently coded event-list simulator).
MetricReport rr_metrics(const SystemConfig& cfg, const RRPolicy& policy,
                        const SimBudget& budget);
MetricReport as_metrics(const SystemConfig& cfg, const ASSchedule& sched,
                        const SimBudget& budget);

// Line search over the cycle wait threshold: coarse grid on [0, xi_max] with
// grid_points+1 evaluations, then golden-section refinement around the best
// cell. All candidates share budget.seed (common random numbers), making the
// sampled objective a deterministic function of xi. With K = 1 the metrics
// come from the closed forms instead and the report is flagged analytic.
// Equal per-process weights required.
std::pair<RRPolicy, MetricReport> rr_optimize(const SystemConfig& cfg,
                                              double xi_max, int grid_points,
                                              const SimBudget& budget);

// Trial-count search: exhaustive over {1..m_max}^K for K = 2 and m_max <= 32,
// coordinate descent otherwise. Candidates are visited in lexicographic order
// and replaced only on strict improvement, so exact ties resolve to the
// lexicographically smallest vector. Common random numbers as above.
std::pair<ASSchedule, MetricReport> as_optimize(const SystemConfig& cfg,
                                                int m_max,
                                                const SimBudget& budget);

}  // namespace aoicred
