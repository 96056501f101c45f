#include "aoicred/multi_policies.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "aoicred/numeric.hpp"
#include "aoicred/simulator.hpp"
#include "aoicred/single_solver.hpp"

namespace aoicred {

namespace {

MetricReport analytic_single_report(const SystemConfig& cfg, double xi) {
  MetricReport rep;
  rep.simulated = false;
  ProcessMetrics pm;
  pm.aoi = aoi_of_threshold(cfg, xi);
  pm.err = error_of_threshold(cfg, xi);
  pm.err_raw = pm.err;
  rep.per_process.push_back(pm);
  rep.objective = report_objective(cfg, rep);
  return rep;
}

}  // namespace

MetricReport rr_metrics(const SystemConfig& cfg, const RRPolicy& policy,
                        const SimBudget& budget) {
  return simulate_rr(cfg, policy, budget);
}

MetricReport as_metrics(const SystemConfig& cfg, const ASSchedule& sched,
                        const SimBudget& budget) {
  return simulate_as(cfg, sched, budget);
}

std::pair<RRPolicy, MetricReport> rr_optimize(const SystemConfig& cfg,
                                              double xi_max, int grid_points,
                                              const SimBudget& budget) {
  cfg.validate();
  if (!cfg.equal_beta())
    throw config_error(
        "rr_optimize requires equal per-process weights; unequal weights are "
        "out of scope for the round-robin wait search");
  if (!(xi_max > 0.0)) throw config_error("xi_max must be positive");
  if (grid_points < 2) throw config_error("grid needs at least 2 intervals");

  // With one process the closed forms are exact and cheap; otherwise every
  // candidate reuses budget.seed, so the sampled objective is a deterministic
  // function of xi and paired across candidates.
  auto evaluate = [&](double xi) {
    if (cfg.K() == 1) return analytic_single_report(cfg, xi);
    return simulate_rr(cfg, RRPolicy{xi}, budget);
  };

  std::vector<double> xs(std::size_t(grid_points) + 1);
  double best_obj = 0.0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] = xi_max * double(i) / double(grid_points);
    double obj = evaluate(xs[i]).objective;
    if (i == 0 || obj < best_obj) {
      best_obj = obj;
      best = i;
    }
  }

  double a = best == 0 ? xs[0] : xs[best - 1];
  double b = best + 1 < xs.size() ? xs[best + 1] : xs[best];
  double xi_star = xs[best];
  if (b > a) {
    double refined = numeric::golden_min(
        [&](double xi) { return evaluate(xi).objective; }, a, b, 1e-6);
    if (evaluate(refined).objective < best_obj) xi_star = refined;
  }

  MetricReport rep = evaluate(xi_star);
  return {RRPolicy{xi_star}, rep};
}

std::pair<ASSchedule, MetricReport> as_optimize(const SystemConfig& cfg,
                                                int m_max,
                                                const SimBudget& budget) {
  cfg.validate();
  if (m_max < 1) throw config_error("m_max must be at least 1");
  const int K = cfg.K();

  auto evaluate = [&](const std::vector<int>& m) {
    return simulate_as(cfg, ASSchedule{m}, budget);
  };

  std::vector<int> best_m(std::size_t(K), 1);
  MetricReport best_rep = evaluate(best_m);

  if (K == 2 && m_max <= 32) {
    // exhaustive, lexicographic visiting order; strict improvement only, so
    // exact ties keep the lexicographically smallest vector
    for (int m1 = 1; m1 <= m_max; ++m1)
      for (int m2 = 1; m2 <= m_max; ++m2) {
        if (m1 == 1 && m2 == 1) continue;  // already evaluated
        std::vector<int> m{m1, m2};
        MetricReport rep = evaluate(m);
        if (rep.objective < best_rep.objective) {
          best_rep = rep;
          best_m = m;
        }
      }
  } else {
    // coordinate descent from the all-ones schedule
    for (int pass = 0; pass < 50; ++pass) {
      bool moved = false;
      for (int k = 0; k < K; ++k) {
        for (int v = 1; v <= m_max; ++v) {
          if (v == best_m[std::size_t(k)]) continue;
          std::vector<int> m = best_m;
          m[std::size_t(k)] = v;
          MetricReport rep = evaluate(m);
          if (rep.objective < best_rep.objective) {
            best_rep = rep;
            best_m = m;
            moved = true;
          }
        }
      }
      if (!moved) break;
    }
  }

  return {ASSchedule{best_m}, best_rep};
}

}  // namespace aoicred
