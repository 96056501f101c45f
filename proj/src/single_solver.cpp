#include "aoicred/single_solver.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "aoicred/numeric.hpp"

namespace aoicred {

namespace {

void require_single(const SystemConfig& cfg) {
  cfg.validate();
  if (cfg.K() != 1) throw config_error("single-process operation needs K = 1");
}

void require_xi(double xi) {
  if (xi < 0.0) throw config_error("wait threshold must be nonnegative");
}

// Auxiliary numerator/denominator shared by the average-age ratio and the
// Dinkelbach objective: num = E[Y_prev L] + E[L^2]/2, den = E[L].
struct AuxParts {
  double num, den;
};

AuxParts aux_parts(const SystemConfig& cfg, double xi) {
  const ProcessSpec& p = cfg.processes.front();
  double inv_l = 1.0 / p.lambda;
  double mu = cfg.service.mean;
  double mu2 = cfg.service.second_moment;
  WaitMoments wm = wait_moments(cfg.service, xi);
  double num = wm.e_yw + mu * (inv_l + mu) +
               0.5 * (wm.e_w2 + 2.0 * wm.e_w * (inv_l + mu) +
                      2.0 * inv_l * inv_l + 2.0 * mu * inv_l + mu2);
  double den = wm.e_w + inv_l + mu;
  return {num, den};
}

}  // namespace

WaitMoments wait_moments(const ServiceDistribution& service, double xi) {
  require_xi(xi);
  if (service.kind != ServiceKind::Exponential)
    return wait_moments_quadrature(service, xi);
  double mu = service.mean;
  double em = std::expm1(-xi / mu);  // e^{-xi/mu} - 1, sign-safe near 0
  WaitMoments wm;
  wm.e_w = xi + mu * em;
  wm.e_w2 = xi * xi - 2.0 * mu * xi - 2.0 * mu * mu * em;
  wm.e_yw = mu * (xi * (2.0 + em) + 2.0 * mu * em);
  return wm;
}

WaitMoments wait_moments_quadrature(const ServiceDistribution& service,
                                    double xi) {
  require_xi(xi);
  WaitMoments wm;
  if (xi == 0.0) return wm;
  auto f = [&](double y) { return service.pdf(y); };
  wm.e_w = numeric::integrate([&](double y) { return (xi - y) * f(y); }, 0.0, xi);
  wm.e_w2 = numeric::integrate(
      [&](double y) { return (xi - y) * (xi - y) * f(y); }, 0.0, xi);
  wm.e_yw =
      numeric::integrate([&](double y) { return y * (xi - y) * f(y); }, 0.0, xi);
  return wm;
}

double aoi_of_threshold(const SystemConfig& cfg, double xi) {
  require_single(cfg);
  require_xi(xi);
  AuxParts ap = aux_parts(cfg, xi);
  return ap.num / ap.den;
}

double error_of_threshold(const SystemConfig& cfg, double xi) {
  require_single(cfg);
  require_xi(xi);
  const RecoveryFunction& rf = cfg.processes.front().recovery;
  if (rf.alpha == 0.0) return 1.0;
  if (cfg.service.kind != ServiceKind::Exponential)
    return error_of_threshold_quadrature(cfg, xi);
  // E[h(max(Y, xi))] for h = exp(-alpha x), Y ~ exp with mean mu:
  //   h(xi) P(Y < xi) + E[h(Y); Y >= xi]
  double mu = cfg.service.mean;
  double a = rf.alpha;
  return std::exp(-a * xi) * -std::expm1(-xi / mu) +
         std::exp(-(a + 1.0 / mu) * xi) / (1.0 + a * mu);
}

double error_of_threshold_quadrature(const SystemConfig& cfg, double xi) {
  require_single(cfg);
  require_xi(xi);
  const RecoveryFunction& rf = cfg.processes.front().recovery;
  double head = rf(xi) * cfg.service.cdf(xi);
  double tail = numeric::integrate_to_inf(
      [&](double y) { return rf(y) * cfg.service.pdf(y); }, xi);
  return head + tail;
}

double solve_threshold_for_credibility(const SystemConfig& cfg, double tau) {
  require_single(cfg);
  if (!(tau > 0.0))
    throw infeasible_error("credibility bound must be positive: the error only "
                           "approaches 0 asymptotically");
  if (error_of_threshold(cfg, 0.0) <= tau) return 0.0;
  if (cfg.processes.front().recovery.alpha == 0.0)
    throw infeasible_error("constant error variance 1 exceeds the bound");

  double hi = 1.0;
  int guard = 0;
  while (error_of_threshold(cfg, hi) > tau) {
    hi *= 2.0;
    if (++guard > 400)
      throw numerical_error("credibility bisection: bracket growth failed");
  }
  auto f = [&](double xi) { return error_of_threshold(cfg, xi) - tau; };
  return numeric::bisect_root(f, 0.0, hi, 1e-10, 1e-9);
}

DinkelbachEval dinkelbach_p(const SystemConfig& cfg, double tau, double theta) {
  require_single(cfg);
  const ProcessSpec& p = cfg.processes.front();
  double xi0 = std::max(0.0, theta - 1.0 / p.lambda - cfg.service.mean);
  DinkelbachEval ev;
  ev.xi = xi0;
  if (std::isfinite(tau) && error_of_threshold(cfg, xi0) > tau) {
    ev.xi = solve_threshold_for_credibility(cfg, tau);
    ev.constraint_active = true;
  }
  AuxParts ap = aux_parts(cfg, ev.xi);
  ev.value = ap.num - theta * ap.den;
  return ev;
}

SingleSolution solve_single(const SystemConfig& cfg, double tau) {
  require_single(cfg);

  // Certified upper bound on the optimal age: any feasible threshold's age.
  double xi_feasible = 0.0;
  if (std::isfinite(tau) && error_of_threshold(cfg, 0.0) > tau)
    xi_feasible = solve_threshold_for_credibility(cfg, tau);

  double lo = std::max(0.0, cfg.service.mean);
  double hi = aoi_of_threshold(cfg, xi_feasible);
  int guard = 0;
  while (dinkelbach_p(cfg, tau, hi).value > 0.0) {
    hi = lo + 2.0 * (hi - lo);
    if (++guard > 100)
      throw numerical_error("Dinkelbach bracket expansion failed");
  }

  double theta = 0.5 * (lo + hi);
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    theta = 0.5 * (lo + hi);
    double pv = dinkelbach_p(cfg, tau, theta).value;
    if (std::abs(pv) <= 1e-12 * (1.0 + theta)) break;
    (pv > 0.0 ? lo : hi) = theta;
  }

  DinkelbachEval ev = dinkelbach_p(cfg, tau, theta);
  SingleSolution sol;
  sol.theta_star = theta;
  sol.xi_star = ev.xi;
  sol.gamma_active = ev.constraint_active;
  sol.aoi = aoi_of_threshold(cfg, ev.xi);
  sol.err = error_of_threshold(cfg, ev.xi);
  sol.objective = sol.aoi;  // the solved problem minimizes the age itself
  return sol;
}

SingleSolution solve_weighted(const SystemConfig& cfg) {
  require_single(cfg);
  const ProcessSpec& p = cfg.processes.front();
  double beta = p.beta;
  if (beta == 0.0)
    throw infeasible_error(
        "beta = 0 asks for pure error minimization, whose infimum needs an "
        "unbounded wait and is not attained");
  if (!(beta > 0.0 && beta <= 1.0))
    throw config_error("beta must lie in (0, 1]");

  double w = (1.0 - beta) / beta;
  auto g = [&](double xi) {
    return aoi_of_threshold(cfg, xi) + w * error_of_threshold(cfg, xi);
  };

  // Coarse grid on an expanding range, then golden refinement. The age term
  // grows like xi at large xi while the error term is bounded, so the argmin
  // is interior once the range is wide enough.
  double hi = 4.0 * (cfg.service.mean + 1.0 / p.lambda);
  const int N = 256;
  std::size_t best = 0;
  std::vector<double> xs, vs;
  for (int round = 0; round < 64; ++round) {
    xs.clear();
    vs.clear();
    for (int i = 0; i <= N; ++i) {
      double x = hi * double(i) / double(N);
      xs.push_back(x);
      vs.push_back(g(x));
    }
    best = std::size_t(std::min_element(vs.begin(), vs.end()) - vs.begin());
    if (best + 2 <= std::size_t(N)) break;
    hi *= 2.0;
  }
  if (best + 2 > std::size_t(N))
    throw numerical_error("weighted line search: no interior minimum found");

  double a = best == 0 ? 0.0 : xs[best - 1];
  double b = xs[best + 1];
  double xi_star = numeric::golden_min(g, a, b, 1e-8);

  SingleSolution sol;
  sol.xi_star = xi_star;
  sol.aoi = aoi_of_threshold(cfg, xi_star);
  sol.err = error_of_threshold(cfg, xi_star);
  sol.theta_star = sol.aoi;
  sol.gamma_active = beta < 1.0;  // the error term participates
  sol.objective = beta * sol.aoi + (1.0 - beta) * sol.err;
  return sol;
}

}  // namespace aoicred
