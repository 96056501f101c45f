#pragma once

#include "aoicred/model.hpp"

namespace aoicred {

struct SingleSolution {
  double theta_star = 0.0;  // optimal long-run average age
  double xi_star = 0.0;     // optimal wait threshold
  bool gamma_active = false;  // credibility constraint (or error term) binding
  double aoi = 0.0;
  double err = 0.0;        // achieved long-run mean squared stamp error
  double objective = 0.0;  // value of the solved problem: beta*aoi+(1-beta)*err
                           // for solve_weighted, the average age for solve_single
};

// First/second moments of the wait [xi - Y]^+ and the cross moment E[Y w(Y)].
struct WaitMoments {
  double e_w = 0.0;
  double e_w2 = 0.0;
  double e_yw = 0.0;
};

// Closed forms for exponential service; generic quadrature otherwise.
WaitMoments wait_moments(const ServiceDistribution& service, double xi);
// Distribution-agnostic route (pdf-based quadrature); used to cross-check the
// closed forms and to serve future service laws.
WaitMoments wait_moments_quadrature(const ServiceDistribution& service, double xi);

// Long-run average age under the threshold policy w(y) = [xi - y]^+:
//   ( E[Y w] + mu(1/lambda + mu)
//     + (E[w^2] + 2 E[w](1/lambda + mu) + 2/lambda^2 + 2 mu/lambda + mu2)/2 )
//   / ( E[w] + 1/lambda + mu )
double aoi_of_threshold(const SystemConfig& cfg, double xi);

// Long-run mean squared stamp error E[h(max(Y, xi))].
double error_of_threshold(const SystemConfig& cfg, double xi);
double error_of_threshold_quadrature(const SystemConfig& cfg, double xi);

// Smallest xi >= 0 with error_of_threshold(xi) <= tau (bisection; the error is
// non-increasing in xi). tau <= 0 is unattainable and reported as infeasible.
double solve_threshold_for_credibility(const SystemConfig& cfg, double tau);

struct DinkelbachEval {
  double value = 0.0;  // auxiliary objective at the minimizing threshold
  double xi = 0.0;
  bool constraint_active = false;
};

// Auxiliary problem at parameter theta: minimize
//   E[(Y_prev - theta) L] + E[L^2]/2   subject to  error <= tau,
// whose minimizer is xi0 = max(0, theta - 1/lambda - mu) when feasible, else
// the credibility threshold. The optimal average age is the root of value(theta).
DinkelbachEval dinkelbach_p(const SystemConfig& cfg, double tau, double theta);

// Average-age minimization under the credibility bound tau, by bisection on
// theta until |p(theta)| <= 1e-12*(1+theta) or the bracket is below 1e-12.
SingleSolution solve_single(const SystemConfig& cfg, double tau);

// Weighted form: minimize aoi(xi) + ((1-beta)/beta) * err(xi) over xi >= 0 by
// expanding grid + golden-section line search. beta is read from the process
// spec; beta outside (0, 1] is rejected (at beta = 0 the infimum err -> 0
// requires xi -> infinity and is not attained).
SingleSolution solve_weighted(const SystemConfig& cfg);

}  // namespace aoicred
