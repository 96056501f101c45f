#include "aoicred/model.hpp"

#include <cmath>

namespace aoicred {

ServiceDistribution ServiceDistribution::exponential(double mean) {
  if (!(mean > 0.0)) throw config_error("service mean must be positive");
  ServiceDistribution d;
  d.kind = ServiceKind::Exponential;
  d.mean = mean;
  d.second_moment = 2.0 * mean * mean;
  return d;
}

double ServiceDistribution::pdf(double y) const {
  if (y < 0.0) return 0.0;
  return std::exp(-y / mean) / mean;
}

double ServiceDistribution::cdf(double y) const {
  if (y <= 0.0) return 0.0;
  return -std::expm1(-y / mean);
}

double ServiceDistribution::sample(RngStream& rng) const {
  return rng.exponential(mean);
}

void ServiceDistribution::validate() const {
  if (!(mean > 0.0)) throw config_error("service mean must be positive");
  if (!(second_moment >= mean * mean))
    throw config_error("service second moment below mean^2");
}

RecoveryFunction RecoveryFunction::exponential_decay(double alpha) {
  if (!(alpha >= 0.0)) throw config_error("recovery rate must be nonnegative");
  RecoveryFunction rf;
  rf.kind = RecoveryKind::ExponentialDecay;
  rf.alpha = alpha;
  return rf;
}

double RecoveryFunction::operator()(double x) const {
  return std::exp(-alpha * x);
}

double RecoveryFunction::deriv(double x) const {
  return -alpha * std::exp(-alpha * x);
}

void RecoveryFunction::validate() const {
  if (!(alpha >= 0.0)) throw config_error("recovery rate must be nonnegative");
}

void ProcessSpec::validate() const {
  if (!(lambda > 0.0)) throw config_error("sampling rate lambda must be positive");
  if (!(beta >= 0.0 && beta <= 1.0)) throw config_error("beta must lie in [0,1]");
  recovery.validate();
}

bool SystemConfig::equal_beta() const {
  for (const auto& p : processes)
    if (p.beta != processes.front().beta) return false;
  return true;
}

void SystemConfig::validate() const {
  if (processes.empty()) throw config_error("at least one process required");
  for (const auto& p : processes) p.validate();
  service.validate();
  if (!(credibility_bound >= 0.0))
    throw config_error("credibility bound must be nonnegative");
}

double h_eval(const RecoveryFunction& rf, double x) {
  if (x < 0.0) throw numerical_error("h argument must be nonnegative");
  return rf(x);
}

double H_gamma(const RecoveryFunction& rf, double gamma, double x) {
  if (gamma < 0.0) throw numerical_error("gamma must be nonnegative");
  return x + gamma * rf.deriv(x);
}

double H_gamma_inverse(const RecoveryFunction& rf, double gamma, double target) {
  if (gamma < 0.0) throw numerical_error("gamma must be nonnegative");
  if (gamma == 0.0) return target > 0.0 ? target : 0.0;
  if (target <= H_gamma(rf, gamma, 0.0)) return 0.0;

  // grow the bracket until H(hi) >= target, then bisect
  double lo = 0.0, hi = 1.0;
  while (H_gamma(rf, gamma, hi) < target) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw numerical_error("H_gamma_inverse bracket overflow");
  }
  while (hi - lo > 1e-10) {
    double mid = 0.5 * (lo + hi);
    (H_gamma(rf, gamma, mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace aoicred
