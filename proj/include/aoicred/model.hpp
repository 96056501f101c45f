#pragma once

#include <limits>
#include <vector>

#include "aoicred/errors.hpp"
#include "aoicred/rng.hpp"

namespace aoicred {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Channel busy-time law Y. Only the exponential family ships; the interface
// (moments + pdf/cdf + sampler) is what the rest of the code depends on, so
// other nonnegative laws can be added without touching the solvers.
enum class ServiceKind { Exponential };

struct ServiceDistribution {
  ServiceKind kind = ServiceKind::Exponential;
  double mean = 1.0;           // mu_Y
  double second_moment = 2.0;  // mu_{Y^2}

  static ServiceDistribution exponential(double mean);

  double pdf(double y) const;
  double cdf(double y) const;
  double sample(RngStream& rng) const;
  void validate() const;
};

// Error-variance recovery h(x): monotone non-increasing, convex on [0, inf).
// The shipped kind is h(x) = exp(-alpha x).
enum class RecoveryKind { ExponentialDecay };

struct RecoveryFunction {
  RecoveryKind kind = RecoveryKind::ExponentialDecay;
  double alpha = 1.0;  // decay rate, >= 0

  static RecoveryFunction exponential_decay(double alpha);

  double operator()(double x) const;  // h(x)
  double deriv(double x) const;       // h'(x)
  void validate() const;
};

struct ProcessSpec {
  double lambda = 1.0;  // Poisson sampling rate
  RecoveryFunction recovery;
  double beta = 1.0;  // objective weight in [0,1]

  void validate() const;
};

struct SystemConfig {
  std::vector<ProcessSpec> processes;  // K >= 1
  ServiceDistribution service;         // shared channel
  double credibility_bound = kInf;     // tau; +inf disables the constraint

  int K() const { return int(processes.size()); }
  bool equal_beta() const;
  void validate() const;
};

struct ThresholdPolicy {
  double xi = 0.0;  // wait threshold; 0 reproduces the zero-wait policy
};

// h(x) with argument validation.
double h_eval(const RecoveryFunction& rf, double x);

// H_gamma(x) = x + gamma * h'(x); strictly increasing in x because h is convex.
double H_gamma(const RecoveryFunction& rf, double gamma, double x);

// Unique x >= 0 with H_gamma(x) = target, or 0 when target < H_gamma(0).
// Bracketed bisection to 1e-10 absolute.
double H_gamma_inverse(const RecoveryFunction& rf, double gamma, double target);

}  // namespace aoicred
