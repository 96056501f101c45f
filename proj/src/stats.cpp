#include "aoicred/stats.hpp"

#include <cmath>

#include "aoicred/errors.hpp"

namespace aoicred {

int batch_count(std::uint64_t n) {
  if (n < 16) return int(n);
  std::uint64_t b = n / 64;
  if (b < 16) b = 16;
  if (b > 1024) b = 1024;
  return int(b);
}

EstimateSE batch_ratio(const std::vector<double>& num,
                       const std::vector<double>& den) {
  if (num.size() != den.size() || num.empty())
    throw numerical_error("batch_ratio: bad batch lists");
  double N = 0.0, D = 0.0;
  for (double v : num) N += v;
  for (double v : den) D += v;
  if (D == 0.0) throw numerical_error("batch_ratio: zero denominator");
  EstimateSE out;
  out.value = N / D;
  std::size_t B = num.size();
  if (B < 2) return out;  // se stays 0: not estimable from one batch
  double s2 = 0.0;
  for (std::size_t b = 0; b < B; ++b) {
    double r = num[b] - out.value * den[b];
    s2 += r * r;
  }
  out.se = std::sqrt(s2 * double(B) / double(B - 1)) / D;
  return out;
}

double objective_se(const std::vector<std::vector<Batch>>& batches,
                    const std::vector<double>& beta) {
  if (batches.empty() || batches.size() != beta.size())
    throw numerical_error("objective_se: shape mismatch");
  std::size_t B = batches.front().size();
  if (B < 2) return 0.0;

  std::size_t K = batches.size();
  std::vector<double> R(K), M(K), D(K), C(K);
  for (std::size_t k = 0; k < K; ++k) {
    if (batches[k].size() != B)
      throw numerical_error("objective_se: unequal batch layouts");
    double num = 0.0, den = 0.0, rb = 0.0, cnt = 0.0;
    for (const auto& b : batches[k]) {
      num += b.num;
      den += b.den;
      rb += b.rb;
      cnt += double(b.cnt);
    }
    if (den == 0.0 || cnt == 0.0)
      throw numerical_error("objective_se: empty process stream");
    R[k] = num / den;
    M[k] = rb / cnt;
    D[k] = den;
    C[k] = cnt;
  }

  double s2 = 0.0;
  for (std::size_t b = 0; b < B; ++b) {
    double psi = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      const Batch& x = batches[k][b];
      psi += beta[k] * (x.num - R[k] * x.den) / D[k];
      psi += (1.0 - beta[k]) * (x.rb - M[k] * double(x.cnt)) / C[k];
    }
    s2 += psi * psi;
  }
  return std::sqrt(s2 * double(B) / double(B - 1));
}

}  // namespace aoicred
