#include "aoicred/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "aoicred/multi_policies.hpp"
#include "aoicred/single_solver.hpp"
#include "aoicred/version.hpp"

namespace aoicred {

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

json spec_to_json(const SweepSpec& spec) {
  json j;
  j["kind"] = spec.kind;
  j["betas"] = spec.betas;
  j["alphas"] = spec.alphas;
  json procs = json::array();
  for (const auto& p : spec.base.processes)
    procs.push_back({{"lambda", p.lambda},
                     {"alpha", p.recovery.alpha},
                     {"beta", p.beta}});
  j["processes"] = procs;
  j["service"] = {{"kind", "exponential"}, {"mean", spec.base.service.mean}};
  if (std::isfinite(spec.base.credibility_bound))
    j["credibility_bound"] = spec.base.credibility_bound;
  j["budget"] = {{"cycles", spec.budget.cycles},
                 {"seed", spec.budget.seed},
                 {"replications", spec.budget.replications},
                 {"threads", spec.budget.threads}};
  j["xi_max"] = spec.xi_max;
  j["grid_points"] = spec.grid_points;
  j["m_max"] = spec.m_max;
  j["service_parameter_is_rate"] = spec.service_parameter_is_rate;
  return j;
}

SweepResult write_out(const SweepSpec& spec, const std::string& name,
                      const std::string& header,
                      const std::vector<std::string>& rows) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(spec.out_dir, ec);
  if (ec) throw io_error("cannot create output directory " + spec.out_dir);

  SweepResult res;
  res.header = header;
  res.rows = rows;
  res.csv_path = (fs::path(spec.out_dir) / (name + ".csv")).string();
  res.manifest_path =
      (fs::path(spec.out_dir) / (name + ".manifest.json")).string();

  std::ofstream csv(res.csv_path, std::ios::binary);
  if (!csv) throw io_error("cannot open " + res.csv_path);
  csv << header << '\n';
  for (const auto& r : rows) csv << r << '\n';
  if (!csv.flush()) throw io_error("write failed: " + res.csv_path);

  json mj;
  json sj = spec_to_json(spec);
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                (unsigned long long)fnv1a(sj.dump()));
  mj["experiment"] = name;
  mj["version"] = kVersion;
  mj["master_seed"] = spec.budget.seed;
  mj["config_hash"] = hash;
  mj["config"] = sj;
  mj["rows"] = rows.size();
  mj["csv"] = name + ".csv";
  std::ofstream mf(res.manifest_path, std::ios::binary);
  if (!mf) throw io_error("cannot open " + res.manifest_path);
  mf << mj.dump(2) << '\n';
  if (!mf.flush()) throw io_error("write failed: " + res.manifest_path);
  return res;
}

// per-point seeds: sweep points are independent jobs, each with its own
// derived stream; candidates inside a point share that stream for pairing
std::uint64_t point_seed(std::uint64_t master, std::uint64_t index) {
  return derive_seed(master, index);
}

}  // namespace

void SweepSpec::validate() const {
  base.validate();
  if (betas.empty() || alphas.empty())
    throw config_error("sweep grids must be non-empty");
  for (double b : betas)
    if (!(b > 0.0 && b <= 1.0))
      throw config_error("sweep beta values must lie in (0,1]");
  for (double a : alphas)
    if (!(a >= 0.0)) throw config_error("sweep alpha values must be nonnegative");
  if (!(xi_max > 0.0) || grid_points < 2 || m_max < 1)
    throw config_error("bad sweep search settings");
}

SweepSpec fig3_spec() {
  SweepSpec s;
  s.kind = "fig3";
  for (int i = 1; i <= 25; ++i)
    s.betas.push_back(std::pow(10.0, -2.0 + 2.0 * double(i) / 25.0));
  s.alphas = {0.5, 1.0, 2.0};
  ProcessSpec p;
  p.lambda = 9.0;
  p.recovery = RecoveryFunction::exponential_decay(1.0);
  p.beta = 1.0;
  s.base.processes = {p};
  s.base.service = ServiceDistribution::exponential(1.0);
  return s;
}

SweepSpec fig4_spec(bool service_parameter_is_rate) {
  SweepSpec s;
  s.kind = "fig4";
  s.betas = {0.1, 0.3, 0.5, 0.7, 0.9};
  s.alphas = {0.5, 5.0, 50.0};
  ProcessSpec p1, p2;
  p1.lambda = p2.lambda = 6.0;
  p1.recovery = RecoveryFunction::exponential_decay(0.5);  // swept
  p2.recovery = RecoveryFunction::exponential_decay(50.0);
  p1.beta = p2.beta = 0.5;  // swept
  s.base.processes = {p1, p2};
  double scale = 1.5;
  s.base.service = ServiceDistribution::exponential(
      service_parameter_is_rate ? 1.0 / scale : scale);
  s.service_parameter_is_rate = service_parameter_is_rate;
  s.budget.cycles = 20000;
  s.xi_max = 10.0;
  s.grid_points = 40;
  s.m_max = 8;
  return s;
}

SweepSpec fig5_spec(bool service_parameter_is_rate) {
  SweepSpec s;
  s.kind = "fig5";
  s.betas = {0.5};
  s.alphas = {0.1, 0.3, 0.5, 0.6, 0.7, 0.8, 0.9};
  ProcessSpec p1, p2;
  p1.lambda = p2.lambda = 90.0;
  p1.recovery = RecoveryFunction::exponential_decay(0.5);  // swept
  p2.recovery = RecoveryFunction::exponential_decay(0.5);
  p1.beta = p2.beta = 0.5;
  s.base.processes = {p1, p2};
  double scale = 50.0;
  s.base.service = ServiceDistribution::exponential(
      service_parameter_is_rate ? 1.0 / scale : scale);
  s.service_parameter_is_rate = service_parameter_is_rate;
  s.budget.cycles = 20000;
  s.m_max = 24;
  return s;
}

SweepResult run_fig3(const SweepSpec& spec) {
  spec.validate();
  if (spec.kind != "fig3" && spec.kind != "custom")
    throw config_error("run_fig3 expects a fig3 or custom sweep");
  if (spec.base.K() != 1)
    throw config_error("single-process sweep needs K = 1");

  std::vector<std::string> rows;
  for (double alpha : spec.alphas) {
    SystemConfig cfg = spec.base;
    cfg.processes.front().recovery = RecoveryFunction::exponential_decay(alpha);

    cfg.processes.front().beta = 1.0;
    double aoi0 = aoi_of_threshold(cfg, 0.0);
    double err0 = error_of_threshold(cfg, 0.0);
    rows.push_back("baseline,0," + fmt(alpha) + ",0," + fmt(aoi0) + "," +
                   fmt(err0) + "," + fmt(err0));

    for (double beta : spec.betas) {
      cfg.processes.front().beta = beta;
      SingleSolution sol = solve_weighted(cfg);
      rows.push_back("optimal," + fmt(beta) + "," + fmt(alpha) + "," +
                     fmt(sol.xi_star) + "," + fmt(sol.aoi) + "," +
                     fmt(sol.err) + "," + fmt(sol.objective));
    }
  }
  return write_out(spec, spec.kind == "custom" ? "custom" : "fig3",
                   "kind,beta,alpha,xi,aoi,err,objective", rows);
}

SweepResult run_fig4(const SweepSpec& spec) {
  spec.validate();
  if (spec.kind != "fig4") throw config_error("run_fig4 expects a fig4 sweep");
  if (spec.base.K() != 2) throw config_error("fig4 sweep needs K = 2");

  std::vector<std::string> rows;
  std::uint64_t point = 0;
  for (double beta : spec.betas)
    for (double alpha1 : spec.alphas) {
      SystemConfig cfg = spec.base;
      cfg.processes[0].recovery = RecoveryFunction::exponential_decay(alpha1);
      for (auto& p : cfg.processes) p.beta = beta;

      SimBudget budget = spec.budget;
      budget.seed = point_seed(spec.budget.seed, point++);

      auto [rr, rr_rep] = rr_optimize(cfg, spec.xi_max, spec.grid_points, budget);
      auto [as, as_rep] = as_optimize(cfg, spec.m_max, budget);

      auto sums = [](const MetricReport& rep) {
        double sa = 0.0, se = 0.0;
        for (const auto& pm : rep.per_process) {
          sa += pm.aoi;
          se += pm.err;
        }
        return std::pair<double, double>{sa, se};
      };
      auto [rr_sa, rr_se] = sums(rr_rep);
      auto [as_sa, as_se] = sums(as_rep);
      rows.push_back(fmt(beta) + "," + fmt(alpha1) + ",RR," + fmt(rr.xi) +
                     ",1,1," + fmt(rr_sa) + "," + fmt(rr_se) + "," +
                     fmt(rr_rep.objective) + "," + fmt(rr_rep.objective_ci));
      rows.push_back(fmt(beta) + "," + fmt(alpha1) + ",AS,0," +
                     std::to_string(as.m[0]) + "," + std::to_string(as.m[1]) +
                     "," + fmt(as_sa) + "," + fmt(as_se) + "," +
                     fmt(as_rep.objective) + "," + fmt(as_rep.objective_ci));
    }
  return write_out(spec, "fig4",
                   "beta,alpha1,policy,xi,m1,m2,sum_aoi,sum_err,objective,"
                   "objective_ci",
                   rows);
}

SweepResult run_fig5(const SweepSpec& spec) {
  spec.validate();
  if (spec.kind != "fig5") throw config_error("run_fig5 expects a fig5 sweep");
  if (spec.base.K() != 2) throw config_error("fig5 sweep needs K = 2");

  std::vector<std::string> rows;
  std::uint64_t point = 0;
  for (double alpha1 : spec.alphas) {
    SystemConfig cfg = spec.base;
    cfg.processes[0].recovery = RecoveryFunction::exponential_decay(alpha1);

    SimBudget budget = spec.budget;
    budget.seed = point_seed(spec.budget.seed, point++);

    auto [as, rep] = as_optimize(cfg, spec.m_max, budget);
    double sa = 0.0, se = 0.0;
    for (const auto& pm : rep.per_process) {
      sa += pm.aoi;
      se += pm.err;
    }
    rows.push_back(fmt(alpha1) + "," + std::to_string(as.m[0]) + "," +
                   std::to_string(as.m[1]) + "," + fmt(sa) + "," + fmt(se) +
                   "," + fmt(rep.objective));
  }
  return write_out(spec, "fig5", "alpha1,m1,m2,sum_aoi,sum_err,objective", rows);
}

}  // namespace aoicred
