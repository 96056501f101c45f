// Command-line front end: solve, simulate, optimize, sweep. Outputs JSON for
// solver results and CSV for metric tables; every artifact carries the seed
// and settings needed to reproduce it.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "aoicred/config_io.hpp"
#include "aoicred/experiments.hpp"
#include "aoicred/multi_policies.hpp"
#include "aoicred/simulator.hpp"
#include "aoicred/single_solver.hpp"
#include "aoicred/version.hpp"

using nlohmann::json;
using namespace aoicred;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_path;
};

RunConfig load_or_default(const CommonOpts& c) {
  if (!c.config_path.empty()) return load_run_config(c.config_path);
  return parse_run_config(json::object());
}

void emit(const CommonOpts& c, const std::string& text) {
  if (c.out_path.empty() || c.out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(c.out_path, std::ios::binary);
  if (!out) throw io_error("cannot open output file " + c.out_path);
  out << text;
  if (!out.flush()) throw io_error("write failed: " + c.out_path);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string default_out_dir() {
  const char* env = std::getenv("AOICRED_OUT_DIR");
  return env && *env ? env : ".";
}

json solution_to_json(const SingleSolution& sol, const char* form) {
  json j;
  j["form"] = form;
  j["theta_star"] = sol.theta_star;
  j["xi_star"] = sol.xi_star;
  j["gamma_active"] = sol.gamma_active;
  j["aoi"] = sol.aoi;
  j["err"] = sol.err;
  j["objective"] = sol.objective;
  return j;
}

json report_to_json(const MetricReport& rep) {
  json j;
  j["objective"] = rep.objective;
  j["objective_ci95"] = rep.objective_ci;
  j["mode"] = rep.simulated ? "simulated" : "analytic";
  j["cycles"] = rep.cycles;
  j["seed"] = rep.seed;
  json per = json::array();
  for (const auto& pm : rep.per_process)
    per.push_back({{"aoi", pm.aoi},
                   {"aoi_ci95", pm.aoi_ci},
                   {"err", pm.err},
                   {"err_ci95", pm.err_ci},
                   {"err_raw", pm.err_raw},
                   {"err_raw_ci95", pm.err_raw_ci}});
  j["per_process"] = per;
  return j;
}

void metric_rows(std::ostringstream& os, const std::string& quantity,
                 int process, double est, double se, std::uint64_t count,
                 std::uint64_t seed, const std::string& kind) {
  os << quantity << ',' << process << ',' << fmt(est) << ',' << fmt(se) << ','
     << fmt(1.96 * se) << ',' << count << ',' << seed << ',' << kind << '\n';
}

int run_solve_single(const CommonOpts& c, double lambda, double mu,
                     double alpha, double beta, double tau, int curve_points,
                     double curve_max) {
  RunConfig rc = load_or_default(c);
  SystemConfig cfg = rc.system;
  if (cfg.K() != 1)
    throw config_error("solve-single needs a single-process config");
  if (lambda > 0.0) cfg.processes[0].lambda = lambda;
  if (mu > 0.0) cfg.service = ServiceDistribution::exponential(mu);
  if (alpha >= 0.0)
    cfg.processes[0].recovery = RecoveryFunction::exponential_decay(alpha);
  if (beta >= 0.0) cfg.processes[0].beta = beta;
  if (tau >= 0.0) cfg.credibility_bound = tau;
  cfg.validate();

  bool constrained = std::isfinite(cfg.credibility_bound);
  SingleSolution sol = constrained
                           ? solve_single(cfg, cfg.credibility_bound)
                           : solve_weighted(cfg);
  json j = solution_to_json(sol, constrained ? "constrained" : "weighted");
  j["lambda"] = cfg.processes[0].lambda;
  j["mu"] = cfg.service.mean;
  j["alpha"] = cfg.processes[0].recovery.alpha;
  j["beta"] = cfg.processes[0].beta;
  if (constrained) j["tau"] = cfg.credibility_bound;

  if (curve_points > 0) {
    double b = cfg.processes[0].beta;
    double w = b > 0.0 ? (1.0 - b) / b : 0.0;
    json curve = json::array();
    for (int i = 0; i <= curve_points; ++i) {
      double xi = curve_max * double(i) / double(curve_points);
      double aoi = aoi_of_threshold(cfg, xi);
      double err = error_of_threshold(cfg, xi);
      curve.push_back({{"xi", xi},
                       {"aoi", aoi},
                       {"err", err},
                       {"objective", constrained ? aoi : aoi + w * err}});
    }
    j["curve"] = curve;
  }
  emit(c, j.dump(2) + "\n");
  return 0;
}

int run_simulate(const CommonOpts& c, const std::string& policy, double xi,
                 std::vector<int> m, std::uint64_t cycles, std::uint64_t seed,
                 int replications, int threads, const std::string& noise,
                 const std::string& trace_path, int wait_slot) {
  RunConfig rc = load_or_default(c);
  SystemConfig cfg = rc.system;
  SimBudget budget = rc.budget;
  if (cycles > 0) budget.cycles = cycles;
  if (seed > 0) budget.seed = seed;
  if (replications > 0) budget.replications = replications;
  if (threads > 0) budget.threads = threads;
  if (!noise.empty()) budget.noise = parse_noise(noise);

  std::ofstream trace_file;
  std::ostream* trace = nullptr;
  if (!trace_path.empty()) {
    trace_file.open(trace_path, std::ios::binary);
    if (!trace_file) throw io_error("cannot open trace file " + trace_path);
    trace = &trace_file;
  }

  std::ostringstream os;
  os << "quantity,process,estimate,std_error,ci95_half,count,seed,kind\n";
  if (policy == "single") {
    if (cfg.K() != 1)
      throw config_error("policy single needs a single-process config");
    SingleSimResult r = simulate_single(cfg, ThresholdPolicy{xi}, budget, trace);
    metric_rows(os, "aoi", 1, r.aoi.value, r.aoi.std_error, r.aoi.count,
                r.aoi.seed, r.aoi.kind);
    metric_rows(os, "err", 1, r.err.value, r.err.std_error, r.err.count,
                r.err.seed, r.err.kind);
    metric_rows(os, "err", 1, r.err_raw.value, r.err_raw.std_error,
                r.err_raw.count, r.err_raw.seed, r.err_raw.kind);
  } else if (policy == "rr" || policy == "as") {
    MetricReport rep;
    std::vector<std::uint64_t> counts;
    if (policy == "rr") {
      rep = simulate_rr(cfg, RRPolicy{xi}, budget, trace, wait_slot);
      counts.assign(std::size_t(cfg.K()), rep.cycles);
    } else {
      if (m.empty()) m.assign(std::size_t(cfg.K()), 1);
      rep = simulate_as(cfg, ASSchedule{m}, budget, trace);
      for (int mk : m) counts.push_back(rep.cycles * std::uint64_t(mk));
    }
    for (int k = 0; k < cfg.K(); ++k) {
      const auto& pm = rep.per_process[std::size_t(k)];
      metric_rows(os, "aoi", k + 1, pm.aoi, pm.aoi_ci / 1.96,
                  counts[std::size_t(k)], rep.seed, "raw");
      metric_rows(os, "err", k + 1, pm.err, pm.err_ci / 1.96,
                  counts[std::size_t(k)], rep.seed, "rao-blackwell");
      metric_rows(os, "err", k + 1, pm.err_raw, pm.err_raw_ci / 1.96,
                  counts[std::size_t(k)], rep.seed, "raw");
    }
    metric_rows(os, "objective", 0, rep.objective, rep.objective_ci / 1.96,
                rep.cycles, rep.seed, "weighted");
  } else {
    throw config_error("unknown policy \"" + policy + "\"");
  }
  if (trace && !trace_file.flush())
    throw io_error("write failed: " + trace_path);
  emit(c, os.str());
  return 0;
}

int run_optimize_rr(const CommonOpts& c, double xi_max, int grid_points,
                    std::uint64_t cycles, std::uint64_t seed, int threads) {
  RunConfig rc = load_or_default(c);
  SystemConfig cfg = rc.system;
  SimBudget budget = rc.budget;
  if (cycles > 0) budget.cycles = cycles;
  if (seed > 0) budget.seed = seed;
  if (threads > 0) budget.threads = threads;
  if (xi_max <= 0.0) xi_max = rc.xi_max > 0.0 ? rc.xi_max : 10.0;
  if (grid_points <= 0) grid_points = rc.grid_points > 0 ? rc.grid_points : 40;

  auto [policy, rep] = rr_optimize(cfg, xi_max, grid_points, budget);
  json j = report_to_json(rep);
  j["xi_star"] = policy.xi;
  emit(c, j.dump(2) + "\n");
  return 0;
}

int run_optimize_as(const CommonOpts& c, int m_max, std::uint64_t cycles,
                    std::uint64_t seed, int threads) {
  RunConfig rc = load_or_default(c);
  SystemConfig cfg = rc.system;
  SimBudget budget = rc.budget;
  if (cycles > 0) budget.cycles = cycles;
  if (seed > 0) budget.seed = seed;
  if (threads > 0) budget.threads = threads;
  if (m_max <= 0) m_max = rc.m_max > 0 ? rc.m_max : 8;

  auto [sched, rep] = as_optimize(cfg, m_max, budget);
  json j = report_to_json(rep);
  j["m"] = sched.m;
  emit(c, j.dump(2) + "\n");
  return 0;
}

int run_experiment(const CommonOpts& c, int fig, const std::string& out_dir,
                   std::uint64_t cycles, std::uint64_t seed, int threads,
                   bool service_rate, int m_max, double xi_max,
                   int grid_points) {
  RunConfig rc = load_or_default(c);
  bool rate = service_rate || rc.service_is_rate;
  SweepSpec spec = fig == 3   ? fig3_spec()
                   : fig == 4 ? fig4_spec(rate)
                              : fig5_spec(rate);
  if (rc.system_given) {
    spec.base = rc.system;
    spec.service_parameter_is_rate = rc.service_is_rate;
  }
  if (rc.budget_given) spec.budget = rc.budget;
  if (!rc.sweep_betas.empty()) spec.betas = rc.sweep_betas;
  if (!rc.sweep_alphas.empty()) spec.alphas = rc.sweep_alphas;
  if (rc.xi_max > 0.0) spec.xi_max = rc.xi_max;
  if (rc.grid_points > 0) spec.grid_points = rc.grid_points;
  if (rc.m_max > 0) spec.m_max = rc.m_max;

  if (cycles > 0) spec.budget.cycles = cycles;
  if (seed > 0) spec.budget.seed = seed;
  if (threads > 0) spec.budget.threads = threads;
  if (m_max > 0) spec.m_max = m_max;
  if (xi_max > 0.0) spec.xi_max = xi_max;
  if (grid_points > 0) spec.grid_points = grid_points;

  if (!out_dir.empty())
    spec.out_dir = out_dir;
  else if (!rc.out_dir.empty())
    spec.out_dir = rc.out_dir;
  else
    spec.out_dir = default_out_dir();

  SweepResult res = fig == 3   ? run_fig3(spec)
                    : fig == 4 ? run_fig4(spec)
                               : run_fig5(spec);
  std::cout << res.csv_path << '\n' << res.manifest_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal wait thresholds and schedules trading freshness "
               "against time-stamp credibility, with a seeded Monte Carlo "
               "verifier"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOpts copts;
  // solve-single
  auto* sc_solve = app.add_subcommand(
      "solve-single", "Optimal single-process wait threshold");
  double o_lambda = -1.0, o_mu = -1.0, o_alpha = -1.0, o_beta = -1.0,
         o_tau = -1.0, o_curve_max = 10.0;
  int o_curve = 0;
  sc_solve->add_option("--config", copts.config_path, "JSON config path");
  sc_solve->add_option("--out", copts.out_path, "output file (default stdout)");
  sc_solve->add_option("--lambda", o_lambda, "sampling rate");
  sc_solve->add_option("--mu", o_mu, "mean service time");
  sc_solve->add_option("--alpha", o_alpha, "error-variance recovery rate");
  sc_solve->add_option("--beta", o_beta, "age weight in (0,1]");
  sc_solve->add_option("--tau", o_tau,
                       "credibility bound (switches to the constrained form)");
  sc_solve->add_option("--emit-curve", o_curve,
                       "emit a diagnostic threshold curve with this many cells");
  sc_solve->add_option("--curve-max", o_curve_max, "curve range upper end");

  // simulate
  auto* sc_sim = app.add_subcommand("simulate", "Monte Carlo metric estimates");
  std::string o_policy = "single", o_noise, o_trace;
  double o_xi = 0.0;
  std::vector<int> o_m;
  std::uint64_t o_cycles = 0, o_seed = 0;
  int o_reps = 0, o_threads = 0, o_wait_slot = 0;
  sc_sim->add_option("--config", copts.config_path, "JSON config path");
  sc_sim->add_option("--out", copts.out_path, "output file (default stdout)");
  sc_sim->add_option("--policy", o_policy, "single | rr | as");
  sc_sim->add_option("--xi", o_xi, "wait threshold (single/rr)")
      ->check(CLI::NonNegativeNumber);
  sc_sim->add_option("--m", o_m, "trial counts, comma separated (as)")
      ->delimiter(',');
  sc_sim->add_option("--cycles,--epochs", o_cycles, "recorded cycles")
      ->check(CLI::PositiveNumber);
  sc_sim->add_option("--seed", o_seed, "master seed");
  sc_sim->add_option("--replications", o_reps, "independent replications");
  sc_sim->add_option("--threads", o_threads, "worker threads");
  sc_sim->add_option("--noise", o_noise, "gaussian | uniform | none");
  sc_sim->add_option("--trace", o_trace, "write a per-delivery trace CSV here");
  sc_sim->add_option("--wait-slot", o_wait_slot, "slot carrying the rr wait");

  // optimize-rr
  auto* sc_rr = app.add_subcommand("optimize-rr",
                                   "Line-search the round-robin wait threshold");
  double o_xi_max = 0.0;
  int o_grid = 0;
  sc_rr->add_option("--config", copts.config_path, "JSON config path");
  sc_rr->add_option("--out", copts.out_path, "output file (default stdout)");
  sc_rr->add_option("--xi-max", o_xi_max, "search range upper end");
  sc_rr->add_option("--grid-points", o_grid, "coarse grid intervals");
  sc_rr->add_option("--cycles", o_cycles, "cycles per evaluation")
      ->check(CLI::PositiveNumber);
  sc_rr->add_option("--seed", o_seed, "master seed");
  sc_rr->add_option("--threads", o_threads, "worker threads");

  // optimize-as
  auto* sc_as = app.add_subcommand("optimize-as",
                                   "Search asymmetric trial-count schedules");
  int o_m_max = 0;
  sc_as->add_option("--config", copts.config_path, "JSON config path");
  sc_as->add_option("--out", copts.out_path, "output file (default stdout)");
  sc_as->add_option("--m-max", o_m_max, "largest trial count per process");
  sc_as->add_option("--cycles", o_cycles, "cycles per evaluation")
      ->check(CLI::PositiveNumber);
  sc_as->add_option("--seed", o_seed, "master seed");
  sc_as->add_option("--threads", o_threads, "worker threads");

  // experiment
  auto* sc_exp = app.add_subcommand("experiment", "Run a predefined sweep");
  int o_fig = 0;
  std::string o_out_dir;
  bool o_rate = false;
  sc_exp->add_option("--fig", o_fig, "3, 4, or 5")
      ->required()
      ->check(CLI::Range(3, 5));
  sc_exp->add_option("--config", copts.config_path, "JSON config path");
  sc_exp->add_option("--out-dir", o_out_dir, "output directory");
  sc_exp->add_option("--cycles", o_cycles, "cycles per evaluation")
      ->check(CLI::PositiveNumber);
  sc_exp->add_option("--seed", o_seed, "master seed");
  sc_exp->add_option("--threads", o_threads, "worker threads");
  sc_exp->add_flag("--service-rate", o_rate,
                   "read the default service scale as a rate, not a mean");
  sc_exp->add_option("--m-max", o_m_max, "largest trial count per process");
  sc_exp->add_option("--xi-max", o_xi_max, "wait search range");
  sc_exp->add_option("--grid-points", o_grid, "wait search grid intervals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sc_solve->parsed())
      return run_solve_single(copts, o_lambda, o_mu, o_alpha, o_beta, o_tau,
                              o_curve, o_curve_max);
    if (sc_sim->parsed())
      return run_simulate(copts, o_policy, o_xi, o_m, o_cycles, o_seed, o_reps,
                          o_threads, o_noise, o_trace, o_wait_slot);
    if (sc_rr->parsed())
      return run_optimize_rr(copts, o_xi_max, o_grid, o_cycles, o_seed,
                             o_threads);
    if (sc_as->parsed())
      return run_optimize_as(copts, o_m_max, o_cycles, o_seed, o_threads);
    if (sc_exp->parsed())
      return run_experiment(copts, o_fig, o_out_dir, o_cycles, o_seed,
                            o_threads, o_rate, o_m_max, o_xi_max, o_grid);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const infeasible_error& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 3;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 4;
  } catch (const io_error& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return 5;
  }
  return 0;
}
