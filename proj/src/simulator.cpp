#include "aoicred/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>
#include <vector>

#include "aoicred/stats.hpp"

namespace aoicred {

namespace {

struct ProcStreams {
  RngStream x, y, z;
};

struct ProcState {
  double s_prev = 0.0;        // stamp of the previous sample
  double d_prev = 0.0;        // previous delivery instant
  double y_prev = 0.0;        // previous service time
  double e_prev = 0.0;        // previous stamp error S - S'
  double pending_wait = 0.0;  // waits accumulated inside the open epoch
  std::uint64_t idx = 0;      // recorded deliveries so far
};

double draw_noise(RngStream& z, NoiseKind kind, double var) {
  switch (kind) {
    case NoiseKind::Gaussian:
      return std::sqrt(var) * z.normal();
    case NoiseKind::Uniform:
      return std::sqrt(3.0 * var) * (2.0 * z.uniform() - 1.0);
    case NoiseKind::None:
      return 0.0;
  }
  return 0.0;
}

struct RepOutput {
  std::vector<std::vector<Batch>> batches;  // [process][batch]
};

// The one machine behind all three entry points. Processes take their slots
// in order each cycle; process k runs m[k] back-to-back trials; when has_wait
// is set (all m[k] == 1), a single threshold wait precedes slot wait_slot,
// computed from the K most recent service times. Absolute-time bookkeeping
// makes epoch lengths and sampling gaps exact by construction.
void run_replication(const SystemConfig& cfg, const std::vector<int>& m,
                     double xi, int wait_slot, bool has_wait,
                     std::uint64_t cycles, std::uint64_t master_seed,
                     std::uint32_t rep, NoiseKind noise, RepOutput& out,
                     std::ostream* trace) {
  const int K = cfg.K();
  std::vector<ProcStreams> rng;
  rng.reserve(std::size_t(K));
  for (int k = 0; k < K; ++k) {
    auto seed_for = [&](StreamPurpose p) {
      return derive_seed(master_seed, stream_tag(rep, std::uint32_t(k), p));
    };
    rng.push_back(ProcStreams{RngStream(seed_for(StreamPurpose::InterArrival)),
                              RngStream(seed_for(StreamPurpose::Service)),
                              RngStream(seed_for(StreamPurpose::StampNoise))});
  }

  std::vector<ProcState> st(K);
  const int B = batch_count(cycles);
  out.batches.assign(std::size_t(K), std::vector<Batch>(std::size_t(B)));

  // Cycle 0 (unrecorded) lays the "previous" cycle on the timeline. Services
  // come from their stationary law, so recording can start immediately; the
  // seed errors use h(last service) as their variance, an arbitrary mean-zero
  // convention that only enters the first epoch's starting age.
  double t = 0.0;
  for (int k = 0; k < K; ++k) {
    ProcState& s = st[std::size_t(k)];
    ProcStreams& r = rng[std::size_t(k)];
    for (int j = 0; j < m[std::size_t(k)]; ++j) {
      t += r.x.exponential(1.0 / cfg.processes[std::size_t(k)].lambda);
      s.s_prev = t;
      double y = cfg.service.sample(r.y);
      t += y;
      s.y_prev = y;
    }
    s.d_prev = t;
    s.e_prev = draw_noise(r.z, noise,
                          cfg.processes[std::size_t(k)].recovery(s.y_prev));
  }

  char line[256];
  for (std::uint64_t i = 1; i <= cycles; ++i) {
    int b = int((i - 1) * std::uint64_t(B) / cycles);
    for (int k = 0; k < K; ++k) {
      if (has_wait && k == wait_slot) {
        double ysum = 0.0;
        for (int s = 0; s < K; ++s) ysum += st[std::size_t(s)].y_prev;
        double w = xi > ysum ? xi - ysum : 0.0;
        if (w > 0.0) {
          t += w;
          for (int s = 0; s < K; ++s) st[std::size_t(s)].pending_wait += w;
        }
      }
      const ProcessSpec& ps = cfg.processes[std::size_t(k)];
      ProcState& s = st[std::size_t(k)];
      ProcStreams& r = rng[std::size_t(k)];
      for (int j = 0; j < m[std::size_t(k)]; ++j) {
        double gap = t - s.s_prev;  // sensor slept since its last sample
        double x = r.x.exponential(1.0 / ps.lambda);
        t += x;
        double S = t;
        double y = cfg.service.sample(r.y);
        t += y;
        double D = t;
        double var = ps.recovery(gap);
        double e = draw_noise(r.z, noise, var);
        double L = D - s.d_prev;
        double start_age = s.y_prev + s.e_prev;

        Batch& acc = out.batches[std::size_t(k)][std::size_t(b)];
        acc.num += start_age * L + 0.5 * L * L;
        acc.den += L;
        acc.rb += var;
        acc.raw += e * e;
        acc.cnt += 1;

        s.idx += 1;
        if (trace) {
          std::snprintf(line, sizeof line,
                        "%d,%llu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                        k + 1, (unsigned long long)s.idx, S, S - e, D, y, x,
                        s.pending_wait, L, start_age);
          *trace << line;
        }
        s.s_prev = S;
        s.d_prev = D;
        s.y_prev = y;
        s.e_prev = e;
        s.pending_wait = 0.0;
      }
    }
  }
}

MetricReport run_all(const SystemConfig& cfg, const std::vector<int>& m,
                     double xi, int wait_slot, bool has_wait,
                     const SimBudget& budget, std::ostream* trace) {
  cfg.validate();
  if (budget.cycles == 0) throw config_error("cycle count must be positive");
  if (budget.replications < 1)
    throw config_error("replications must be at least 1");
  if (std::uint64_t(budget.replications) > budget.cycles)
    throw config_error("more replications than cycles");
  if (int(m.size()) != cfg.K()) throw config_error("trial counts do not match K");
  for (int mk : m)
    if (mk < 1) throw config_error("trial counts must be at least 1");
  if (xi < 0.0) throw config_error("wait threshold must be nonnegative");
  if (has_wait && (wait_slot < 0 || wait_slot >= cfg.K()))
    throw config_error("wait slot out of range");

  const int R = budget.replications;
  std::vector<std::uint64_t> per(std::size_t(R), budget.cycles / std::uint64_t(R));
  for (std::uint64_t r = 0; r < budget.cycles % std::uint64_t(R); ++r)
    per[std::size_t(r)] += 1;

  if (trace) *trace << trace_header() << '\n';

  std::vector<RepOutput> outs(R);
  int threads = budget.threads < 1 ? 1 : std::min(budget.threads, R);
  if (threads == 1) {
    for (int r = 0; r < R; ++r)
      run_replication(cfg, m, xi, wait_slot, has_wait, per[std::size_t(r)],
                      budget.seed, std::uint32_t(r), budget.noise,
                      outs[std::size_t(r)], r == 0 ? trace : nullptr);
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (;;) {
        int r = next.fetch_add(1);
        if (r >= R) return;
        run_replication(cfg, m, xi, wait_slot, has_wait, per[std::size_t(r)],
                        budget.seed, std::uint32_t(r), budget.noise,
                        outs[std::size_t(r)], r == 0 ? trace : nullptr);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // merge per-replication batch lists in replication order: the estimates are
  // independent of how many threads ran
  const int K = cfg.K();
  std::vector<std::vector<Batch>> merged(K);
  for (int r = 0; r < R; ++r)
    for (int k = 0; k < K; ++k) {
      auto& src = outs[std::size_t(r)].batches[std::size_t(k)];
      merged[std::size_t(k)].insert(merged[std::size_t(k)].end(), src.begin(),
                                    src.end());
    }

  MetricReport rep;
  rep.simulated = true;
  rep.cycles = budget.cycles;
  rep.seed = budget.seed;
  rep.per_process.resize(std::size_t(K));
  std::vector<double> betas(K);
  for (int k = 0; k < K; ++k) {
    betas[std::size_t(k)] = cfg.processes[std::size_t(k)].beta;
    const auto& bs = merged[std::size_t(k)];
    std::vector<double> num, den, rb, raw, cnt;
    num.reserve(bs.size());
    den.reserve(bs.size());
    rb.reserve(bs.size());
    raw.reserve(bs.size());
    cnt.reserve(bs.size());
    for (const Batch& x : bs) {
      num.push_back(x.num);
      den.push_back(x.den);
      rb.push_back(x.rb);
      raw.push_back(x.raw);
      cnt.push_back(double(x.cnt));
    }
    EstimateSE a = batch_ratio(num, den);
    EstimateSE e = batch_ratio(rb, cnt);
    EstimateSE er = batch_ratio(raw, cnt);
    ProcessMetrics& pm = rep.per_process[std::size_t(k)];
    pm.aoi = a.value;
    pm.aoi_ci = 1.96 * a.se;
    pm.err = e.value;
    pm.err_ci = 1.96 * e.se;
    pm.err_raw = er.value;
    pm.err_raw_ci = 1.96 * er.se;
  }
  rep.objective = report_objective(cfg, rep);
  rep.objective_ci = 1.96 * objective_se(merged, betas);
  return rep;
}

}  // namespace

const char* trace_header() { return "process,i,S,S_prime,D,Y,X,W,L,start_age"; }

SingleSimResult simulate_single(const SystemConfig& cfg, ThresholdPolicy policy,
                                const SimBudget& budget, std::ostream* trace) {
  if (cfg.K() != 1) throw config_error("simulate_single needs exactly one process");
  MetricReport rep = run_all(cfg, {1}, policy.xi, 0, true, budget, trace);
  const ProcessMetrics& pm = rep.per_process.front();
  SingleSimResult out;
  out.aoi = {pm.aoi, pm.aoi_ci / 1.96, rep.cycles, rep.seed, "raw"};
  out.err = {pm.err, pm.err_ci / 1.96, rep.cycles, rep.seed, "rao-blackwell"};
  out.err_raw = {pm.err_raw, pm.err_raw_ci / 1.96, rep.cycles, rep.seed, "raw"};
  return out;
}

MetricReport simulate_rr(const SystemConfig& cfg, const RRPolicy& policy,
                         const SimBudget& budget, std::ostream* trace,
                         int wait_slot) {
  std::vector<int> m(std::size_t(cfg.processes.size()), 1);
  return run_all(cfg, m, policy.xi, wait_slot, true, budget, trace);
}

MetricReport simulate_as(const SystemConfig& cfg, const ASSchedule& sched,
                         const SimBudget& budget, std::ostream* trace) {
  return run_all(cfg, sched.m, 0.0, 0, false, budget, trace);
}

}  // namespace aoicred
