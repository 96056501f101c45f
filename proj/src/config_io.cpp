#include "aoicred/config_io.hpp"

#include <fstream>

namespace aoicred {

namespace {

using nlohmann::json;

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed)
      if (it.key() == a) {
        ok = true;
        break;
      }
    if (!ok)
      throw config_error(std::string("unknown key \"") + it.key() + "\" in " +
                         where);
  }
}

double get_num(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number())
    throw config_error(std::string(key) + " must be a number");
  return j[key].get<double>();
}

// nonnegative integer regardless of signed/unsigned storage inside the json
std::uint64_t get_u64(const json& t, const char* name) {
  if (t.is_number_unsigned()) return t.get<std::uint64_t>();
  if (t.is_number_integer()) {
    long long v = t.get<long long>();
    if (v >= 0) return std::uint64_t(v);
  }
  throw config_error(std::string(name) + " must be a nonnegative integer");
}

SystemConfig default_system() {
  SystemConfig cfg;
  ProcessSpec p;
  p.lambda = 9.0;
  p.recovery = RecoveryFunction::exponential_decay(1.0);
  p.beta = 1.0;
  cfg.processes = {p};
  cfg.service = ServiceDistribution::exponential(1.0);
  return cfg;
}

}  // namespace

NoiseKind parse_noise(const std::string& name) {
  if (name == "gaussian") return NoiseKind::Gaussian;
  if (name == "uniform") return NoiseKind::Uniform;
  if (name == "none") return NoiseKind::None;
  throw config_error("unknown noise kind \"" + name +
                     "\" (expected gaussian, uniform, or none)");
}

const char* noise_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::Gaussian:
      return "gaussian";
    case NoiseKind::Uniform:
      return "uniform";
    case NoiseKind::None:
      return "none";
  }
  return "gaussian";
}

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw config_error("config root must be a JSON object");
  check_keys(j,
             {"processes", "service", "credibility_bound", "budget", "sweep",
              "output_dir"},
             "config root");

  RunConfig rc;
  rc.system = default_system();

  double service_param = 1.0;
  if (j.contains("service")) {
    const json& s = j["service"];
    if (!s.is_object()) throw config_error("service must be an object");
    check_keys(s, {"kind", "parameter", "parameter_is_rate"}, "service");
    if (s.contains("kind") && s["kind"] != "exponential")
      throw config_error("only the exponential service kind is available");
    service_param = get_num(s, "parameter", 1.0);
    if (s.contains("parameter_is_rate")) {
      if (!s["parameter_is_rate"].is_boolean())
        throw config_error("parameter_is_rate must be a boolean");
      rc.service_is_rate = s["parameter_is_rate"].get<bool>();
    }
    if (!(service_param > 0.0))
      throw config_error("service parameter must be positive");
    rc.system.service = ServiceDistribution::exponential(
        rc.service_is_rate ? 1.0 / service_param : service_param);
    rc.system_given = true;
  }

  if (j.contains("processes")) {
    const json& ps = j["processes"];
    if (!ps.is_array() || ps.empty())
      throw config_error("processes must be a non-empty array");
    rc.system.processes.clear();
    for (const json& pj : ps) {
      if (!pj.is_object()) throw config_error("process entries must be objects");
      check_keys(pj, {"lambda", "alpha", "beta"}, "process entry");
      ProcessSpec p;
      p.lambda = get_num(pj, "lambda", 1.0);
      p.recovery =
          RecoveryFunction::exponential_decay(get_num(pj, "alpha", 1.0));
      p.beta = get_num(pj, "beta", 1.0);
      rc.system.processes.push_back(p);
    }
    rc.system_given = true;
  }

  if (j.contains("credibility_bound")) {
    const json& t = j["credibility_bound"];
    if (t.is_null()) {
      rc.system.credibility_bound = kInf;
    } else if (t.is_number()) {
      rc.system.credibility_bound = t.get<double>();
      if (!(rc.system.credibility_bound >= 0.0))
        throw config_error("credibility_bound must be nonnegative");
    } else {
      throw config_error("credibility_bound must be a number or null");
    }
    rc.system_given = true;
  }

  if (j.contains("budget")) {
    const json& b = j["budget"];
    if (!b.is_object()) throw config_error("budget must be an object");
    check_keys(b, {"cycles", "seed", "replications", "threads", "noise"},
               "budget");
    rc.budget_given = true;
    if (b.contains("cycles")) {
      rc.budget.cycles = get_u64(b["cycles"], "cycles");
      if (rc.budget.cycles == 0)
        throw config_error("cycles must be a positive integer");
    }
    if (b.contains("seed")) rc.budget.seed = get_u64(b["seed"], "seed");
    if (b.contains("replications")) {
      if (!b["replications"].is_number_integer() ||
          b["replications"].get<int>() < 1)
        throw config_error("replications must be a positive integer");
      rc.budget.replications = b["replications"].get<int>();
    }
    if (b.contains("threads")) {
      if (!b["threads"].is_number_integer() || b["threads"].get<int>() < 1)
        throw config_error("threads must be a positive integer");
      rc.budget.threads = b["threads"].get<int>();
    }
    if (b.contains("noise")) {
      if (!b["noise"].is_string())
        throw config_error("noise must be a string");
      rc.budget.noise = parse_noise(b["noise"].get<std::string>());
    }
  }

  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    if (!s.is_object()) throw config_error("sweep must be an object");
    check_keys(s, {"kind", "betas", "alphas", "xi_max", "grid_points", "m_max"},
               "sweep");
    if (s.contains("kind")) {
      if (!s["kind"].is_string()) throw config_error("sweep kind must be a string");
      rc.sweep_kind = s["kind"].get<std::string>();
    }
    if (s.contains("betas")) {
      if (!s["betas"].is_array()) throw config_error("betas must be an array");
      rc.sweep_betas = s["betas"].get<std::vector<double>>();
    }
    if (s.contains("alphas")) {
      if (!s["alphas"].is_array()) throw config_error("alphas must be an array");
      rc.sweep_alphas = s["alphas"].get<std::vector<double>>();
    }
    if (s.contains("xi_max")) {
      rc.xi_max = get_num(s, "xi_max", -1.0);
      if (!(rc.xi_max > 0.0)) throw config_error("xi_max must be positive");
    }
    if (s.contains("grid_points")) {
      if (!s["grid_points"].is_number_integer() || s["grid_points"].get<int>() < 2)
        throw config_error("grid_points must be an integer >= 2");
      rc.grid_points = s["grid_points"].get<int>();
    }
    if (s.contains("m_max")) {
      if (!s["m_max"].is_number_integer() || s["m_max"].get<int>() < 1)
        throw config_error("m_max must be a positive integer");
      rc.m_max = s["m_max"].get<int>();
    }
  }

  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string())
      throw config_error("output_dir must be a string");
    rc.out_dir = j["output_dir"].get<std::string>();
  }

  rc.system.validate();
  return rc;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot read config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw config_error("malformed JSON in " + path + ": " + e.what());
  }
  try {
    return parse_run_config(j);
  } catch (const json::exception& e) {
    throw config_error("bad config value in " + path + ": " + e.what());
  }
}

}  // namespace aoicred
