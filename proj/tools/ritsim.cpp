// Command-line front end: run | sweep | bounds, CSV out, flat key=value
// configs.  Exit codes: 0 ok, 1 runtime failure, 2 usage error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rit/bounds.hpp"
#include "rit/config.hpp"
#include "rit/engine.hpp"
#include "rit/policy.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error(what + ": not a number: '" + s + "'");
  }
  if (pos != s.size())
    throw std::runtime_error(what + ": not a number: '" + s + "'");
  return x;
}

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
  std::size_t pos = 0;
  std::uint64_t x = 0;
  try {
    x = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw std::runtime_error(what + ": not an unsigned integer: '" + s + "'");
  }
  if (pos != s.size())
    throw std::runtime_error(what + ": not an unsigned integer: '" + s + "'");
  return x;
}

void load_config_file(const std::string& path, rit::SimConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    const std::string where = path + ":" + std::to_string(lineno);
    if (eq == std::string::npos)
      throw std::runtime_error(where + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw std::runtime_error(where + ": expected 'key = value'");
    if (key == "lambda")
      cfg.lambda = parse_double(val, where);
    else if (key == "v")
      cfg.v = parse_double(val, where);
    else if (key == "rho")
      cfg.rho = parse_double(val, where);
    else if (key == "capital_d")
      cfg.capital_d = parse_double(val, where);
    else if (key == "horizon")
      cfg.horizon = parse_double(val, where);
    else if (key == "warmup")
      cfg.warmup = parse_double(val, where);
    else if (key == "seed")
      cfg.seed = parse_u64(val, where);
    else
      throw std::runtime_error(where + ": unknown key '" + key + "'");
  }
}

std::vector<std::string> split_commas(const std::string& s,
                                      const std::string& what) {
  std::vector<std::string> out;
  std::size_t at = 0;
  while (at <= s.size()) {
    std::size_t comma = s.find(',', at);
    if (comma == std::string::npos) comma = s.size();
    std::string piece = trim(s.substr(at, comma - at));
    if (piece.empty()) throw UsageError(what + ": empty list entry");
    out.push_back(piece);
    at = comma + 1;
  }
  return out;
}

std::string valid_policy_list() {
  std::string list;
  for (std::string_view n : rit::policy_names()) {
    if (!list.empty()) list += ", ";
    list += n;
  }
  return list;
}

void check_policy(const std::string& name) {
  for (std::string_view n : rit::policy_names())
    if (n == name) return;
  throw UsageError("unknown policy '" + name + "' (valid: " +
                   valid_policy_list() + ")");
}

std::vector<double> parse_lambda_grid(const std::string& s) {
  std::vector<double> grid;
  for (const std::string& piece : split_commas(s, "--lambdas")) {
    double x;
    try {
      x = parse_double(piece, "--lambdas");
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
    if (!(x >= 0.0) || !std::isfinite(x))
      throw UsageError("--lambdas: rates must be finite and >= 0");
    grid.push_back(x);
  }
  if (grid.empty()) throw UsageError("--lambdas: empty grid");
  return grid;
}

struct CsvOut {
  FILE* f = stdout;
  bool owned = false;

  explicit CsvOut(const std::string& path) {
    if (path.empty()) return;
    f = std::fopen(path.c_str(), "w");
    if (f == nullptr) throw std::runtime_error("cannot open output file: " + path);
    owned = true;
  }
  ~CsvOut() {
    if (owned) std::fclose(f);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      std::fprintf(f, "%s%s", i ? "," : "", cells[i].c_str());
    std::fputc('\n', f);
  }
};

// Shared per-subcommand knobs.
struct CommonArgs {
  std::string config_path;
  std::string out_path;
  double lambda = 0, v = 0, rho = 0, capital_d = 0, horizon = 0, warmup = 0;
  std::uint64_t seed = 0;

  void attach(CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key = value config file");
    sub->add_option("--out", out_path, "CSV output path (default: stdout)");
    sub->add_option("--lambda", lambda, "arrival rate override");
    sub->add_option("--v", v, "target speed override");
    sub->add_option("--rho", rho, "perimeter radius override");
    sub->add_option("--capital-d", capital_d, "generation radius override");
    sub->add_option("--horizon", horizon, "simulated time span override");
    sub->add_option("--warmup", warmup, "counting start override");
    sub->add_option("--seed", seed, "base RNG seed override");
  }

  rit::SimConfig build(const CLI::App* sub) const {
    rit::SimConfig cfg;
    if (!config_path.empty()) load_config_file(config_path, cfg);
    if (sub->count("--lambda")) cfg.lambda = lambda;
    if (sub->count("--v")) cfg.v = v;
    if (sub->count("--rho")) cfg.rho = rho;
    if (sub->count("--capital-d")) cfg.capital_d = capital_d;
    if (sub->count("--horizon")) cfg.horizon = horizon;
    if (sub->count("--warmup")) cfg.warmup = warmup;
    if (sub->count("--seed")) cfg.seed = seed;
    cfg.validate();
    return cfg;
  }
};

const std::vector<std::string> kRunHeader = {
    "run",     "policy",  "lambda",     "v",          "rho",
    "capital_d", "horizon", "warmup",     "seed",       "n_captured",
    "n_escaped", "capture_fraction", "ci_low", "ci_high"};

std::vector<std::string> run_row(const std::string& run_label,
                                 const std::string& policy,
                                 const rit::SimConfig& cfg, std::uint64_t seed,
                                 long n_captured, long n_escaped,
                                 const std::string& fraction,
                                 const std::string& ci_low,
                                 const std::string& ci_high) {
  return {run_label,
          policy,
          num(cfg.lambda),
          num(cfg.v),
          num(cfg.rho),
          num(cfg.capital_d),
          num(cfg.horizon),
          num(cfg.effective_warmup()),
          std::to_string(seed),
          std::to_string(n_captured),
          std::to_string(n_escaped),
          fraction,
          ci_low,
          ci_high};
}

int cmd_run(const CommonArgs& args, const CLI::App* sub,
            const std::string& policy, int runs) {
  check_policy(policy);
  if (runs < 1) throw UsageError("--runs must be >= 1");
  rit::SimConfig cfg = args.build(sub);
  CsvOut out(args.out_path);
  out.row(kRunHeader);
  if (runs == 1) {
    rit::RunMetrics m = rit::run_simulation(cfg, policy);
    out.row(run_row("0", policy, cfg, m.seed, m.n_captured, m.n_escaped,
                    m.capture_fraction ? num(*m.capture_fraction) : "", "", ""));
    return 0;
  }
  rit::EstimateResult est = rit::estimate(cfg, policy, runs);
  long total_captured = 0;
  long total_escaped = 0;
  for (int k = 0; k < runs; ++k) {
    const rit::RunMetrics& m = est.per_run[k];
    total_captured += m.n_captured;
    total_escaped += m.n_escaped;
    out.row(run_row(std::to_string(k), policy, cfg, m.seed, m.n_captured,
                    m.n_escaped,
                    m.capture_fraction ? num(*m.capture_fraction) : "", "", ""));
  }
  bool have = est.runs_used > 0;
  out.row(run_row("aggregate", policy, cfg, cfg.seed, total_captured,
                  total_escaped, have ? num(est.mean) : "",
                  have ? num(est.ci_low) : "", have ? num(est.ci_high) : ""));
  return 0;
}

int cmd_sweep(const CommonArgs& args, const CLI::App* sub,
              const std::string& lambdas, const std::string& policies,
              int runs) {
  std::vector<double> grid = parse_lambda_grid(lambdas);
  std::vector<std::string> pols = split_commas(policies, "--policies");
  if (pols.empty()) throw UsageError("--policies: empty list");
  for (const std::string& p : pols) check_policy(p);
  if (runs < 2) throw UsageError("--runs must be >= 2 for a sweep");
  rit::SimConfig cfg = args.build(sub);

  CsvOut out(args.out_path);
  out.row({"lambda", "policy", "mean_fraction", "ci_low", "ci_high", "runs",
           "upper_bound", "policy_lower_bound", "la_ncla_factor", "seed"});
  const bool factor_ok =
      rit::la_relative_applicable(cfg.v, cfg.rho, cfg.capital_d);
  const std::string factor =
      factor_ok ? num(rit::la_relative_factor(cfg.v, cfg.rho, cfg.capital_d))
                : "";
  for (double lambda : grid) {
    rit::SimConfig point = cfg;
    point.lambda = lambda;
    for (const std::string& p : pols) {
      rit::EstimateResult est = rit::estimate(point, p, runs);
      std::string lower;
      if (p == "fcfs" || p == "sac")
        lower = num(rit::fcfs_lower_bound(lambda, cfg.rho));
      else if (p == "la" && factor_ok)
        lower = num(rit::la_lower_bound(lambda, cfg.rho));
      else if (p == "rmhp")
        lower = num(rit::rmhp_lower_bound(lambda, cfg.v, cfg.rho));
      bool have = est.runs_used > 0;
      out.row({num(lambda), p, have ? num(est.mean) : "",
               have ? num(est.ci_low) : "", have ? num(est.ci_high) : "",
               std::to_string(est.runs_used),
               num(rit::upper_bound(lambda, cfg.v, cfg.rho)), lower, factor,
               std::to_string(cfg.seed)});
    }
  }
  return 0;
}

int cmd_bounds(const CommonArgs& args, const CLI::App* sub,
               const std::string& lambdas) {
  std::vector<double> grid = parse_lambda_grid(lambdas);
  rit::SimConfig cfg = args.build(sub);
  CsvOut out(args.out_path);
  out.row({"lambda", "v", "rho", "capital_d", "upper_bound",
           "fcfs_lower_bound", "la_lower_bound", "rmhp_lower_bound",
           "travel_time_lower_bound", "optimality_ratio", "improved_ratio",
           "status"});
  for (double lambda : grid) {
    rit::BoundReport rep =
        rit::evaluate_bounds(lambda, cfg.v, cfg.rho, cfg.capital_d);
    std::string status;
    if (rep.degenerate) status = "degenerate";
    if (!rep.la_applicable || !rep.ratio.informative) {
      if (!status.empty()) status += ";";
      status += "theorem inapplicable";
    }
    if (status.empty()) status = "ok";
    out.row({num(lambda), num(cfg.v), num(cfg.rho), num(cfg.capital_d),
             num(rep.upper), num(rep.fcfs_lower),
             rep.la_applicable ? num(rep.la_lower) : "", num(rep.rmhp_lower),
             num(rep.travel_time),
             rep.ratio.informative ? num(rep.ratio.ratio) : "",
             rep.ratio.informative ? num(rep.ratio.improved_ratio) : "",
             status});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perimeter-defense capture simulator and bound calculator"};
  app.require_subcommand(1);

  CommonArgs run_args;
  std::string run_policy;
  int run_runs = 1;
  CLI::App* run_cmd =
      app.add_subcommand("run", "simulate one policy and print per-run stats");
  run_args.attach(run_cmd);
  run_cmd->add_option("--policy", run_policy, "policy name")->required();
  run_cmd->add_option("--runs", run_runs, "independent replicas (default 1)");

  CommonArgs sweep_args;
  std::string sweep_lambdas, sweep_policies = "fcfs,sac,la,ncla,rmhp";
  int sweep_runs = 10;
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "estimate capture fractions over an arrival-rate grid");
  sweep_args.attach(sweep_cmd);
  sweep_cmd->add_option("--lambdas", sweep_lambdas, "comma-separated rates")
      ->required();
  sweep_cmd->add_option("--policies", sweep_policies,
                        "comma-separated policy names (default: all)");
  sweep_cmd->add_option("--runs", sweep_runs, "replicas per point (default 10)");

  CommonArgs bounds_args;
  std::string bounds_lambdas;
  CLI::App* bounds_cmd = app.add_subcommand(
      "bounds", "closed-form bounds over an arrival-rate grid");
  bounds_args.attach(bounds_cmd);
  bounds_cmd->add_option("--lambdas", bounds_lambdas, "comma-separated rates")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(run_args, run_cmd, run_policy, run_runs);
    if (sweep_cmd->parsed())
      return cmd_sweep(sweep_args, sweep_cmd, sweep_lambdas, sweep_policies,
                       sweep_runs);
    if (bounds_cmd->parsed())
      return cmd_bounds(bounds_args, bounds_cmd, bounds_lambdas);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
