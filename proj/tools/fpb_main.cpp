#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "fpb/env/two_point.hpp"
#include "fpb/harness/runner.hpp"
#include "fpb/harness/slope.hpp"

namespace fs = std::filesystem;

namespace {

struct Opts {
  std::string policy = "mse";
  std::string env = "uniform";
  std::string values = "iid_uniform";
  long long horizon = 0;
  std::vector<long long> horizon_list;
  int reps = 1;
  std::uint64_t seed = 1;
  double gamma = 3.0;
  int value_grid = 0;
  int bid_grid = 0;
  std::string out = "out";
  std::string config;
  double price = 1.0;
  double holding = 1.0;
  bool exact = false;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void add_out_flags(CLI::App* cmd, Opts& o) {
  cmd->add_option("--seed", o.seed, "Base seed; replication r derives its own streams")
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Output directory for CSVs and the sidecar")
      ->capture_default_str();
  cmd->add_option("--config", o.config,
                  "Flat key=value file with keys matching the long flags; "
                  "command-line flags win");
}

std::string trim_copy(const std::string& s) {
  const char* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

// Flat key=value config: each key names a long flag of the chosen subcommand
// and expands to a --key=value token ahead of the explicit flags.  A flag
// given on the command line suppresses the file entry, so flags always win;
// keys that match no flag fail the parse like any unknown option.
std::vector<std::string> args_with_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      break;
    }
  }
  if (args.empty() || path.empty()) return args;

  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);

  const auto given = [&args](const std::string& flag) {
    for (const auto& a : args)
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
  };

  std::vector<std::string> merged{args.front()};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim_copy(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    const std::string where = path + ":" + std::to_string(lineno);
    if (eq == std::string::npos)
      throw std::runtime_error(where + ": expected key=value");
    std::string key = trim_copy(line.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    if (key.empty()) throw std::runtime_error(where + ": empty key");
    if (!given("--" + key))
      merged.push_back("--" + key + "=" + trim_copy(line.substr(eq + 1)));
  }
  merged.insert(merged.end(), args.begin() + 1, args.end());
  return merged;
}

void add_horizon_flag(CLI::App* cmd, Opts& o, bool required) {
  auto* opt = cmd->add_option("--T", o.horizon, "Horizon (rounds per episode)");
  if (required) opt->required();
}

void add_auction_flags(CLI::App* cmd, Opts& o) {
  cmd->add_option("--policy", o.policy,
                  "Bidding policy: mse | is_ucb | ml_is_ucb | etc | oracle")
      ->capture_default_str();
  cmd->add_option("--env", o.env,
                  "Market distribution: uniform | twopoint:<d>:<1|2> | "
                  "piecewise:<x,m;...> | truncnorm:<mu>:<sigma> | "
                  "random_piecewise[:natoms]")
      ->capture_default_str();
  cmd->add_option("--values", o.values,
                  "Value schedule: iid_uniform | constant:<v> | decreasing | "
                  "blocks:<M> | explicit:<v1,...> | file:<path>")
      ->capture_default_str();
  cmd->add_option("--gamma", o.gamma, "Confidence-band scale")
      ->capture_default_str();
  cmd->add_option("--M", o.value_grid, "Value grid size (0 = policy default)")
      ->capture_default_str();
  cmd->add_option("--K", o.bid_grid, "Bid grid size (0 = policy default)")
      ->capture_default_str();
  cmd->add_option("--reps", o.reps, "Independent replications")
      ->capture_default_str();
}

fpb::PolicyConfig policy_config(const Opts& o) {
  fpb::PolicyConfig pc;
  pc.name = o.policy;
  pc.gamma = o.gamma;
  pc.value_grid = o.value_grid;
  pc.bid_grid = o.bid_grid;
  return pc;
}

std::vector<std::pair<std::string, std::string>> base_sidecar(
    const std::string& command, const Opts& o) {
  return {{"command", command},
          {"seed", std::to_string(o.seed)},
          {"reps", std::to_string(o.reps)},
          {"gamma", num(o.gamma)}};
}

void announce(const std::string& path) { std::cout << "wrote " << path << '\n'; }

int do_run(const Opts& o) {
  fpb::ExperimentConfig cfg;
  cfg.policy = policy_config(o);
  cfg.env_spec = o.env;
  cfg.values_spec = o.values;
  cfg.horizon = o.horizon;
  cfg.replications = o.reps;
  cfg.seed = o.seed;
  cfg.out_dir = o.out;
  cfg.validate();
  const auto market = fpb::resolve_distribution(o.env, o.seed);
  const auto traces = fpb::run_replications(o.reps, [&](int rep) {
    return fpb::run_auction_episode(cfg, market, rep);
  });
  const auto summary = fpb::summarize(traces, o.horizon);

  fs::create_directories(o.out);
  const std::string trace_path = o.out + "/run_trace.csv";
  const std::string summary_path = o.out + "/run_summary.csv";
  fpb::write_trace_csv(trace_path, traces);
  fpb::write_summary_csv(summary_path, summary);
  auto side = base_sidecar("run", o);
  side.emplace_back("policy", o.policy);
  side.emplace_back("env", market.spec_string());
  side.emplace_back("values", o.values);
  side.emplace_back("T", std::to_string(o.horizon));
  side.emplace_back("M", std::to_string(o.value_grid));
  side.emplace_back("K", std::to_string(o.bid_grid));
  side.emplace_back("mean_final_regret", num(summary.back().mean));
  fpb::write_sidecar(o.out + "/run_config.txt", side);
  announce(trace_path);
  announce(summary_path);
  announce(o.out + "/run_config.txt");
  std::printf("mean final regret at T=%lld: %.6g (n=%d)\n", o.horizon,
              summary.back().mean, summary.back().n);
  return 0;
}

int do_sweep(const Opts& o) {
  if (o.horizon_list.size() < 4)
    throw std::invalid_argument("--T-list needs at least 4 horizons for a slope fit");
  const auto market = fpb::resolve_distribution(o.env, o.seed);
  fs::create_directories(o.out);

  std::vector<fpb::SummaryRow> all_rows;
  std::vector<double> horizons, finals;
  for (long long horizon : o.horizon_list) {
    fpb::ExperimentConfig cfg;
    cfg.policy = policy_config(o);
    cfg.env_spec = o.env;
    cfg.values_spec = o.values;
    cfg.horizon = horizon;
    cfg.replications = o.reps;
    cfg.seed = o.seed;
    cfg.validate();
    const auto traces = fpb::run_replications(o.reps, [&](int rep) {
      return fpb::run_auction_episode(cfg, market, rep);
    });
    const auto summary = fpb::summarize(traces, horizon);
    all_rows.insert(all_rows.end(), summary.begin(), summary.end());
    horizons.push_back(double(horizon));
    finals.push_back(summary.back().mean);
    const std::string trace_path =
        o.out + "/sweep_trace_T" + std::to_string(horizon) + ".csv";
    fpb::write_trace_csv(trace_path, traces);
    announce(trace_path);
  }
  const std::string summary_path = o.out + "/sweep_summary.csv";
  fpb::write_summary_csv(summary_path, all_rows);
  announce(summary_path);

  const auto fit = fpb::fit_loglog_slope(horizons, finals);
  auto side = base_sidecar("sweep", o);
  side.emplace_back("policy", o.policy);
  side.emplace_back("env", market.spec_string());
  side.emplace_back("values", o.values);
  for (std::size_t i = 0; i < horizons.size(); ++i)
    side.emplace_back("mean_final_T" + std::to_string((long long)horizons[i]),
                      num(finals[i]));
  side.emplace_back("slope", num(fit.slope));
  side.emplace_back("slope_stderr", num(fit.slope_stderr));
  fpb::write_sidecar(o.out + "/sweep_slope.txt", side);
  announce(o.out + "/sweep_slope.txt");
  std::printf("log-log slope over %d horizons: %.4f +/- %.4f\n", fit.points,
              fit.slope, fit.slope_stderr);
  return 0;
}

int do_lowerbound(const Opts& o) {
  std::vector<long long> horizons = o.horizon_list;
  if (horizons.empty()) {
    if (o.horizon <= 0)
      throw std::invalid_argument("provide --T or --T-list");
    horizons.push_back(o.horizon);
  }
  fs::create_directories(o.out);

  std::vector<fpb::SummaryRow> all_rows;
  std::vector<double> hs, finals, ratios;
  for (long long horizon : horizons) {
    fpb::LowerBoundConfig cfg;
    cfg.horizon = horizon;
    cfg.value_grid = o.value_grid;
    cfg.gamma = o.gamma;
    cfg.seed = o.seed;
    cfg.exact = o.exact;
    const auto traces = fpb::run_replications(o.reps, [&](int rep) {
      return fpb::run_lower_bound_episode(cfg, rep);
    });
    const auto summary = fpb::summarize(traces, horizon);
    all_rows.insert(all_rows.end(), summary.begin(), summary.end());
    hs.push_back(double(horizon));
    finals.push_back(summary.back().mean);
    ratios.push_back(summary.back().mean / std::pow(double(horizon), 2.0 / 3.0));
    const std::string trace_path =
        o.out + "/lowerbound_trace_T" + std::to_string(horizon) + ".csv";
    fpb::write_trace_csv(trace_path, traces);
    announce(trace_path);
  }
  const std::string summary_path = o.out + "/lowerbound_summary.csv";
  fpb::write_summary_csv(summary_path, all_rows);
  announce(summary_path);

  auto side = base_sidecar("lowerbound", o);
  side.emplace_back("M", std::to_string(o.value_grid));
  side.emplace_back("exact", o.exact ? "1" : "0");
  for (std::size_t i = 0; i < hs.size(); ++i) {
    side.emplace_back("mean_final_T" + std::to_string((long long)hs[i]),
                      num(finals[i]));
    side.emplace_back("ratio_T23_T" + std::to_string((long long)hs[i]),
                      num(ratios[i]));
  }
  if (hs.size() >= 4) {
    const auto fit = fpb::fit_loglog_slope(hs, finals);
    side.emplace_back("slope", num(fit.slope));
    side.emplace_back("slope_stderr", num(fit.slope_stderr));
    std::printf("log-log slope: %.4f +/- %.4f\n", fit.slope, fit.slope_stderr);
  }
  fpb::write_sidecar(o.out + "/lowerbound_report.txt", side);
  announce(o.out + "/lowerbound_report.txt");
  for (std::size_t i = 0; i < hs.size(); ++i)
    std::printf("T=%lld mean final regret %.6g, regret/T^(2/3) = %.6g\n",
                (long long)hs[i], finals[i], ratios[i]);
  return 0;
}

int do_twopoint(const Opts& o) {
  const auto inst = fpb::two_point_env(o.horizon);
  const auto pc = policy_config(o);
  std::vector<fpb::RegretTrace> g1, g2;
  double avg_sum = 0.0;
  for (int rep = 0; rep < o.reps; ++rep) {
    auto res = fpb::run_two_point_pair(pc, o.horizon, o.seed, {}, rep);
    avg_sum += res.average_final_regret;
    g1.push_back(std::move(res.trace_g1));
    g2.push_back(std::move(res.trace_g2));
  }
  const double avg = avg_sum / o.reps;

  fs::create_directories(o.out);
  fpb::write_trace_csv(o.out + "/twopoint_trace_g1.csv", g1);
  fpb::write_trace_csv(o.out + "/twopoint_trace_g2.csv", g2);
  auto rows = fpb::summarize(g1, o.horizon);
  const auto rows2 = fpb::summarize(g2, o.horizon);
  rows.insert(rows.end(), rows2.begin(), rows2.end());
  fpb::write_summary_csv(o.out + "/twopoint_summary.csv", rows);

  auto side = base_sidecar("twopoint", o);
  side.emplace_back("policy", o.policy);
  side.emplace_back("T", std::to_string(o.horizon));
  side.emplace_back("delta", num(inst.delta));
  side.emplace_back("optimal_reward_g1", num(inst.optimal_reward_g1()));
  side.emplace_back("optimal_reward_g2", num(inst.optimal_reward_g2()));
  side.emplace_back("average_final_regret", num(avg));
  side.emplace_back("minimax_floor", num(fpb::two_point_regret_floor(o.horizon)));
  fpb::write_sidecar(o.out + "/twopoint_report.txt", side);
  for (const char* name :
       {"twopoint_trace_g1.csv", "twopoint_trace_g2.csv",
        "twopoint_summary.csv", "twopoint_report.txt"})
    announce(o.out + "/" + name);
  std::printf("paired average final regret at T=%lld: %.6g (delta=%.6g)\n",
              o.horizon, avg, inst.delta);
  return 0;
}

int do_inventory(const Opts& o) {
  std::vector<long long> horizons = o.horizon_list;
  if (horizons.empty()) {
    if (o.horizon <= 0)
      throw std::invalid_argument("provide --T or --T-list");
    horizons.push_back(o.horizon);
  }
  const auto demand = fpb::resolve_distribution(o.env, o.seed);
  const double target =
      demand.quantile(o.price / (o.price + o.holding));
  fs::create_directories(o.out);

  std::vector<fpb::SummaryRow> all_rows;
  std::vector<double> hs, finals;
  auto side = base_sidecar("inventory", o);
  side.emplace_back("demand", demand.spec_string());
  side.emplace_back("price", num(o.price));
  side.emplace_back("holding", num(o.holding));
  side.emplace_back("target_level", num(target));
  for (long long horizon : horizons) {
    fpb::InventoryConfig cfg;
    cfg.demand_spec = o.env;
    cfg.price = o.price;
    cfg.holding = o.holding;
    cfg.gamma = o.gamma;
    cfg.horizon = horizon;
    cfg.levels = o.bid_grid;
    cfg.seed = o.seed;
    const auto traces = fpb::run_replications(o.reps, [&](int rep) {
      return fpb::run_inventory_episode(cfg, rep);
    });
    const auto summary = fpb::summarize(traces, horizon);
    all_rows.insert(all_rows.end(), summary.begin(), summary.end());
    hs.push_back(double(horizon));
    finals.push_back(summary.back().mean);

    const double tol = 2.0 / std::sqrt(double(horizon));
    int hits = 0;
    double level_sum = 0.0;
    for (const auto& tr : traces) {
      level_sum += tr.final_level;
      if (std::abs(tr.final_level - target) <= tol) ++hits;
    }
    side.emplace_back("mean_best_level_T" + std::to_string(horizon),
                      num(level_sum / double(traces.size())));
    side.emplace_back("within_2_sqrtT_T" + std::to_string(horizon),
                      num(double(hits) / double(traces.size())));
    side.emplace_back("mean_final_T" + std::to_string(horizon), num(finals.back()));
    const std::string trace_path =
        o.out + "/inventory_trace_T" + std::to_string(horizon) + ".csv";
    fpb::write_trace_csv(trace_path, traces, "cum_cost_regret");
    announce(trace_path);
    std::printf("T=%lld mean final regret %.6g, mean best level %.4f\n", horizon,
                finals.back(), level_sum / double(traces.size()));
  }
  const std::string summary_path = o.out + "/inventory_summary.csv";
  fpb::write_summary_csv(summary_path, all_rows);
  announce(summary_path);
  if (hs.size() >= 4) {
    const auto fit = fpb::fit_loglog_slope(hs, finals);
    side.emplace_back("slope", num(fit.slope));
    side.emplace_back("slope_stderr", num(fit.slope_stderr));
    std::printf("log-log slope: %.4f +/- %.4f\n", fit.slope, fit.slope_stderr);
  }
  fpb::write_sidecar(o.out + "/inventory_report.txt", side);
  announce(o.out + "/inventory_report.txt");
  return 0;
}

int do_demo(const Opts& o) {
  const long long horizon = 4096;
  const auto market = fpb::BidDistribution::uniform();
  fs::create_directories(o.out);
  std::ofstream csv(o.out + "/demo_regret.csv");
  if (!csv) throw std::runtime_error("cannot open " + o.out + "/demo_regret.csv");
  csv << "experiment,T,mean_final_regret\n";
  std::printf("%-12s %8s %18s\n", "experiment", "T", "mean final regret");

  auto report = [&](const std::string& name, double mean) {
    csv << name << ',' << horizon << ',' << num(mean) << '\n';
    std::printf("%-12s %8lld %18.6g\n", name.c_str(), horizon, mean);
  };

  for (const std::string name : {"mse", "is_ucb", "ml_is_ucb", "etc", "oracle"}) {
    fpb::ExperimentConfig cfg;
    cfg.policy.name = name;
    cfg.horizon = horizon;
    cfg.replications = 3;
    cfg.seed = o.seed;
    const auto traces = fpb::run_replications(3, [&](int rep) {
      return fpb::run_auction_episode(cfg, market, rep);
    });
    report(name, fpb::summarize(traces, horizon).back().mean);
  }
  {
    fpb::InventoryConfig cfg;
    cfg.horizon = horizon;
    cfg.seed = o.seed;
    const auto traces = fpb::run_replications(3, [&](int rep) {
      return fpb::run_inventory_episode(cfg, rep);
    });
    report("inventory", fpb::summarize(traces, horizon).back().mean);
  }
  {
    const auto res = fpb::run_two_point_pair(fpb::PolicyConfig{}, horizon,
                                             o.seed, {}, 0);
    report("twopoint", res.average_final_regret);
  }
  if (!csv) throw std::runtime_error("write failed: " + o.out + "/demo_regret.csv");
  csv.close();
  announce(o.out + "/demo_regret.csv");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulations of no-regret bidding in repeated first-price "
               "auctions with censored feedback"};
  app.require_subcommand(1);

  Opts run_o, sweep_o, lb_o, tp_o, inv_o, demo_o;

  auto* run_cmd =
      app.add_subcommand("run", "One (policy, market, horizon) experiment");
  add_auction_flags(run_cmd, run_o);
  add_horizon_flag(run_cmd, run_o, true);
  add_out_flags(run_cmd, run_o);

  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Replicated runs over a horizon list plus a slope report");
  add_auction_flags(sweep_cmd, sweep_o);
  sweep_cmd
      ->add_option("--T-list", sweep_o.horizon_list,
                   "Comma-separated horizons (>= 4 for the slope fit)")
      ->delimiter(',')
      ->required();
  add_out_flags(sweep_cmd, sweep_o);

  auto* lb_cmd = app.add_subcommand(
      "lowerbound", "Hard contextual instance driven by the generic "
                    "elimination policy");
  add_horizon_flag(lb_cmd, lb_o, false);
  lb_cmd->add_option("--T-list", lb_o.horizon_list, "Comma-separated horizons")
      ->delimiter(',');
  lb_cmd->add_option("--M", lb_o.value_grid,
                     "Context count (0 = ceil(T^(1/3)); actions are 2M)")
      ->capture_default_str();
  lb_cmd->add_option("--gamma", lb_o.gamma, "Confidence-band scale")
      ->capture_default_str();
  lb_cmd->add_option("--reps", lb_o.reps, "Independent replications")
      ->capture_default_str();
  lb_cmd->add_flag("--exact", lb_o.exact,
                   "Round-by-round reference loop instead of the batched "
                   "simulator");
  add_out_flags(lb_cmd, lb_o);

  auto* tp_cmd = app.add_subcommand(
      "twopoint", "Paired two-point market floor experiment, value pinned at 1");
  tp_o.policy = "ml_is_ucb";
  add_auction_flags(tp_cmd, tp_o);
  add_horizon_flag(tp_cmd, tp_o, true);
  add_out_flags(tp_cmd, tp_o);

  auto* inv_cmd = app.add_subcommand(
      "inventory", "Censored-demand newsvendor with monotone elimination");
  add_horizon_flag(inv_cmd, inv_o, false);
  inv_cmd->add_option("--T-list", inv_o.horizon_list, "Comma-separated horizons")
      ->delimiter(',');
  inv_cmd->add_option("--env", inv_o.env, "Demand distribution spec")
      ->capture_default_str();
  inv_cmd->add_option("--price", inv_o.price, "Unit sale price p")
      ->capture_default_str();
  inv_cmd->add_option("--holding", inv_o.holding, "Unit overage cost h")
      ->capture_default_str();
  inv_cmd->add_option("--gamma", inv_o.gamma, "Confidence-band scale")
      ->capture_default_str();
  inv_cmd->add_option("--K", inv_o.bid_grid,
                      "Order-level grid size (0 = ceil(sqrt(T)))")
      ->capture_default_str();
  inv_cmd->add_option("--reps", inv_o.reps, "Independent replications")
      ->capture_default_str();
  add_out_flags(inv_cmd, inv_o);

  auto* demo_cmd = app.add_subcommand(
      "demo", "Small end-to-end sample of every experiment (< 1 minute)");
  demo_o.out = "demo_out";
  add_out_flags(demo_cmd, demo_o);

  std::vector<std::string> args;
  try {
    args = args_with_config(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run_cmd) return do_run(run_o);
    if (*sweep_cmd) return do_sweep(sweep_o);
    if (*lb_cmd) return do_lowerbound(lb_o);
    if (*tp_cmd) return do_twopoint(tp_o);
    if (*inv_cmd) return do_inventory(inv_o);
    if (*demo_cmd) return do_demo(demo_o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
