// dlinucb command-line driver: simulate, replay, report, gen-log.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "dlinucb/dlinucb.hpp"

namespace {

using namespace dlinucb;

struct SimulateArgs {
  std::string config;
  std::size_t seeds = 0;
  std::string out = "out";
};

struct ReplayArgs {
  std::string log;
  std::string agent = "dlinucb";
  std::uint64_t seed = 1;
  double sigma = 0.05;
};

struct ReportArgs {
  std::string out = "out";
  std::size_t tau = 200;
};

struct GenLogArgs {
  std::string config;
  std::string out = "log.csv";
  std::size_t rows = 10000;
  std::string reward = "bernoulli";
  double p = -1.0;
  std::uint64_t seed = 0;
};

int simulate(const SimulateArgs& a) {
  RunConfig cfg = RunConfig::from_file(a.config);
  if (a.seeds > 0) cfg.n_seeds = a.seeds;
  cfg.output_dir = a.out;
  cfg.validate();
  const auto result = run_experiment(cfg);
  write_experiment(cfg, result);
  std::cout << result.summary.table_row() << '\n';
  for (const auto& s : result.seeds) {
    if (!s.detection) continue;
    const auto med = s.detection->median_latency();
    std::cout << "seed " << s.seed << ": matched " << s.detection->matched << '/'
              << s.detection->true_changes.size() << ", false alarms " << s.detection->false_alarms
              << ", median latency ";
    if (med) {
      std::cout << *med << '\n';
    } else {
      std::cout << "censored\n";
    }
  }
  std::cout << "wrote " << cfg.n_seeds << " seed(s) to " << cfg.output_dir.string() << '\n';
  return 0;
}

int replay(const ReplayArgs& a) {
  std::ifstream in(a.log);
  if (!in) throw std::invalid_argument("cannot open log file " + a.log);
  const ReplayLog log = read_replay_log(in);
  AgentSpec spec;
  spec.name = a.agent;
  AgentContext ctx;
  ctx.dim = log.dim;
  ctx.sigma = a.sigma;
  ctx.seed = a.seed;
  auto agent = make_agent(spec, ctx);
  const auto res = replay_evaluate(log, *agent);
  std::cout << "agent=" << a.agent << " rows=" << res.rows << ' ';
  if (res.ctr) {
    std::cout << "ctr=" << format_double(*res.ctr);
  } else {
    std::cout << "ctr=undefined";
  }
  std::cout << " matched=" << res.matched << '\n';
  return 0;
}

int report(const ReportArgs& a) {
  const auto runs = load_saved_runs(a.out);
  if (runs.empty()) throw std::invalid_argument("no trace_seed*.csv files in " + a.out);
  std::map<std::string, std::vector<double>> finals;
  std::vector<double> latencies;
  std::size_t matched = 0, changes = 0, false_alarms = 0;
  for (const auto& run : runs) {
    for (const auto& [agent, rows] : run.traces) {
      if (!rows.empty()) finals[agent].push_back(rows.back().regret_cum);
    }
    if (!run.trajectory || run.events.empty()) continue;
    const auto& [agent, events] = *run.events.begin();
    EventLog log{run.seed, run.trajectory->config_hash, events};
    const auto rep = detection_report(*run.trajectory, log, a.tau);
    std::cout << "seed " << run.seed << ' ' << agent << ": matched " << rep.matched << '/'
              << rep.true_changes.size() << ", false alarms " << rep.false_alarms << '\n';
    matched += rep.matched;
    changes += rep.true_changes.size();
    false_alarms += rep.false_alarms;
    for (const auto& l : rep.latencies) {
      if (l) latencies.push_back(static_cast<double>(*l));
    }
  }
  for (const auto& [agent, v] : finals) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    std::printf("%-14s regret %.2f +- %.2f over %zu seed(s)\n", agent.c_str(), mean, sd, v.size());
  }
  if (changes > 0) {
    std::printf("detection: matched %zu/%zu, false alarms %zu", matched, changes, false_alarms);
    if (!latencies.empty()) {
      std::sort(latencies.begin(), latencies.end());
      const std::size_t m = latencies.size();
      const double med = m % 2 ? latencies[m / 2] : 0.5 * (latencies[m / 2 - 1] + latencies[m / 2]);
      std::printf(", median latency %.1f", med);
    }
    std::printf("\n");
  }
  return 0;
}

int gen_log(const GenLogArgs& a) {
  const RunConfig cfg = RunConfig::from_file(a.config);
  EnvConfig env = cfg.env;
  env.seed = a.seed > 0 ? a.seed : cfg.base_seed;
  GenLogOptions opts;
  opts.rows = a.rows;
  opts.reward = a.reward == "linear" ? LogReward::kLinear : LogReward::kBernoulli;
  if (a.p >= 0.0) opts.fixed_p = a.p;
  const auto gen = generate_replay_log(env, opts);
  std::ofstream out(a.out);
  if (!out) throw std::runtime_error("cannot write " + a.out);
  write_replay_log(out, gen.log);
  out.close();
  if (!out) throw std::runtime_error("failed writing " + a.out);
  std::cout << "wrote " << gen.log.rows.size() << " rows to " << a.out
            << " (uniform policy value " << format_double(gen.uniform_policy_value) << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dLinUCB simulation and replay harness"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Run a seeded experiment from a config file");
  sim_cmd->add_option("--config", sim.config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("--seeds", sim.seeds, "Number of seeds (overrides the config)")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--out", sim.out, "Output directory");

  ReplayArgs rep;
  auto* rep_cmd = app.add_subcommand("replay", "Evaluate an agent on a logged stream");
  rep_cmd->add_option("--log", rep.log, "Replay log (CSV)")->required()->check(CLI::ExistingFile);
  rep_cmd->add_option("--agent", rep.agent, "Agent name")
      ->check(CLI::IsMember({"dlinucb", "linucb", "oracle-linucb", "random"}));
  rep_cmd->add_option("--seed", rep.seed, "Seed for randomized agents");
  rep_cmd->add_option("--sigma", rep.sigma, "Noise level assumed by the agent");

  ReportArgs repo;
  auto* report_cmd = app.add_subcommand("report", "Summarize regret and detection from saved traces");
  report_cmd->add_option("--out", repo.out, "Directory written by simulate")->check(CLI::ExistingDirectory);
  report_cmd->add_option("--tau", repo.tau, "Window length used for false-alarm grace");

  GenLogArgs gl;
  auto* gl_cmd = app.add_subcommand("gen-log", "Write a uniformly-logged replay stream from the simulator");
  gl_cmd->add_option("--config", gl.config, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
  gl_cmd->add_option("--out", gl.out, "Output CSV");
  gl_cmd->add_option("--rows", gl.rows, "Number of logged rounds")->check(CLI::PositiveNumber);
  gl_cmd->add_option("--reward", gl.reward, "Reward model")->check(CLI::IsMember({"bernoulli", "linear"}));
  gl_cmd->add_option("--p", gl.p, "Fixed click probability (bernoulli only)")->check(CLI::Range(0.0, 1.0));
  gl_cmd->add_option("--seed", gl.seed, "Environment seed (default: the config's base seed)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim_cmd) return simulate(sim);
    if (*rep_cmd) return replay(rep);
    if (*report_cmd) return report(repo);
    if (*gl_cmd) return gen_log(gl);
  } catch (const ConfigError& e) {
    std::cerr << "dlinucb: configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dlinucb: error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
