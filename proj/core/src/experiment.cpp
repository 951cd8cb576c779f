#include "dlinucb/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dlinucb {
namespace {

AgentSpec agent_spec_from(const nlohmann::json& j) {
  AgentSpec a;
  a.name = j.at("name").get<std::string>();
  a.label = j.value("label", std::string{});
  a.delta1 = j.value("delta1", a.delta1);
  a.delta1_tilde = j.value("delta1_tilde", a.delta1_tilde);
  a.delta2 = j.value("delta2", a.delta2);
  a.tau = j.value("tau", a.tau);
  a.lambda = j.value("lambda", a.lambda);
  return a;
}

nlohmann::json agent_spec_json(const AgentSpec& a) {
  nlohmann::json j{{"name", a.name},     {"delta1", a.delta1}, {"delta1_tilde", a.delta1_tilde},
                   {"delta2", a.delta2}, {"tau", a.tau},       {"lambda", a.lambda}};
  if (!a.label.empty()) j["label"] = a.label;
  return j;
}

}  // namespace

void RunConfig::validate() const {
  env.validate();
  if (agents.empty()) throw std::invalid_argument("run config: at least one agent is required");
  if (n_seeds < 1) throw std::invalid_argument("run config: seeds must be >= 1");
  std::set<std::string> labels;
  for (const auto& a : agents) {
    if (std::find(std::begin(kAgentNames), std::end(kAgentNames), a.name) == std::end(kAgentNames)) {
      throw std::invalid_argument("run config: unknown agent '" + a.name + "'");
    }
    if (a.name != "random") a.hyper(env.dim, env.sigma).validate();
    if (!labels.insert(a.display_label()).second) {
      throw std::invalid_argument("run config: duplicate agent label '" + a.display_label() + "'");
    }
  }
}

std::string RunConfig::to_json() const {
  nlohmann::json j;
  j["env"] = nlohmann::json::parse(env.to_json());
  j["env"].erase("seed");
  auto arr = nlohmann::json::array();
  for (const auto& a : agents) arr.push_back(agent_spec_json(a));
  j["agents"] = std::move(arr);
  j["seeds"] = n_seeds;
  j["base_seed"] = base_seed;
  j["output_dir"] = output_dir.string();
  j["emit_per_round"] = emit_per_round;
  return j.dump(2);
}

RunConfig RunConfig::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed config JSON: ") + e.what());
  }
  RunConfig cfg;
  try {
    if (j.contains("env")) cfg.env = EnvConfig::from_json(j.at("env").dump());
    if (j.contains("agents")) {
      for (const auto& a : j.at("agents")) cfg.agents.push_back(agent_spec_from(a));
    }
    cfg.n_seeds = j.value("seeds", cfg.n_seeds);
    cfg.base_seed = j.value("base_seed", cfg.base_seed);
    cfg.output_dir = j.value("output_dir", cfg.output_dir.string());
    cfg.emit_per_round = j.value("emit_per_round", cfg.emit_per_round);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed config: ") + e.what());
  }
  if (cfg.agents.empty()) {
    AgentSpec lin;
    lin.name = "linucb";
    cfg.agents = {AgentSpec{}, lin};
  }
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

const AgentRun& SeedResult::run(std::string_view agent) const {
  for (const auto& r : runs) {
    if (r.agent == agent) return r;
  }
  throw std::out_of_range("no run for agent " + std::string(agent));
}

const AgentSummary& Summary::agent(std::string_view name) const {
  for (const auto& a : agents) {
    if (a.agent == name) return a;
  }
  throw std::out_of_range("no summary for agent " + std::string(name));
}

std::string Summary::to_json() const {
  nlohmann::json j;
  j["sigma"] = sigma;
  j["delta"] = delta;
  j["S"] = period;
  j["rho"] = rho;
  j["horizon"] = horizon;
  auto arr = nlohmann::json::array();
  for (const auto& a : agents) {
    arr.push_back({{"agent", a.agent}, {"mean_regret", a.mean}, {"std_regret", a.stddev},
                   {"final_regrets", a.final_regrets}});
  }
  j["agents"] = std::move(arr);
  return j.dump(2);
}

std::string Summary::table_row() const {
  char head[96];
  std::snprintf(head, sizeof head, "(%g, %g, %zu)", sigma, delta, period);
  std::string out = head;
  for (const auto& a : agents) {
    char cell[128];
    std::snprintf(cell, sizeof cell, "  %s %.2f +- %.2f", a.agent.c_str(), a.mean, a.stddev);
    out += cell;
  }
  return out;
}

double regret_increment(const Environment& env, ArmPool candidates, ArmId chosen) {
  const auto it = std::find_if(candidates.begin(), candidates.end(),
                               [&](const Arm& a) { return a.id == chosen; });
  if (it == candidates.end()) {
    throw std::invalid_argument("regret_increment: arm " + std::to_string(chosen) +
                                " is not among the candidates");
  }
  const double gap = env.best_expected(candidates).second - env.expected_reward(it->x);
  return std::max(gap, 0.0);
}

std::vector<AgentRun> run_lockstep(Environment& env, std::span<Agent* const> agents,
                                   std::span<const std::string> labels, std::size_t horizon) {
  if (agents.size() != labels.size()) throw std::invalid_argument("run_lockstep: one label per agent");
  const std::uint64_t seed = env.config().seed;
  std::vector<AgentRun> runs(agents.size());
  std::vector<Rng> noise;
  noise.reserve(agents.size());
  for (std::size_t i = 0; i < agents.size(); ++i) {
    runs[i].agent = labels[i];
    runs[i].seed = seed;
    runs[i].candidate_hash = fnv1a("");
    runs[i].rows.reserve(horizon);
    noise.push_back(make_stream(seed, "noise/" + labels[i]));
  }

  for (std::size_t step = 0; step < horizon; ++step) {
    env.step_clock();
    const Round t = env.round();
    const std::vector<Arm> cands = env.sample_candidates(env.config().pool_per_round);
    const double best = env.best_expected(cands).second;

    for (std::size_t i = 0; i < agents.size(); ++i) {
      Agent& agent = *agents[i];
      AgentRun& run = runs[i];
      for (const Arm& a : cands) {
        run.candidate_hash = fnv1a(
            std::string_view(reinterpret_cast<const char*>(&a.id), sizeof a.id), run.candidate_hash);
      }
      agent.begin_round(t);
      const ArmId arm = agent.choose(cands);
      const auto it = std::find_if(cands.begin(), cands.end(), [&](const Arm& a) { return a.id == arm; });
      if (it == cands.end()) throw std::logic_error("agent chose an arm outside the candidate set");
      const double r = env.reward(it->x, noise[i]);
      agent.learn(it->x, r);

      RoundRow row;
      row.round = t;
      row.arm = arm;
      row.reward = r;
      row.regret_inc = std::max(best - env.expected_reward(it->x), 0.0);
      row.regret_cum = (run.rows.empty() ? 0.0 : run.rows.back().regret_cum) + row.regret_inc;
      row.n_slaves = agent.model_count();
      if (const StepEvents* ev = agent.last_events()) {
        row.created = ev->created;
        row.discarded = ev->discarded.size();
        run.events.push_back(*ev);
      }
      run.rows.push_back(row);
    }
  }
  for (auto& run : runs) run.final_regret = run.rows.empty() ? 0.0 : run.rows.back().regret_cum;
  return runs;
}

SeedResult run_seed(const RunConfig& cfg, std::uint64_t seed) {
  EnvConfig ec = cfg.env;
  ec.seed = seed;
  Environment env(ec);

  AgentContext ctx;
  ctx.dim = ec.dim;
  ctx.sigma = ec.sigma;
  ctx.change_rounds = ec.change_rounds();
  ctx.seed = seed;

  std::vector<std::unique_ptr<Agent>> owned;
  std::vector<Agent*> agents;
  std::vector<std::string> labels;
  for (const auto& spec : cfg.agents) {
    owned.push_back(make_agent(spec, ctx));
    agents.push_back(owned.back().get());
    labels.push_back(spec.display_label());
  }

  SeedResult res;
  res.seed = seed;
  res.runs = run_lockstep(env, agents, labels, ec.horizon);
  res.trajectory = env.trajectory();

  for (std::size_t i = 0; i < cfg.agents.size(); ++i) {
    if (cfg.agents[i].name != "dlinucb") continue;
    EventLog log{seed, res.trajectory.config_hash, res.runs[i].events};
    res.detection = detection_report(res.trajectory, log, cfg.agents[i].tau);
    break;
  }
  return res;
}

Summary summarize(const RunConfig& cfg, const std::vector<SeedResult>& seeds) {
  Summary s;
  s.sigma = cfg.env.sigma;
  s.delta = cfg.env.delta_change;
  s.period = cfg.env.period;
  s.rho = cfg.env.rho;
  s.horizon = cfg.env.horizon;
  for (const auto& spec : cfg.agents) {
    AgentSummary a;
    a.agent = spec.display_label();
    for (const auto& sr : seeds) a.final_regrets.push_back(sr.run(a.agent).final_regret);
    const double n = static_cast<double>(a.final_regrets.size());
    if (n > 0) {
      double sum = 0.0;
      for (double v : a.final_regrets) sum += v;
      a.mean = sum / n;
    }
    if (n > 1) {
      double ss = 0.0;
      for (double v : a.final_regrets) ss += (v - a.mean) * (v - a.mean);
      a.stddev = std::sqrt(ss / (n - 1.0));
    }
    s.agents.push_back(std::move(a));
  }
  return s;
}

std::size_t threads_from_env(std::size_t fallback) {
  const char* v = std::getenv("DLINUCB_THREADS");
  if (v == nullptr) return fallback;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (end == v || *end != '\0' || n < 1) return fallback;
  return static_cast<std::size_t>(n);
}

ExperimentResult run_experiment(const RunConfig& cfg, std::size_t threads) {
  cfg.validate();
  if (threads == 0) threads = threads_from_env(1);
  threads = std::max<std::size_t>(1, std::min(threads, cfg.n_seeds));

  ExperimentResult out;
  out.seeds.resize(cfg.n_seeds);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (std::size_t i = next++; i < cfg.n_seeds; i = next++) {
      try {
        out.seeds[i] = run_seed(cfg, cfg.seed(i));
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = cfg.n_seeds;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  out.summary = summarize(cfg, out.seeds);
  return out;
}

}  // namespace dlinucb
