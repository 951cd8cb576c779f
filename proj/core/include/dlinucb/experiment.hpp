#pragma once

// Lockstep experiment runner: every agent sees the same candidate set each
// round, plays its own arm, receives its own noisy reward, and is charged the
// expected-reward gap to the best candidate under the true parameter.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dlinucb/agents.hpp"
#include "dlinucb/detection.hpp"
#include "dlinucb/environment.hpp"
#include "dlinucb/master_policy.hpp"

namespace dlinucb {

struct RunConfig {
  EnvConfig env;
  std::vector<AgentSpec> agents;
  std::size_t n_seeds = 10;
  std::uint64_t base_seed = 1;
  std::filesystem::path output_dir = "out";
  bool emit_per_round = true;

  void validate() const;
  /// Seed of run i: base_seed + i.
  std::uint64_t seed(std::size_t i) const { return base_seed + i; }

  std::string to_json() const;
  /// Missing fields keep their defaults; throws std::invalid_argument or
  /// ConfigError on malformed or invalid content.
  static RunConfig from_json(const std::string& text);
  static RunConfig from_file(const std::filesystem::path& path);
};

struct RoundRow {
  Round round = 0;
  ArmId arm = 0;
  double reward = 0.0;
  double regret_inc = 0.0;
  double regret_cum = 0.0;
  std::size_t n_slaves = 0;
  bool created = false;
  std::size_t discarded = 0;
};

struct AgentRun {
  std::string agent;
  std::uint64_t seed = 0;
  std::vector<RoundRow> rows;
  std::vector<StepEvents> events;   // dLinUCB only
  std::uint64_t candidate_hash = 0; // hash of the candidate stream this agent saw
  double final_regret = 0.0;
};

struct SeedResult {
  std::uint64_t seed = 0;
  Trajectory trajectory;
  std::vector<AgentRun> runs;
  std::optional<DetectionReport> detection;  // from the first dLinUCB agent, if any

  const AgentRun& run(std::string_view agent) const;
};

struct AgentSummary {
  std::string agent;
  std::vector<double> final_regrets;  // one per seed
  double mean = 0.0;
  double stddev = 0.0;                // sample standard deviation (n - 1)
};

struct Summary {
  double sigma = 0.0;
  double delta = 0.0;
  std::size_t period = 0;
  double rho = 0.0;
  std::size_t horizon = 0;
  std::vector<AgentSummary> agents;

  const AgentSummary& agent(std::string_view name) const;
  std::string to_json() const;
  /// One summary line: "(sigma, Delta, S)  name mean +- std ...".
  std::string table_row() const;
};

struct ExperimentResult {
  std::vector<SeedResult> seeds;
  Summary summary;
};

/// Gap between the best candidate's expected reward and the chosen arm's.
/// Throws std::invalid_argument when `chosen` is not among the candidates.
double regret_increment(const Environment& env, ArmPool candidates, ArmId chosen);

/// Runs the given agents on `env` for `horizon` rounds. Agent i draws reward
/// noise from the stream tagged by its label, so traces do not depend on which
/// other agents are present.
std::vector<AgentRun> run_lockstep(Environment& env, std::span<Agent* const> agents,
                                   std::span<const std::string> labels, std::size_t horizon);

SeedResult run_seed(const RunConfig& cfg, std::uint64_t seed);

/// Runs all seeds, up to `threads` at a time (0 = DLINUCB_THREADS or 1).
ExperimentResult run_experiment(const RunConfig& cfg, std::size_t threads = 0);

Summary summarize(const RunConfig& cfg, const std::vector<SeedResult>& seeds);

/// Value of DLINUCB_THREADS, or `fallback` when unset or invalid.
std::size_t threads_from_env(std::size_t fallback = 1);

}  // namespace dlinucb
