#pragma once

// Offline evaluation by rejection replay over a uniformly-logged stream.
//
// File format (CSV, one header line):
//   round,logged_arm,reward,cand0_id,cand0_f0,...,cand0_f{d-1},cand1_id,...
// The candidate count and feature dimension are read back from the header.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dlinucb/agents.hpp"
#include "dlinucb/environment.hpp"
#include "dlinucb/types.hpp"

namespace dlinucb {

struct ReplayRow {
  Round round = 0;
  std::vector<Arm> candidates;
  ArmId logged_arm = 0;
  double reward = 0.0;
};

struct ReplayLog {
  std::size_t dim = 0;
  std::size_t pool_size = 0;
  std::vector<ReplayRow> rows;

  /// Throws std::invalid_argument when a row breaks the fixed shape or logs
  /// an arm outside its candidate set.
  void validate() const;
};

void write_replay_log(std::ostream& out, const ReplayLog& log);
ReplayLog read_replay_log(std::istream& in);

struct ReplayResult {
  std::optional<double> ctr;  // undefined when nothing matched
  std::size_t matched = 0;
  std::size_t rows = 0;
  double reward_sum = 0.0;
};

/// Rows where the agent's choice equals the logged arm are counted and fed
/// back to the agent; all other rows are skipped.
ReplayResult replay_evaluate(const ReplayLog& log, Agent& agent);

enum class LogReward { kLinear, kBernoulli };

struct GenLogOptions {
  std::size_t rows = 10000;
  LogReward reward = LogReward::kBernoulli;
  /// Bernoulli only: fixed click probability; otherwise clamp(x^T theta*, 0, 1).
  std::optional<double> fixed_p;
};

struct GeneratedLog {
  ReplayLog log;
  /// Expected reward of the uniform-random policy, averaged over rows.
  double uniform_policy_value = 0.0;
};

/// Uniform-random logger on the simulator's candidate stream.
GeneratedLog generate_replay_log(const EnvConfig& env, const GenLogOptions& opts);

}  // namespace dlinucb
