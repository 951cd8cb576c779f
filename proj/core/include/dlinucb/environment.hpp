#pragma once

// Piecewise-stationary linear reward simulator.
//
// Rewards are x^T theta* + N(0, sigma^2). Every S rounds theta* is redrawn by
// rejection sampling until at least ceil(rho K) arms move by more than Delta in
// expected reward. Arm generation, candidate sampling, reward noise and change
// sampling each draw from their own RNG stream derived from the master seed,
// so adding a learner never perturbs the environment trajectory.

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dlinucb/linalg.hpp"
#include "dlinucb/types.hpp"

namespace dlinucb {

using Rng = std::mt19937_64;

/// Independent stream for (seed, tag). Streams with different tags are
/// decorrelated through std::seed_seq.
Rng make_stream(std::uint64_t seed, std::string_view tag);

/// Stable 64-bit FNV-1a hash.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 14695981039346656037ull);

/// Infeasible environment configuration (e.g. the change constraint cannot be met).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnvConfig {
  std::size_t num_arms = 1000;        // K
  std::size_t dim = 10;               // d
  std::size_t pool_per_round = 10;
  double sigma = 0.05;
  std::size_t period = 800;           // S
  double delta_change = 0.9;          // Delta
  double rho = 1.0;
  std::size_t horizon = 5000;         // T
  std::uint64_t seed = 0;
  /// Optional per-change Delta; entry j applies to the (j+1)-th change.
  std::vector<double> delta_overrides;

  void validate() const;
  /// Rounds at which theta* changes: positive multiples of S up to the horizon
  /// (none when rho == 0).
  std::vector<Round> change_rounds() const;
  /// Hash of every field except the seed.
  std::uint64_t hash() const;

  std::string to_json() const;
  static EnvConfig from_json(const std::string& text);
};

struct ThetaRecord {
  Round round = 0;
  Vector theta;
};

/// Ground truth of one run, exported for the semi-oracle baseline and for
/// detection scoring.
struct Trajectory {
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  EnvConfig config;
  std::vector<ThetaRecord> theta_history;  // round 0 is the initial parameter

  std::vector<Round> change_rounds() const;
  /// theta* in force at round t.
  const Vector& theta_at(Round t) const;
  /// Index into theta_history of the regime in force at round t.
  std::size_t regime_at(Round t) const;

  std::string to_json() const;
  static Trajectory from_json(const std::string& text);
};

/// Maximum number of rejected theta candidates before apply_change gives up.
inline constexpr std::size_t kChangeAttemptBudget = 10000;

/// K vectors with U(0,1) entries, each divided by max(1, ||x||_2).
std::vector<Vector> gen_arms(std::size_t num_arms, std::size_t dim, Rng& rng);

class Environment {
 public:
  explicit Environment(const EnvConfig& config);

  const EnvConfig& config() const noexcept { return config_; }
  const std::vector<Arm>& arms() const noexcept { return arms_; }
  const Vector& theta_star() const noexcept { return theta_; }
  const std::vector<ThetaRecord>& theta_history() const noexcept { return history_; }
  Round round() const noexcept { return round_; }

  /// n distinct arms, uniformly without replacement.
  std::vector<Arm> sample_candidates(std::size_t n);

  double expected_reward(const Vector& x) const;
  /// x^T theta* + N(0, sigma^2) using the caller's noise stream.
  double reward(const Vector& x, Rng& noise_rng) const;
  /// Same, using the environment's own noise stream.
  double reward(const Vector& x);

  /// Argmax of x^T theta* over the candidates, ties to the lowest id.
  std::pair<ArmId, double> best_expected(ArmPool candidates) const;

  /// Redraw theta* so at least ceil(rho K) arms move by more than delta.
  /// Throws ConfigError after kChangeAttemptBudget rejected candidates.
  void apply_change(double delta, double rho);

  /// Install a fixed parameter at the current round (scripted scenarios).
  /// Throws std::invalid_argument on a dimension mismatch or norm above 1.
  void set_theta(const Vector& theta);
  /// Advance one round; applies a change at positive multiples of S when rho > 0.
  void step_clock();

  /// Count of arms whose expected reward differs by more than delta between two parameters.
  std::size_t count_moved(const Vector& before, const Vector& after, double delta) const;

  Trajectory trajectory() const;

 private:
  Vector draw_change_candidate();

  EnvConfig config_;
  Rng candidate_rng_;
  Rng noise_rng_;
  Rng change_rng_;
  std::vector<Arm> arms_;
  std::vector<std::size_t> permutation_;
  Vector theta_;
  std::vector<ThetaRecord> history_;
  Round round_ = 0;
  std::size_t changes_applied_ = 0;
};

}  // namespace dlinucb
