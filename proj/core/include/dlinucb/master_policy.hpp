#pragma once

// The dLinUCB master: keeps a set of admissible LinUCB slaves, ranks them by a
// lower confidence bound on their sliding-window badness, routes every
// observation to all of them, discards slaves whose badness is too high, and
// creates a fresh slave when none of the survivors looks up to date.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dlinucb/badness.hpp"
#include "dlinucb/slave_model.hpp"
#include "dlinucb/types.hpp"

namespace dlinucb {

struct Hyperparams {
  double delta1 = 0.1;         // per-round error probability of an up-to-date slave
  double delta1_tilde = 0.05;  // creation sensitivity, in [0, delta1]
  double delta2 = 0.1;         // confidence of the badness estimate
  std::size_t tau = 200;       // badness window capacity
  double lambda = 0.1;         // ridge coefficient
  double sigma = 0.05;         // reward noise standard deviation
  std::size_t dim = 10;

  /// Throws std::invalid_argument describing the first violated constraint.
  void validate() const;
  NoiseSpec noise() const { return NoiseSpec::make(sigma, delta1); }
};

struct SlaveFlag {
  SlaveId slave = 0;
  bool error = false;
};

/// Everything that happened to the slave set during one observe() call.
struct StepEvents {
  Round round = 0;
  SlaveId chosen_slave = 0;
  ArmId chosen_arm = 0;
  double reward = 0.0;
  std::vector<SlaveFlag> flags;    // creation order, evaluated on pre-update state
  std::vector<SlaveId> discarded;
  bool created = false;
  SlaveId created_id = 0;          // meaningful only when created
  std::size_t n_slaves = 0;        // after discards and creation

  /// One JSON line: {round, chosen_slave, chosen_arm, reward, e_flags, discarded, created, n_slaves}.
  std::string to_json_line() const;
  static StepEvents from_json_line(const std::string& line);
};

struct ArmChoice {
  ArmId arm = 0;
  SlaveId slave = 0;
};

/// Index of the argmin of badness_lcb over `stats`; ties go to the lowest
/// index (earliest created). Throws std::invalid_argument when empty.
std::size_t lcb_argmin(std::span<const BadnessStats> stats, std::size_t tau);

class MasterPolicy {
 public:
  /// One fresh slave created at round t0. Throws on invalid hyperparameters.
  explicit MasterPolicy(const Hyperparams& hyper, Round t0 = 0);

  /// Restore from an explicit slave set (creation order). Ids are assigned 0..n-1.
  static MasterPolicy from_slaves(const Hyperparams& hyper, std::vector<SlaveModel> slaves, Round round);

  const Hyperparams& hyper() const noexcept { return hyper_; }
  const NoiseSpec& noise() const noexcept { return noise_; }
  /// Last completed round.
  Round round() const noexcept { return round_; }

  std::size_t size() const noexcept { return slaves_.size(); }
  const std::vector<SlaveModel>& slaves() const noexcept { return slaves_; }
  const std::vector<SlaveId>& slave_ids() const noexcept { return ids_; }

  std::vector<BadnessStats> stats() const;

  std::size_t select_slave_index() const;
  const SlaveModel& select_slave() const { return slaves_[select_slave_index()]; }

  /// Picks a slave by badness LCB and lets it choose an arm by UCB.
  ArmChoice choose_arm(ArmPool pool) const;

  /// Feeds the played context and its reward to every slave, then applies the
  /// discard and creation rules. Advances the round counter.
  StepEvents observe(const Vector& x, double r);

 private:
  Hyperparams hyper_;
  NoiseSpec noise_;
  Round round_;
  SlaveId next_id_ = 0;
  std::vector<SlaveModel> slaves_;
  std::vector<SlaveId> ids_;
};

}  // namespace dlinucb
