#pragma once

// Common policy interface for the experiment harness and the replay
// evaluator, plus the reference policies dLinUCB is compared against.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dlinucb/environment.hpp"
#include "dlinucb/master_policy.hpp"
#include "dlinucb/slave_model.hpp"
#include "dlinucb/types.hpp"

namespace dlinucb {

class Agent {
 public:
  virtual ~Agent() = default;

  virtual std::string_view name() const = 0;
  /// Called once per round before choose(); policies that react to the clock hook in here.
  virtual void begin_round(Round /*t*/) {}
  virtual ArmId choose(ArmPool candidates) = 0;
  virtual void learn(const Vector& x, double r) = 0;

  /// Number of live models (slaves for dLinUCB, 1 for LinUCB variants, 0 for random).
  virtual std::size_t model_count() const { return 1; }
  /// Slave lifecycle events of the last learn() call, for policies that have them.
  virtual const StepEvents* last_events() const { return nullptr; }
};

class DLinUCBAgent final : public Agent {
 public:
  explicit DLinUCBAgent(const Hyperparams& hyper) : master_(hyper) {}

  std::string_view name() const override { return "dlinucb"; }
  ArmId choose(ArmPool candidates) override;
  void learn(const Vector& x, double r) override;
  std::size_t model_count() const override { return master_.size(); }
  const StepEvents* last_events() const override { return events_ ? &*events_ : nullptr; }

  const MasterPolicy& master() const noexcept { return master_; }

 private:
  MasterPolicy master_;
  ArmChoice last_choice_;
  std::optional<StepEvents> events_;
};

/// Stationary LinUCB: one learner that absorbs every observation and never resets.
class LinUCBAgent : public Agent {
 public:
  LinUCBAgent(std::size_t dim, double lambda, double delta1, double sigma);

  std::string_view name() const override { return "linucb"; }
  ArmId choose(ArmPool candidates) override { return model_.select_arm(candidates, noise_); }
  void learn(const Vector& x, double r) override { model_.absorb(x, r); }

  const SlaveModel& model() const noexcept { return model_; }

 protected:
  void reset(Round t) { model_ = SlaveModel(model_.dim(), model_.lambda(), t); }

 private:
  NoiseSpec noise_;
  SlaveModel model_;
};

/// LinUCB that is told the true change rounds and restarts at each of them.
class OracleLinUCBAgent final : public LinUCBAgent {
 public:
  /// Throws std::invalid_argument when change_rounds is not strictly ascending.
  OracleLinUCBAgent(std::size_t dim, double lambda, double delta1, double sigma,
                    std::vector<Round> change_rounds);

  std::string_view name() const override { return "oracle-linucb"; }
  void begin_round(Round t) override;

 private:
  std::vector<Round> change_rounds_;
  std::size_t next_ = 0;
};

class RandomAgent final : public Agent {
 public:
  explicit RandomAgent(std::uint64_t seed) : rng_(make_stream(seed, "random-agent")) {}

  std::string_view name() const override { return "random"; }
  ArmId choose(ArmPool candidates) override;
  void learn(const Vector&, double) override {}
  std::size_t model_count() const override { return 0; }

 private:
  Rng rng_;
};

/// Named policy plus its hyperparameters, as read from a run configuration.
struct AgentSpec {
  std::string name = "dlinucb";  // dlinucb | linucb | oracle-linucb | random
  std::string label;             // unique column label; defaults to name
  double delta1 = 0.1;
  double delta1_tilde = 0.05;
  double delta2 = 0.1;
  std::size_t tau = 200;
  double lambda = 0.1;

  Hyperparams hyper(std::size_t dim, double sigma) const;
  const std::string& display_label() const { return label.empty() ? name : label; }
};

inline constexpr std::string_view kAgentNames[] = {"dlinucb", "linucb", "oracle-linucb", "random"};

/// Everything the factory may need besides the spec itself.
struct AgentContext {
  std::size_t dim = 10;
  double sigma = 0.05;
  std::vector<Round> change_rounds;
  std::uint64_t seed = 0;
};

/// Throws std::invalid_argument for an unknown name or invalid hyperparameters.
std::unique_ptr<Agent> make_agent(const AgentSpec& spec, const AgentContext& ctx);

}  // namespace dlinucb
