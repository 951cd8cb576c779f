#include "dlinucb/agents.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace dlinucb {

ArmId DLinUCBAgent::choose(ArmPool candidates) {
  last_choice_ = master_.choose_arm(candidates);
  return last_choice_.arm;
}

void DLinUCBAgent::learn(const Vector& x, double r) {
  StepEvents ev = master_.observe(x, r);
  ev.chosen_arm = last_choice_.arm;
  ev.chosen_slave = last_choice_.slave;
  events_ = std::move(ev);
}

LinUCBAgent::LinUCBAgent(std::size_t dim, double lambda, double delta1, double sigma)
    : noise_(NoiseSpec::make(sigma, delta1)), model_(dim, lambda, 0) {}

OracleLinUCBAgent::OracleLinUCBAgent(std::size_t dim, double lambda, double delta1, double sigma,
                                     std::vector<Round> change_rounds)
    : LinUCBAgent(dim, lambda, delta1, sigma), change_rounds_(std::move(change_rounds)) {
  if (std::adjacent_find(change_rounds_.begin(), change_rounds_.end(), std::greater_equal<>()) !=
      change_rounds_.end()) {
    throw std::invalid_argument("OracleLinUCBAgent: change rounds must be strictly ascending");
  }
}

void OracleLinUCBAgent::begin_round(Round t) {
  bool hit = false;
  while (next_ < change_rounds_.size() && change_rounds_[next_] <= t) {
    hit = true;
    ++next_;
  }
  if (hit) reset(t);
}

ArmId RandomAgent::choose(ArmPool candidates) {
  if (candidates.empty()) throw std::invalid_argument("RandomAgent::choose: empty candidate list");
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  return candidates[pick(rng_)].id;
}

Hyperparams AgentSpec::hyper(std::size_t dim, double sigma) const {
  Hyperparams h;
  h.delta1 = delta1;
  h.delta1_tilde = delta1_tilde;
  h.delta2 = delta2;
  h.tau = tau;
  h.lambda = lambda;
  h.sigma = sigma;
  h.dim = dim;
  return h;
}

std::unique_ptr<Agent> make_agent(const AgentSpec& spec, const AgentContext& ctx) {
  const Hyperparams h = spec.hyper(ctx.dim, ctx.sigma);
  if (spec.name == "dlinucb") return std::make_unique<DLinUCBAgent>(h);
  if (spec.name == "linucb") {
    h.validate();
    return std::make_unique<LinUCBAgent>(h.dim, h.lambda, h.delta1, h.sigma);
  }
  if (spec.name == "oracle-linucb") {
    h.validate();
    return std::make_unique<OracleLinUCBAgent>(h.dim, h.lambda, h.delta1, h.sigma, ctx.change_rounds);
  }
  if (spec.name == "random") return std::make_unique<RandomAgent>(ctx.seed);
  throw std::invalid_argument("unknown agent '" + spec.name +
                              "' (expected dlinucb, linucb, oracle-linucb or random)");
}

}  // namespace dlinucb
