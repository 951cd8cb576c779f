#include "dlinucb/master_policy.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace dlinucb {

void Hyperparams::validate() const {
  if (!(delta1 > 0.0 && delta1 < 1.0)) throw std::invalid_argument("delta1 must lie in (0, 1)");
  if (!(delta1_tilde >= 0.0 && delta1_tilde <= delta1)) {
    throw std::invalid_argument("delta1_tilde must lie in [0, delta1]");
  }
  if (!(delta2 > 0.0 && delta2 < 1.0)) throw std::invalid_argument("delta2 must lie in (0, 1)");
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be > 0");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be >= 0");
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
}

std::string StepEvents::to_json_line() const {
  nlohmann::json j;
  j["round"] = round;
  j["chosen_slave"] = chosen_slave;
  j["chosen_arm"] = chosen_arm;
  j["reward"] = reward;
  auto e = nlohmann::json::array();
  for (const auto& f : flags) e.push_back(f.error ? 1 : 0);
  j["e_flags"] = std::move(e);
  j["discarded"] = discarded;
  j["created"] = created;
  j["n_slaves"] = n_slaves;
  return j.dump();
}

StepEvents StepEvents::from_json_line(const std::string& line) {
  const auto j = nlohmann::json::parse(line);
  StepEvents ev;
  ev.round = j.at("round").get<Round>();
  ev.chosen_slave = j.at("chosen_slave").get<SlaveId>();
  ev.chosen_arm = j.at("chosen_arm").get<ArmId>();
  ev.reward = j.at("reward").get<double>();
  for (const auto& f : j.at("e_flags")) ev.flags.push_back({0, f.get<int>() != 0});
  ev.discarded = j.at("discarded").get<std::vector<SlaveId>>();
  ev.created = j.at("created").get<bool>();
  ev.n_slaves = j.at("n_slaves").get<std::size_t>();
  return ev;
}

std::size_t lcb_argmin(std::span<const BadnessStats> stats, std::size_t tau) {
  if (stats.empty()) throw std::invalid_argument("select_slave: empty slave set");
  std::size_t best = 0;
  double best_lcb = badness_lcb(stats[0], tau);
  for (std::size_t i = 1; i < stats.size(); ++i) {
    const double lcb = badness_lcb(stats[i], tau);
    if (lcb < best_lcb) {
      best_lcb = lcb;
      best = i;
    }
  }
  return best;
}

MasterPolicy::MasterPolicy(const Hyperparams& hyper, Round t0)
    : hyper_((hyper.validate(), hyper)), noise_(hyper.noise()), round_(t0) {
  slaves_.emplace_back(hyper_.dim, hyper_.lambda, t0, hyper_.tau);
  ids_.push_back(next_id_++);
}

MasterPolicy MasterPolicy::from_slaves(const Hyperparams& hyper, std::vector<SlaveModel> slaves,
                                       Round round) {
  if (slaves.empty()) throw std::invalid_argument("MasterPolicy::from_slaves: empty slave set");
  MasterPolicy m(hyper, round);
  m.slaves_.clear();
  m.ids_.clear();
  m.next_id_ = 0;
  for (auto& s : slaves) {
    if (s.dim() != hyper.dim) throw std::invalid_argument("MasterPolicy::from_slaves: dimension mismatch");
    m.slaves_.push_back(std::move(s));
    m.ids_.push_back(m.next_id_++);
  }
  return m;
}

std::vector<BadnessStats> MasterPolicy::stats() const {
  std::vector<BadnessStats> out;
  out.reserve(slaves_.size());
  for (const auto& s : slaves_) out.push_back(badness_stats(s.badness(), hyper_.delta2));
  return out;
}

std::size_t MasterPolicy::select_slave_index() const {
  const auto st = stats();
  return lcb_argmin(st, hyper_.tau);
}

ArmChoice MasterPolicy::choose_arm(ArmPool pool) const {
  if (pool.empty()) throw std::invalid_argument("MasterPolicy::choose_arm: empty arm pool");
  const std::size_t idx = select_slave_index();
  return {slaves_[idx].select_arm(pool, noise_), ids_[idx]};
}

StepEvents MasterPolicy::observe(const Vector& x, double r) {
  if (!std::isfinite(r)) throw std::invalid_argument("MasterPolicy::observe: non-finite reward");
  if (x.size() != hyper_.dim) throw std::invalid_argument("MasterPolicy::observe: dimension mismatch");

  const Round t = ++round_;
  StepEvents ev;
  ev.round = t;
  ev.reward = r;

  // Every slave judges the observation on its pre-update state.
  std::vector<bool> errors(slaves_.size());
  for (std::size_t i = 0; i < slaves_.size(); ++i) {
    errors[i] = slaves_[i].error_indicator(x, r, noise_);
    ev.flags.push_back({ids_[i], errors[i]});
  }

  bool create_new = true;
  std::vector<bool> discard(slaves_.size(), false);
  for (std::size_t i = 0; i < slaves_.size(); ++i) {
    SlaveModel& m = slaves_[i];
    if (!errors[i]) m.absorb(x, r);
    m.badness().push(errors[i]);
    const BadnessStats s = badness_stats(m.badness(), hyper_.delta2);
    if (s.window_len == 0) continue;
    if (s.e_hat < hyper_.delta1_tilde + s.d_t) {
      create_new = false;
    } else if (s.e_hat >= hyper_.delta1 + s.d_t) {
      discard[i] = true;
    }
  }

  std::vector<SlaveModel> kept;
  std::vector<SlaveId> kept_ids;
  kept.reserve(slaves_.size() + 1);
  for (std::size_t i = 0; i < slaves_.size(); ++i) {
    if (discard[i]) {
      ev.discarded.push_back(ids_[i]);
    } else {
      kept.push_back(std::move(slaves_[i]));
      kept_ids.push_back(ids_[i]);
    }
  }
  slaves_ = std::move(kept);
  ids_ = std::move(kept_ids);

  if (create_new || slaves_.empty()) {
    slaves_.emplace_back(hyper_.dim, hyper_.lambda, t, hyper_.tau);
    ids_.push_back(next_id_);
    ev.created = true;
    ev.created_id = next_id_++;
  }
  ev.n_slaves = slaves_.size();
  return ev;
}

}  // namespace dlinucb
