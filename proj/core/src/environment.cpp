#include "dlinucb/environment.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

namespace dlinucb {
namespace {

void rescale_to_unit_ball(Vector& v) {
  const double n = v.norm2();
  if (n > 1.0) v *= 1.0 / n;
}

nlohmann::json env_config_json(const EnvConfig& c) {
  nlohmann::json j;
  j["K"] = c.num_arms;
  j["d"] = c.dim;
  j["pool_per_round"] = c.pool_per_round;
  j["sigma"] = c.sigma;
  j["S"] = c.period;
  j["delta"] = c.delta_change;
  j["rho"] = c.rho;
  j["horizon"] = c.horizon;
  j["seed"] = c.seed;
  j["delta_overrides"] = c.delta_overrides;
  return j;
}

EnvConfig env_config_from(const nlohmann::json& j) {
  EnvConfig c;
  c.num_arms = j.value("K", c.num_arms);
  c.dim = j.value("d", c.dim);
  c.pool_per_round = j.value("pool_per_round", c.pool_per_round);
  c.sigma = j.value("sigma", c.sigma);
  c.period = j.value("S", c.period);
  c.delta_change = j.value("delta", c.delta_change);
  c.rho = j.value("rho", c.rho);
  c.horizon = j.value("horizon", c.horizon);
  c.seed = j.value("seed", c.seed);
  c.delta_overrides = j.value("delta_overrides", c.delta_overrides);
  return c;
}

}  // namespace

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Rng make_stream(std::uint64_t seed, std::string_view tag) {
  const std::uint64_t t = fnv1a(tag);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32)};
  return Rng(seq);
}

void EnvConfig::validate() const {
  if (num_arms < 1) throw ConfigError("K must be >= 1");
  if (dim < 1) throw ConfigError("d must be >= 1");
  if (pool_per_round < 1 || pool_per_round > num_arms) {
    throw ConfigError("pool_per_round must lie in [1, K]");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma must be >= 0");
  if (period < 1) throw ConfigError("S must be >= 1");
  if (!(delta_change > 0.0)) throw ConfigError("delta must be > 0");
  if (!(rho >= 0.0 && rho <= 1.0)) throw ConfigError("rho must lie in [0, 1]");
  for (double d : delta_overrides) {
    if (!(d > 0.0)) throw ConfigError("delta_overrides entries must be > 0");
  }
}

std::vector<Round> EnvConfig::change_rounds() const {
  std::vector<Round> out;
  if (rho <= 0.0 || period == 0) return out;
  for (Round t = period; t <= horizon; t += period) out.push_back(t);
  return out;
}

std::uint64_t EnvConfig::hash() const {
  auto j = env_config_json(*this);
  j.erase("seed");
  return fnv1a(j.dump());
}

std::string EnvConfig::to_json() const { return env_config_json(*this).dump(); }

EnvConfig EnvConfig::from_json(const std::string& text) {
  return env_config_from(nlohmann::json::parse(text));
}

std::vector<Round> Trajectory::change_rounds() const {
  std::vector<Round> out;
  for (std::size_t i = 1; i < theta_history.size(); ++i) out.push_back(theta_history[i].round);
  return out;
}

std::size_t Trajectory::regime_at(Round t) const {
  if (theta_history.empty()) throw std::logic_error("Trajectory: empty theta history");
  std::size_t idx = 0;
  for (std::size_t i = 1; i < theta_history.size(); ++i) {
    if (theta_history[i].round <= t) idx = i;
  }
  return idx;
}

const Vector& Trajectory::theta_at(Round t) const { return theta_history[regime_at(t)].theta; }

std::string Trajectory::to_json() const {
  nlohmann::json j;
  j["seed"] = seed;
  j["config_hash"] = config_hash;
  j["config"] = env_config_json(config);
  auto hist = nlohmann::json::array();
  for (const auto& rec : theta_history) {
    hist.push_back({{"round", rec.round}, {"theta", rec.theta.raw()}});
  }
  j["theta_history"] = std::move(hist);
  j["change_rounds"] = change_rounds();
  return j.dump(2);
}

Trajectory Trajectory::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  Trajectory t;
  t.seed = j.at("seed").get<std::uint64_t>();
  t.config_hash = j.at("config_hash").get<std::uint64_t>();
  t.config = env_config_from(j.at("config"));
  for (const auto& rec : j.at("theta_history")) {
    t.theta_history.push_back(
        {rec.at("round").get<Round>(), Vector(rec.at("theta").get<std::vector<double>>())});
  }
  return t;
}

std::vector<Vector> gen_arms(std::size_t num_arms, std::size_t dim, Rng& rng) {
  if (num_arms < 1 || dim < 1) throw std::invalid_argument("gen_arms: K and d must be >= 1");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Vector> out;
  out.reserve(num_arms);
  for (std::size_t k = 0; k < num_arms; ++k) {
    Vector v(dim);
    for (double& e : v) e = unif(rng);
    rescale_to_unit_ball(v);
    out.push_back(std::move(v));
  }
  return out;
}

Environment::Environment(const EnvConfig& config)
    : config_(config),
      candidate_rng_(make_stream(config.seed, "candidates")),
      noise_rng_(make_stream(config.seed, "noise")),
      change_rng_(make_stream(config.seed, "change")) {
  config_.validate();
  Rng arm_rng = make_stream(config_.seed, "arms");
  auto xs = gen_arms(config_.num_arms, config_.dim, arm_rng);
  arms_.reserve(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) arms_.push_back({static_cast<ArmId>(k), std::move(xs[k])});
  permutation_.resize(arms_.size());
  for (std::size_t k = 0; k < permutation_.size(); ++k) permutation_[k] = k;

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double first_delta =
      config_.delta_overrides.empty() ? config_.delta_change : config_.delta_overrides.front();
  const std::size_t required =
      config_.rho > 0.0 ? static_cast<std::size_t>(std::ceil(config_.rho * static_cast<double>(arms_.size())))
                        : 0;
  theta_ = Vector(config_.dim);
  for (std::size_t attempt = 0;; ++attempt) {
    if (attempt == kChangeAttemptBudget) {
      throw ConfigError("initial theta: no draw with ceil(rho*K) = " + std::to_string(required) +
                        " arms at expected reward >= delta/2 found within the " +
                        std::to_string(kChangeAttemptBudget) + "-candidate rejection budget");
    }
    for (double& e : theta_) e = unif(change_rng_);
    rescale_to_unit_ball(theta_);
    std::size_t aligned = 0;
    for (const Arm& a : arms_) {
      if (dot(a.x, theta_) >= 0.5 * first_delta) ++aligned;
    }
    if (aligned >= required) break;
  }
  history_.push_back({0, theta_});
}

std::vector<Arm> Environment::sample_candidates(std::size_t n) {
  if (n > arms_.size()) throw std::invalid_argument("sample_candidates: n exceeds the arm pool size");
  // Partial Fisher-Yates over a persistent permutation; each call is a uniform
  // n-subset regardless of the permutation's prior state.
  std::vector<Arm> out;
  out.reserve(n);
  const std::size_t k = permutation_.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, k - 1);
    std::swap(permutation_[i], permutation_[pick(candidate_rng_)]);
    out.push_back(arms_[permutation_[i]]);
  }
  return out;
}

double Environment::expected_reward(const Vector& x) const {
  if (x.size() != config_.dim) throw std::invalid_argument("reward: dimension mismatch");
  return dot(x, theta_);
}

double Environment::reward(const Vector& x, Rng& noise_rng) const {
  const double mean = expected_reward(x);
  if (config_.sigma == 0.0) return mean;
  std::normal_distribution<double> noise(0.0, config_.sigma);
  return mean + noise(noise_rng);
}

double Environment::reward(const Vector& x) { return reward(x, noise_rng_); }

std::pair<ArmId, double> Environment::best_expected(ArmPool candidates) const {
  if (candidates.empty()) throw std::invalid_argument("best_expected: empty candidate list");
  ArmId best_id = candidates[0].id;
  double best = expected_reward(candidates[0].x);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double v = expected_reward(candidates[i].x);
    if (v > best || (v == best && candidates[i].id < best_id)) {
      best = v;
      best_id = candidates[i].id;
    }
  }
  return {best_id, best};
}

std::size_t Environment::count_moved(const Vector& before, const Vector& after, double delta) const {
  std::size_t moved = 0;
  for (const Arm& a : arms_) {
    if (std::abs(dot(a.x, after) - dot(a.x, before)) > delta) ++moved;
  }
  return moved;
}

Vector Environment::draw_change_candidate() {
  // U(0,1) magnitudes under a random global sign; see README "Environment".
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double sign = unif(change_rng_) < 0.5 ? 1.0 : -1.0;
  Vector v(config_.dim);
  for (double& e : v) e = sign * unif(change_rng_);
  rescale_to_unit_ball(v);
  return v;
}

void Environment::apply_change(double delta, double rho) {
  if (!(delta > 0.0)) throw std::invalid_argument("apply_change: delta must be > 0");
  if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("apply_change: rho must lie in [0, 1]");
  const auto required = static_cast<std::size_t>(std::ceil(rho * static_cast<double>(arms_.size())));
  for (std::size_t attempt = 0; attempt < kChangeAttemptBudget; ++attempt) {
    Vector candidate = draw_change_candidate();
    if (required == 0 || count_moved(theta_, candidate, delta) >= required) {
      theta_ = std::move(candidate);
      history_.push_back({round_, theta_});
      ++changes_applied_;
      return;
    }
  }
  throw ConfigError("apply_change: no parameter moving ceil(rho*K) = " + std::to_string(required) +
                    " arms by more than delta = " + std::to_string(delta) + " found within the " +
                    std::to_string(kChangeAttemptBudget) + "-candidate rejection budget");
}

void Environment::set_theta(const Vector& theta) {
  if (theta.size() != config_.dim || !theta.all_finite() || theta.norm2() > 1.0 + 1e-12) {
    throw std::invalid_argument("set_theta: need a finite d-vector with norm at most 1");
  }
  theta_ = theta;
  if (history_.back().round == round_) {
    history_.back().theta = theta_;
  } else {
    history_.push_back({round_, theta_});
  }
}

void Environment::step_clock() {
  ++round_;
  if (config_.rho > 0.0 && round_ % config_.period == 0) {
    const double delta = changes_applied_ < config_.delta_overrides.size()
                             ? config_.delta_overrides[changes_applied_]
                             : config_.delta_change;
    apply_change(delta, config_.rho);
  }
}

Trajectory Environment::trajectory() const {
  Trajectory t;
  t.seed = config_.seed;
  t.config_hash = config_.hash();
  t.config = config_;
  t.theta_history = history_;
  return t;
}

}  // namespace dlinucb
