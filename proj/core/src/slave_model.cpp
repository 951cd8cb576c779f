#include "dlinucb/slave_model.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace dlinucb {

double noise_threshold(double sigma, double delta1) {
  if (!(delta1 > 0.0 && delta1 < 1.0)) {
    throw std::invalid_argument("noise_threshold: delta1 must lie in (0, 1)");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw std::invalid_argument("noise_threshold: sigma must be finite and >= 0");
  }
  if (sigma == 0.0) return 0.0;
  return std::sqrt(2.0) * sigma * boost::math::erf_inv(1.0 - delta1);
}

NoiseSpec NoiseSpec::make(double sigma, double delta1) {
  return NoiseSpec{sigma, delta1, noise_threshold(sigma, delta1)};
}

SlaveModel::SlaveModel(std::size_t dim, double lambda, Round created_at, std::size_t window_capacity)
    : dim_(dim),
      lambda_(lambda),
      created_at_(created_at),
      a_(identity_scaled(dim, lambda)),
      a_inv_(identity_scaled(dim, 1.0 / lambda)),
      b_(dim),
      theta_hat_(dim),
      badness_(window_capacity, created_at) {}

void SlaveModel::require_dim(const Vector& x, const char* what) const {
  if (x.size() != dim_) {
    throw std::invalid_argument(std::string("SlaveModel::") + what + ": expected dimension " +
                                std::to_string(dim_) + ", got " + std::to_string(x.size()));
  }
}

double SlaveModel::predict(const Vector& x) const {
  require_dim(x, "predict");
  return dot(x, theta_hat_);
}

double SlaveModel::alpha(const NoiseSpec& noise) const {
  const double n = static_cast<double>(obs_count_);
  const double d = static_cast<double>(dim_);
  return noise.sigma * noise.sigma * std::sqrt(d * std::log1p(n / (lambda_ * noise.delta1))) +
         std::sqrt(lambda_);
}

double SlaveModel::confidence_bound(const Vector& x, const NoiseSpec& noise) const {
  require_dim(x, "confidence_bound");
  return alpha(noise) * mahalanobis_norm(a_inv_, x);
}

double SlaveModel::ucb_score(const Vector& x, const NoiseSpec& noise) const {
  return predict(x) + confidence_bound(x, noise);
}

ArmId SlaveModel::select_arm(ArmPool pool, const NoiseSpec& noise) const {
  if (pool.empty()) throw std::invalid_argument("SlaveModel::select_arm: empty arm pool");
  const double a = alpha(noise);
  ArmId best_id = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  bool first = true;
  for (const Arm& arm : pool) {
    require_dim(arm.x, "select_arm");
    const double score = dot(arm.x, theta_hat_) + a * mahalanobis_norm(a_inv_, arm.x);
    if (first || score > best_score || (score == best_score && arm.id < best_id)) {
      best_score = score;
      best_id = arm.id;
      first = false;
    }
  }
  return best_id;
}

bool SlaveModel::error_indicator(const Vector& x, double r, const NoiseSpec& noise) const {
  return std::abs(predict(x) - r) > confidence_bound(x, noise) + noise.epsilon;
}

void SlaveModel::absorb(const Vector& x, double r) {
  require_dim(x, "absorb");
  if (!std::isfinite(r) || !x.all_finite()) {
    throw std::invalid_argument("SlaveModel::absorb: non-finite observation");
  }
  rank_one_inverse_update_in_place(a_inv_, x);
  rank_one_add_in_place(a_, x);
  for (std::size_t i = 0; i < dim_; ++i) b_[i] += x[i] * r;
  ++obs_count_;
  if (obs_count_ % kSymmetrizeEvery == 0) a_inv_.symmetrize();
  theta_hat_ = solve_estimate(a_inv_, b_);
}

std::string SlaveModel::to_json() const {
  nlohmann::json j;
  j["dim"] = dim_;
  j["lambda"] = lambda_;
  j["A_inv"] = std::vector<double>(a_inv_.row_major().begin(), a_inv_.row_major().end());
  j["A"] = std::vector<double>(a_.row_major().begin(), a_.row_major().end());
  j["b"] = b_.raw();
  j["obs_count"] = obs_count_;
  j["created_at"] = created_at_;
  j["window_capacity"] = badness_.capacity();
  j["badness_flags"] = badness_.flags();
  return j.dump();
}

SlaveModel SlaveModel::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const auto dim = j.at("dim").get<std::size_t>();
  const auto lambda = j.at("lambda").get<double>();
  const auto created_at = j.at("created_at").get<Round>();
  const auto capacity = j.value("window_capacity", std::size_t{1});
  SlaveModel m(dim, lambda, created_at, capacity);
  m.a_inv_ = SquareMatrix(dim, j.at("A_inv").get<std::vector<double>>());
  if (j.contains("A")) {
    m.a_ = SquareMatrix(dim, j.at("A").get<std::vector<double>>());
  }
  m.b_ = Vector(j.at("b").get<std::vector<double>>());
  if (m.b_.size() != dim) throw std::invalid_argument("SlaveModel::from_json: b has wrong length");
  m.obs_count_ = j.at("obs_count").get<std::size_t>();
  if (j.contains("badness_flags")) {
    m.badness_ = BadnessWindow::from_flags(capacity, created_at,
                                           j.at("badness_flags").get<std::vector<std::uint8_t>>());
  }
  m.theta_hat_ = solve_estimate(m.a_inv_, m.b_);
  return m;
}

}  // namespace dlinucb
