#pragma once

// A single LinUCB learner: ridge estimate, UCB arm scoring, and the
// prediction-error indicator used by the master to judge whether the learner
// still describes the environment.

#include <cstddef>
#include <string>

#include "dlinucb/badness.hpp"
#include "dlinucb/linalg.hpp"
#include "dlinucb/types.hpp"

namespace dlinucb {

/// sqrt(2) * sigma * erfinv(1 - delta1): P(|eta| <= epsilon) = 1 - delta1 for
/// eta ~ N(0, sigma^2). Throws std::invalid_argument for delta1 outside (0, 1)
/// or negative sigma.
double noise_threshold(double sigma, double delta1);

struct NoiseSpec {
  double sigma = 0.05;
  double delta1 = 0.1;
  double epsilon = 0.0;

  /// Fills epsilon from sigma and delta1.
  static NoiseSpec make(double sigma, double delta1);
};

class SlaveModel {
 public:
  /// Resymmetrize A^{-1} after this many absorptions.
  static constexpr std::size_t kSymmetrizeEvery = 1000;

  SlaveModel(std::size_t dim, double lambda, Round created_at, std::size_t window_capacity = 1);

  std::size_t dim() const noexcept { return dim_; }
  double lambda() const noexcept { return lambda_; }
  Round created_at() const noexcept { return created_at_; }
  std::size_t obs_count() const noexcept { return obs_count_; }

  const SquareMatrix& a() const noexcept { return a_; }
  const SquareMatrix& a_inv() const noexcept { return a_inv_; }
  const Vector& b() const noexcept { return b_; }
  const Vector& theta_hat() const noexcept { return theta_hat_; }

  BadnessWindow& badness() noexcept { return badness_; }
  const BadnessWindow& badness() const noexcept { return badness_; }

  double predict(const Vector& x) const;

  /// alpha = sigma^2 sqrt(d ln(1 + n / (lambda delta1))) + sqrt(lambda), n = obs_count.
  double alpha(const NoiseSpec& noise) const;
  /// alpha * ||x||_{A^{-1}}.
  double confidence_bound(const Vector& x, const NoiseSpec& noise) const;
  double ucb_score(const Vector& x, const NoiseSpec& noise) const;

  /// argmax of predict + confidence_bound; ties go to the lowest arm id.
  /// Throws std::invalid_argument on an empty pool.
  ArmId select_arm(ArmPool pool, const NoiseSpec& noise) const;

  /// |predict(x) - r| > confidence_bound(x) + epsilon, on the current state.
  bool error_indicator(const Vector& x, double r, const NoiseSpec& noise) const;

  /// A += x x^T, b += r x, theta_hat = A^{-1} b.
  void absorb(const Vector& x, double r);

  /// JSON checkpoint: dim, lambda, A_inv (row-major), b, obs_count, created_at,
  /// plus A and the badness window so a restored model behaves identically.
  std::string to_json() const;
  static SlaveModel from_json(const std::string& text);

 private:
  void require_dim(const Vector& x, const char* what) const;

  std::size_t dim_;
  double lambda_;
  Round created_at_;
  std::size_t obs_count_ = 0;
  SquareMatrix a_;
  SquareMatrix a_inv_;
  Vector b_;
  Vector theta_hat_;
  BadnessWindow badness_;
};

}  // namespace dlinucb
