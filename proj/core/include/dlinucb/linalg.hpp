#pragma once

// Small dense linear algebra for d-dimensional ridge-regression state.
//
// Everything here is value-semantic. The matrices are tiny (d is at most a
// few hundred), so storage is a flat row-major std::vector<double>.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace dlinucb {

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim, double fill = 0.0) : data_(dim, fill) {}
  Vector(std::initializer_list<double> values) : data_(values) {}
  explicit Vector(std::vector<double> values) : data_(std::move(values)) {}

  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }
  const std::vector<double>& raw() const noexcept { return data_; }

  auto begin() noexcept { return data_.begin(); }
  auto end() noexcept { return data_.end(); }
  auto begin() const noexcept { return data_.begin(); }
  auto end() const noexcept { return data_.end(); }

  bool all_finite() const noexcept;
  double norm2() const noexcept;

  Vector& operator+=(const Vector& other);
  Vector& operator*=(double s) noexcept;

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> data_;
};

Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& v);

double dot(const Vector& a, const Vector& b);

/// d x d matrix in row-major order.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t dim, double fill = 0.0) : dim_(dim), data_(dim * dim, fill) {}
  SquareMatrix(std::size_t dim, std::vector<double> row_major);

  static SquareMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  std::span<const double> row_major() const noexcept { return data_; }

  bool all_finite() const noexcept;
  bool is_symmetric(double tol = 1e-9) const noexcept;
  /// Cholesky succeeds iff the (symmetric) matrix is positive definite.
  bool is_positive_definite() const;
  double max_abs_diff(const SquareMatrix& other) const;

  /// Replace with (M + M^T) / 2.
  void symmetrize() noexcept;

  Vector operator*(const Vector& x) const;

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// lambda * I. Throws std::invalid_argument for d == 0 or lambda <= 0.
SquareMatrix identity_scaled(std::size_t d, double lambda);

/// (A + x x^T)^{-1} from A^{-1} via Sherman-Morrison.
///
/// Throws std::invalid_argument on dimension mismatch or non-finite input and
/// std::domain_error when 1 + x^T A^{-1} x <= 0, which cannot happen for an SPD
/// argument and therefore means the state is corrupted.
SquareMatrix rank_one_inverse_update(const SquareMatrix& a_inv, const Vector& x);
void rank_one_inverse_update_in_place(SquareMatrix& a_inv, const Vector& x);

/// A += x x^T.
void rank_one_add_in_place(SquareMatrix& a, const Vector& x);

/// sqrt(x^T A^{-1} x), given A^{-1}.
double mahalanobis_norm(const SquareMatrix& a_inv, const Vector& x);

/// A^{-1} b, given A^{-1}.
Vector solve_estimate(const SquareMatrix& a_inv, const Vector& b);

}  // namespace dlinucb
