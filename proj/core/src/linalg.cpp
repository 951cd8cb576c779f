#include "dlinucb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dlinucb {
namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

bool Vector::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double Vector::norm2() const noexcept {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

Vector& Vector::operator+=(const Vector& other) {
  require_same_dim(size(), other.size(), "Vector::operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Vector& Vector::operator*=(double s) noexcept {
  for (double& v : data_) v *= s;
  return *this;
}

Vector operator-(const Vector& a, const Vector& b) {
  require_same_dim(a.size(), b.size(), "Vector::operator-");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector operator*(double s, const Vector& v) {
  Vector out = v;
  out *= s;
  return out;
}

double dot(const Vector& a, const Vector& b) {
  require_same_dim(a.size(), b.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

SquareMatrix::SquareMatrix(std::size_t dim, std::vector<double> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (data_.size() != dim_ * dim_) {
    throw std::invalid_argument("SquareMatrix: expected " + std::to_string(dim_ * dim_) +
                                " entries, got " + std::to_string(data_.size()));
  }
}

SquareMatrix SquareMatrix::identity(std::size_t dim) {
  SquareMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

bool SquareMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

bool SquareMatrix::is_symmetric(double tol) const noexcept {
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r + 1; c < dim_; ++c) {
      if (std::abs((*this)(r, c) - (*this)(c, r)) > tol) return false;
    }
  }
  return true;
}

bool SquareMatrix::is_positive_definite() const {
  std::vector<double> l(dim_ * dim_, 0.0);
  for (std::size_t j = 0; j < dim_; ++j) {
    double diag = (*this)(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l[j * dim_ + k] * l[j * dim_ + k];
    if (!(diag > 0.0)) return false;
    const double ljj = std::sqrt(diag);
    l[j * dim_ + j] = ljj;
    for (std::size_t i = j + 1; i < dim_; ++i) {
      double s = (*this)(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l[i * dim_ + k] * l[j * dim_ + k];
      l[i * dim_ + j] = s / ljj;
    }
  }
  return true;
}

double SquareMatrix::max_abs_diff(const SquareMatrix& other) const {
  require_same_dim(dim_, other.dim_, "SquareMatrix::max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
  }
  return worst;
}

void SquareMatrix::symmetrize() noexcept {
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r + 1; c < dim_; ++c) {
      const double avg = 0.5 * ((*this)(r, c) + (*this)(c, r));
      (*this)(r, c) = avg;
      (*this)(c, r) = avg;
    }
  }
}

Vector SquareMatrix::operator*(const Vector& x) const {
  require_same_dim(dim_, x.size(), "SquareMatrix::operator*");
  Vector out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    double s = 0.0;
    const double* row = data_.data() + r * dim_;
    for (std::size_t c = 0; c < dim_; ++c) s += row[c] * x[c];
    out[r] = s;
  }
  return out;
}

SquareMatrix identity_scaled(std::size_t d, double lambda) {
  if (d == 0) throw std::invalid_argument("identity_scaled: dimension must be >= 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("identity_scaled: lambda must be a finite positive number");
  }
  SquareMatrix m(d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = lambda;
  return m;
}

void rank_one_inverse_update_in_place(SquareMatrix& a_inv, const Vector& x) {
  const std::size_t d = a_inv.dim();
  require_same_dim(d, x.size(), "rank_one_inverse_update");
  if (!x.all_finite() || !a_inv.all_finite()) {
    throw std::invalid_argument("rank_one_inverse_update: non-finite input");
  }
  // u = A^{-1} x, w = A^{-T} x; identical when A^{-1} is exactly symmetric.
  Vector u(d);
  Vector w(d);
  for (std::size_t r = 0; r < d; ++r) {
    double su = 0.0;
    double sw = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
      su += a_inv(r, c) * x[c];
      sw += a_inv(c, r) * x[c];
    }
    u[r] = su;
    w[r] = sw;
  }
  const double denom = 1.0 + dot(x, u);
  if (!(denom > 0.0)) {
    throw std::domain_error("rank_one_inverse_update: 1 + x^T A^{-1} x <= 0 (A^{-1} is not SPD)");
  }
  const double inv = 1.0 / denom;
  for (std::size_t r = 0; r < d; ++r) {
    const double ur = u[r] * inv;
    for (std::size_t c = 0; c < d; ++c) a_inv(r, c) -= ur * w[c];
  }
}

SquareMatrix rank_one_inverse_update(const SquareMatrix& a_inv, const Vector& x) {
  SquareMatrix out = a_inv;
  rank_one_inverse_update_in_place(out, x);
  return out;
}

void rank_one_add_in_place(SquareMatrix& a, const Vector& x) {
  require_same_dim(a.dim(), x.size(), "rank_one_add");
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < a.dim(); ++c) a(r, c) += x[r] * x[c];
  }
}

double mahalanobis_norm(const SquareMatrix& a_inv, const Vector& x) {
  require_same_dim(a_inv.dim(), x.size(), "mahalanobis_norm");
  const double q = dot(x, a_inv * x);
  // Round-off can push a true zero slightly negative.
  return std::sqrt(std::max(q, 0.0));
}

Vector solve_estimate(const SquareMatrix& a_inv, const Vector& b) {
  require_same_dim(a_inv.dim(), b.size(), "solve_estimate");
  return a_inv * b;
}

}  // namespace dlinucb
