#pragma once

// Reference implementations used only by tests. They share no code with the
// library: plain nested vectors, textbook elimination, bisection.

#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using Mat = std::vector<std::vector<double>>;
using Vec = std::vector<double>;

inline Mat gauss_jordan_inverse(Mat a) {
  const std::size_t n = a.size();
  Mat inv(n, Vec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (a[piv][col] == 0.0) throw std::runtime_error("singular");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const double p = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= p;
      inv[col][c] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

/// Gaussian elimination with partial pivoting and back substitution.
inline Vec gaussian_solve(Mat a, Vec b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  Vec x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return x;
}

inline Vec matvec(const Mat& a, const Vec& x) {
  Vec y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  }
  return y;
}

inline double inner(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// M M^T + shift I with M ~ U(-1, 1)^{d x d}.
template <class Rng>
Mat random_spd(std::size_t d, Rng& rng, double shift = 0.5) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat m(d, Vec(d));
  for (auto& row : m) {
    for (double& v : row) v = u(rng);
  }
  Mat a(d, Vec(d, 0.0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) a[i][j] += m[i][k] * m[j][k];
    }
    a[i][i] += shift;
  }
  return a;
}

template <class Rng>
Vec random_vec(std::size_t d, Rng& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(d);
  for (double& e : v) e = u(rng);
  return v;
}

/// erf^{-1}(y) for y in [0, 1) by bisection on std::erf.
inline double erfinv_bisect(double y) {
  double lo = 0.0;
  double hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::erf(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// (lambda I + X^T X)^{-1} X^T r by explicit inversion.
inline Vec batch_ridge(const std::vector<Vec>& xs, const Vec& rs, double lambda) {
  const std::size_t d = xs.front().size();
  Mat a(d, Vec(d, 0.0));
  Vec xr(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) a[i][i] = lambda;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    for (std::size_t i = 0; i < d; ++i) {
      xr[i] += xs[t][i] * rs[t];
      for (std::size_t j = 0; j < d; ++j) a[i][j] += xs[t][i] * xs[t][j];
    }
  }
  return matvec(gauss_jordan_inverse(a), xr);
}

/// Half-width of a two-sided 99% normal-approximation binomial interval.
inline double binomial_slack99(double p, double n) { return 2.5758293035489 * std::sqrt(p * (1.0 - p) / n); }

}  // namespace oracle
