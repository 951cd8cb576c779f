#include "dlinucb/badness.hpp"

#include <cmath>
#include <stdexcept>

namespace dlinucb {

BadnessWindow::BadnessWindow(std::size_t capacity, Round created_at)
    : capacity_(capacity), created_at_(created_at) {
  if (capacity_ == 0) throw std::invalid_argument("BadnessWindow: capacity must be >= 1");
}

void BadnessWindow::push(bool flag) {
  flags_.push_back(flag ? 1 : 0);
  ones_ += flag ? 1 : 0;
  if (flags_.size() > capacity_) {
    ones_ -= flags_.front();
    flags_.pop_front();
  }
}

BadnessWindow BadnessWindow::from_flags(std::size_t capacity, Round created_at,
                                        const std::vector<std::uint8_t>& flags) {
  if (flags.size() > capacity) {
    throw std::invalid_argument("BadnessWindow: more flags than capacity");
  }
  BadnessWindow w(capacity, created_at);
  for (std::uint8_t f : flags) {
    if (f > 1) throw std::invalid_argument("BadnessWindow: flags must be 0 or 1");
    w.push(f == 1);
  }
  return w;
}

BadnessStats badness_stats(const BadnessWindow& window, double delta2) {
  if (!(delta2 > 0.0 && delta2 < 1.0)) {
    throw std::invalid_argument("badness_stats: delta2 must lie in (0, 1)");
  }
  BadnessStats s;
  s.window_len = window.size();
  if (s.window_len == 0) return s;
  const auto n = static_cast<double>(s.window_len);
  s.e_hat = static_cast<double>(window.ones()) / n;
  s.d_t = std::sqrt(std::log(1.0 / delta2) / (2.0 * n));
  return s;
}

double badness_lcb(const BadnessStats& stats, std::size_t tau) {
  return stats.e_hat - std::sqrt(std::log(static_cast<double>(tau))) * stats.d_t;
}

}  // namespace dlinucb
