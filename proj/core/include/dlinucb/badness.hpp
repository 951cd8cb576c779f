#pragma once

// Sliding-window "badness" bookkeeping for a slave model.
//
// The window holds the most recent tau error flags e_i(m). A slave created at
// round t_m holds min(t - t_m, tau) flags at round t. An empty window reports
// e_hat = 0 and d_t = 0, matching the initial statistics of a fresh slave.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <vector>

#include "dlinucb/types.hpp"

namespace dlinucb {

class BadnessWindow {
 public:
  BadnessWindow() = default;
  BadnessWindow(std::size_t capacity, Round created_at);

  void push(bool flag);

  std::size_t capacity() const noexcept { return capacity_; }
  Round created_at() const noexcept { return created_at_; }
  std::size_t size() const noexcept { return flags_.size(); }
  bool empty() const noexcept { return flags_.empty(); }
  std::size_t ones() const noexcept { return ones_; }
  /// Oldest first.
  std::vector<std::uint8_t> flags() const { return {flags_.begin(), flags_.end()}; }

  static BadnessWindow from_flags(std::size_t capacity, Round created_at,
                                  const std::vector<std::uint8_t>& flags);

 private:
  std::size_t capacity_ = 1;
  Round created_at_ = 0;
  std::deque<std::uint8_t> flags_;
  std::size_t ones_ = 0;
};

struct BadnessStats {
  double e_hat = 0.0;       // empirical badness
  double d_t = 0.0;         // Chernoff-Hoeffding width sqrt(ln(1/delta2) / (2 n))
  std::size_t window_len = 0;
};

/// Throws std::invalid_argument when delta2 is outside (0, 1).
BadnessStats badness_stats(const BadnessWindow& window, double delta2);

/// e_hat - sqrt(ln tau) * d_t, the lower confidence bound used to rank slaves.
double badness_lcb(const BadnessStats& stats, std::size_t tau);

}  // namespace dlinucb
