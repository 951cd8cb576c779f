#pragma once

// Simulation-side diagnostic: how much of a slave's training data was
// collected under a different reward parameter than the one now in force, and
// how wide its confidence multiplier must become to stay valid.

#include <cstddef>
#include <vector>

#include "dlinucb/environment.hpp"
#include "dlinucb/slave_model.hpp"
#include "dlinucb/types.hpp"

namespace dlinucb {

struct AssignedObservation {
  Round round = 0;
  Vector x;
};

struct ContaminationResult {
  double contamination = 0.0;  // C_t
  double alpha = 0.0;          // uncontaminated multiplier
  double alpha_widened = 0.0;  // alpha + C_t
  std::size_t contaminated = 0;
  std::size_t total = 0;
};

/// C_t = sum over observations absorbed outside the regime in force at `now`
/// of x^T (theta*_i - theta*_now). Throws std::invalid_argument when the log
/// length disagrees with the slave's observation count.
ContaminationResult contamination_diagnostic(const Trajectory& trajectory, const SlaveModel& slave,
                                             const std::vector<AssignedObservation>& log, Round now,
                                             const NoiseSpec& noise);

}  // namespace dlinucb
