#include "dlinucb/contamination.hpp"

#include <stdexcept>
#include <string>

namespace dlinucb {

ContaminationResult contamination_diagnostic(const Trajectory& trajectory, const SlaveModel& slave,
                                             const std::vector<AssignedObservation>& log, Round now,
                                             const NoiseSpec& noise) {
  if (log.size() != slave.obs_count()) {
    throw std::invalid_argument("contamination_diagnostic: assignment log has " +
                                std::to_string(log.size()) + " entries but the slave absorbed " +
                                std::to_string(slave.obs_count()));
  }
  const std::size_t current = trajectory.regime_at(now);
  const Vector& theta_now = trajectory.theta_history[current].theta;

  ContaminationResult res;
  res.total = log.size();
  for (const auto& obs : log) {
    const std::size_t regime = trajectory.regime_at(obs.round);
    if (regime == current) continue;
    ++res.contaminated;
    res.contamination += dot(obs.x, trajectory.theta_history[regime].theta) - dot(obs.x, theta_now);
  }
  res.alpha = slave.alpha(noise);
  res.alpha_widened = res.alpha + res.contamination;
  return res;
}

}  // namespace dlinucb
