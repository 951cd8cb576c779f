#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dlinucb/environment.hpp"
#include "dlinucb/master_policy.hpp"
#include "dlinucb/types.hpp"

namespace dlinucb {

struct DetectionReport {
  std::vector<Round> true_changes;
  std::vector<Round> detections;                 // rounds at which a slave was created
  std::vector<std::optional<Round>> latencies;   // per true change; nullopt = censored
  std::size_t matched = 0;
  std::size_t false_alarms = 0;

  /// Median over matched changes; nullopt when nothing matched.
  std::optional<double> median_latency() const;
  double matched_fraction() const;

  std::string to_json() const;
};

/// Matches each true change to the first unmatched creation in
/// [change, next change), or [change, horizon] for the last one. A creation
/// that is unmatched and not within tau rounds after any true change counts
/// as a false alarm.
DetectionReport detection_report(const std::vector<Round>& true_changes,
                                 const std::vector<Round>& creations, Round horizon, std::size_t tau);

/// Slave-creation events of one dLinUCB run, tagged with the run identity.
struct EventLog {
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
  std::vector<StepEvents> events;

  std::vector<Round> creation_rounds() const;
};

/// Throws std::invalid_argument when the log and the trajectory come from different runs.
DetectionReport detection_report(const Trajectory& trajectory, const EventLog& log, std::size_t tau);

}  // namespace dlinucb
