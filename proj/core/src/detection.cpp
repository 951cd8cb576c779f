#include "dlinucb/detection.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <stdexcept>

namespace dlinucb {

std::optional<double> DetectionReport::median_latency() const {
  std::vector<double> v;
  for (const auto& l : latencies) {
    if (l) v.push_back(static_cast<double>(*l));
  }
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double DetectionReport::matched_fraction() const {
  if (true_changes.empty()) return 1.0;
  return static_cast<double>(matched) / static_cast<double>(true_changes.size());
}

std::string DetectionReport::to_json() const {
  nlohmann::json j;
  j["true_changes"] = true_changes;
  j["detections"] = detections;
  auto lat = nlohmann::json::array();
  for (const auto& l : latencies) {
    if (l) {
      lat.push_back(*l);
    } else {
      lat.push_back(nullptr);
    }
  }
  j["latencies"] = std::move(lat);
  j["censored"] = true_changes.size() - matched;
  j["matched"] = matched;
  j["false_alarms"] = false_alarms;
  if (auto m = median_latency()) {
    j["median_latency"] = *m;
  } else {
    j["median_latency"] = nullptr;
  }
  return j.dump(2);
}

DetectionReport detection_report(const std::vector<Round>& true_changes,
                                 const std::vector<Round>& creations, Round horizon, std::size_t tau) {
  DetectionReport rep;
  rep.true_changes = true_changes;
  rep.detections = creations;
  std::sort(rep.true_changes.begin(), rep.true_changes.end());
  std::sort(rep.detections.begin(), rep.detections.end());

  std::vector<bool> used(rep.detections.size(), false);
  for (std::size_t j = 0; j < rep.true_changes.size(); ++j) {
    const Round start = rep.true_changes[j];
    const Round stop = j + 1 < rep.true_changes.size() ? rep.true_changes[j + 1] : horizon + 1;
    std::optional<Round> latency;
    for (std::size_t k = 0; k < rep.detections.size(); ++k) {
      const Round c = rep.detections[k];
      if (used[k] || c < start) continue;
      if (c >= stop) break;
      used[k] = true;
      latency = c - start;
      ++rep.matched;
      break;
    }
    rep.latencies.push_back(latency);
  }

  for (std::size_t k = 0; k < rep.detections.size(); ++k) {
    if (used[k]) continue;
    const Round c = rep.detections[k];
    const bool near_change = std::any_of(rep.true_changes.begin(), rep.true_changes.end(),
                                         [&](Round ch) { return c >= ch && c - ch <= tau; });
    if (!near_change) ++rep.false_alarms;
  }
  return rep;
}

std::vector<Round> EventLog::creation_rounds() const {
  std::vector<Round> out;
  for (const auto& ev : events) {
    if (ev.created) out.push_back(ev.round);
  }
  return out;
}

DetectionReport detection_report(const Trajectory& trajectory, const EventLog& log, std::size_t tau) {
  if (trajectory.seed != log.seed || trajectory.config_hash != log.config_hash) {
    throw std::invalid_argument("detection_report: event log and trajectory come from different runs");
  }
  return detection_report(trajectory.change_rounds(), log.creation_rounds(), trajectory.config.horizon,
                          tau);
}

}  // namespace dlinucb
