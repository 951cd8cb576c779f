#include "dlinucb/detection.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <stdexcept>

using namespace dlinucb;

TEST(DetectionReport, CreationAtEveryChange) {
  const std::vector<Round> changes{800, 1600, 2400};
  const auto r = detection_report(changes, changes, 5000, 200);
  EXPECT_EQ(r.matched, 3u);
  for (const auto& l : r.latencies) EXPECT_EQ(l, Round{0});
  EXPECT_EQ(r.false_alarms, 0u);
  EXPECT_EQ(r.median_latency(), 0.0);
}

TEST(DetectionReport, NoCreationsCensorsEverything) {
  const auto r = detection_report({800, 1600}, {}, 5000, 200);
  EXPECT_EQ(r.matched, 0u);
  EXPECT_FALSE(r.latencies[0].has_value());
  EXPECT_FALSE(r.latencies[1].has_value());
  EXPECT_FALSE(r.median_latency().has_value());
  const auto j = nlohmann::json::parse(r.to_json());
  EXPECT_EQ(j["censored"], 2);
  EXPECT_TRUE(j["median_latency"].is_null());
}

TEST(DetectionReport, ScriptedSingleLatency) {
  const auto r = detection_report({800}, {805}, 5000, 200);
  ASSERT_EQ(r.latencies.size(), 1u);
  EXPECT_EQ(r.latencies[0], Round{5});
  EXPECT_EQ(r.false_alarms, 0u);
}

TEST(DetectionReport, EachDetectionMatchedAtMostOnce) {
  // A missed change does not borrow the next change's detection.
  const auto r = detection_report({800, 1600}, {1610}, 5000, 200);
  EXPECT_FALSE(r.latencies[0].has_value());
  EXPECT_EQ(r.latencies[1], Round{10});
  EXPECT_EQ(r.matched, 1u);
}

TEST(DetectionReport, FalseAlarmsAreFarFromChanges) {
  // 100 and 1500 are far from any change; 850 is a second creation within tau.
  const auto r = detection_report({800}, {100, 820, 850, 1500}, 5000, 200);
  EXPECT_EQ(r.latencies[0], Round{20});
  EXPECT_EQ(r.false_alarms, 2u);
  EXPECT_DOUBLE_EQ(r.matched_fraction(), 1.0);
}

TEST(DetectionReport, TrajectoryMismatchThrows) {
  Trajectory tr;
  tr.seed = 1;
  tr.config_hash = 2;
  tr.theta_history.push_back({0, Vector{0.0}});
  EventLog log{1, 3, {}};
  EXPECT_THROW(detection_report(tr, log, 200), std::invalid_argument);
  log.config_hash = 2;
  EXPECT_NO_THROW(detection_report(tr, log, 200));
}
