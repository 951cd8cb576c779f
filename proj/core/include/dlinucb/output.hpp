#pragma once

// On-disk formats of a simulation run.
//
//   trace_seed<N>.csv        round,agent,seed,arm,reward,regret_inc,regret_cum,n_slaves,created,discarded
//   events_<agent>_seed<N>.jsonl   one StepEvents JSON object per round
//   trajectory_seed<N>.json  environment ground truth
//   detection_seed<N>.json   detection report of the first dLinUCB agent
//   summary.json             mean +- std of final regret per agent
//
// Floating-point values in the CSV use 17 significant digits.

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dlinucb/experiment.hpp"

namespace dlinucb {

inline constexpr const char* kTraceHeader =
    "round,agent,seed,arm,reward,regret_inc,regret_cum,n_slaves,created,discarded";

/// %.17g
std::string format_double(double v);

void write_trace_csv(std::ostream& out, const std::vector<AgentRun>& runs);
/// Rows grouped by agent label, in file order.
std::map<std::string, std::vector<RoundRow>> read_trace_csv(std::istream& in);

void write_events_jsonl(std::ostream& out, const std::vector<StepEvents>& events);
std::vector<StepEvents> read_events_jsonl(std::istream& in);

/// Writes every per-seed file plus summary.json under cfg.output_dir.
/// Throws std::runtime_error when the directory cannot be created or written.
void write_experiment(const RunConfig& cfg, const ExperimentResult& result);

struct SavedRun {
  std::uint64_t seed = 0;
  std::map<std::string, std::vector<RoundRow>> traces;
  std::optional<Trajectory> trajectory;
  std::map<std::string, std::vector<StepEvents>> events;
};

/// Loads every trace_seed*.csv (and matching trajectory/events files) in `dir`.
std::vector<SavedRun> load_saved_runs(const std::filesystem::path& dir);

}  // namespace dlinucb
