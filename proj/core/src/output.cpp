#include "dlinucb/output.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace dlinucb {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::ofstream open_for_write(const std::filesystem::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trace_csv(std::ostream& out, const std::vector<AgentRun>& runs) {
  out << kTraceHeader << '\n';
  for (const auto& run : runs) {
    for (const auto& r : run.rows) {
      out << r.round << ',' << run.agent << ',' << run.seed << ',' << r.arm << ','
          << format_double(r.reward) << ',' << format_double(r.regret_inc) << ','
          << format_double(r.regret_cum) << ',' << r.n_slaves << ',' << (r.created ? 1 : 0) << ','
          << r.discarded << '\n';
    }
  }
}

std::map<std::string, std::vector<RoundRow>> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) {
    throw std::invalid_argument("trace CSV: unexpected header");
  }
  std::map<std::string, std::vector<RoundRow>> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto c = split_csv(line);
    if (c.size() != 10) {
      throw std::invalid_argument("trace CSV line " + std::to_string(lineno) + ": expected 10 fields");
    }
    RoundRow r;
    try {
      r.round = std::stoull(c[0]);
      r.arm = static_cast<ArmId>(std::stoul(c[3]));
      r.reward = std::stod(c[4]);
      r.regret_inc = std::stod(c[5]);
      r.regret_cum = std::stod(c[6]);
      r.n_slaves = std::stoull(c[7]);
      r.created = c[8] == "1";
      r.discarded = std::stoull(c[9]);
    } catch (const std::exception&) {
      throw std::invalid_argument("trace CSV line " + std::to_string(lineno) + ": bad number");
    }
    out[c[1]].push_back(r);
  }
  return out;
}

void write_events_jsonl(std::ostream& out, const std::vector<StepEvents>& events) {
  for (const auto& ev : events) out << ev.to_json_line() << '\n';
}

std::vector<StepEvents> read_events_jsonl(std::istream& in) {
  std::vector<StepEvents> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(StepEvents::from_json_line(line));
  }
  return out;
}

void write_experiment(const RunConfig& cfg, const ExperimentResult& result) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec || !fs::is_directory(cfg.output_dir)) {
    throw std::runtime_error("cannot create output directory " + cfg.output_dir.string());
  }
  for (const auto& sr : result.seeds) {
    const std::string tag = "seed" + std::to_string(sr.seed);
    if (cfg.emit_per_round) {
      auto out = open_for_write(cfg.output_dir / ("trace_" + tag + ".csv"));
      write_trace_csv(out, sr.runs);
      for (const auto& run : sr.runs) {
        if (run.events.empty()) continue;
        auto ev = open_for_write(cfg.output_dir / ("events_" + run.agent + "_" + tag + ".jsonl"));
        write_events_jsonl(ev, run.events);
      }
    }
    open_for_write(cfg.output_dir / ("trajectory_" + tag + ".json")) << sr.trajectory.to_json() << '\n';
    if (sr.detection) {
      open_for_write(cfg.output_dir / ("detection_" + tag + ".json")) << sr.detection->to_json() << '\n';
    }
  }
  open_for_write(cfg.output_dir / "summary.json") << result.summary.to_json() << '\n';
}

std::vector<SavedRun> load_saved_runs(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw std::runtime_error("no such directory: " + dir.string());
  static const std::regex trace_re(R"(trace_seed(\d+)\.csv)");
  static const std::regex events_re(R"(events_(.+)_seed(\d+)\.jsonl)");
  std::map<std::uint64_t, SavedRun> by_seed;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    std::smatch m;
    if (std::regex_match(name, m, trace_re)) {
      const auto seed = std::stoull(m[1]);
      std::istringstream in(slurp(entry.path()));
      auto& run = by_seed[seed];
      run.seed = seed;
      run.traces = read_trace_csv(in);
      const auto traj = dir / ("trajectory_seed" + std::to_string(seed) + ".json");
      if (fs::exists(traj)) run.trajectory = Trajectory::from_json(slurp(traj));
    } else if (std::regex_match(name, m, events_re)) {
      const auto seed = std::stoull(m[2]);
      std::istringstream in(slurp(entry.path()));
      by_seed[seed].events[m[1]] = read_events_jsonl(in);
    }
  }
  std::vector<SavedRun> out;
  for (auto& [seed, run] : by_seed) {
    if (!run.traces.empty()) out.push_back(std::move(run));
  }
  return out;
}

}  // namespace dlinucb
