#include "dlinucb/replay.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dlinucb/output.hpp"

namespace dlinucb {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

void ReplayLog::validate() const {
  for (const auto& row : rows) {
    if (row.candidates.size() != pool_size) {
      throw std::invalid_argument("replay log round " + std::to_string(row.round) +
                                  ": wrong candidate count");
    }
    bool found = false;
    for (const auto& c : row.candidates) {
      if (c.x.size() != dim) {
        throw std::invalid_argument("replay log round " + std::to_string(row.round) +
                                    ": wrong feature dimension");
      }
      found = found || c.id == row.logged_arm;
    }
    if (!found) {
      throw std::invalid_argument("replay log round " + std::to_string(row.round) +
                                  ": logged arm is not a candidate");
    }
  }
}

void write_replay_log(std::ostream& out, const ReplayLog& log) {
  out << "round,logged_arm,reward";
  for (std::size_t k = 0; k < log.pool_size; ++k) {
    out << ",cand" << k << "_id";
    for (std::size_t f = 0; f < log.dim; ++f) out << ",cand" << k << "_f" << f;
  }
  out << '\n';
  for (const auto& row : log.rows) {
    out << row.round << ',' << row.logged_arm << ',' << format_double(row.reward);
    for (const auto& c : row.candidates) {
      out << ',' << c.id;
      for (double v : c.x) out << ',' << format_double(v);
    }
    out << '\n';
  }
}

ReplayLog read_replay_log(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("replay log: missing header");
  const auto header = split(line);
  if (header.size() < 3 || header[0] != "round" || header[1] != "logged_arm" || header[2] != "reward") {
    throw std::invalid_argument("replay log: header must start with round,logged_arm,reward");
  }
  ReplayLog log;
  for (std::size_t i = 3; i < header.size(); ++i) {
    const auto& h = header[i];
    if (h.size() > 3 && h.rfind("_id") == h.size() - 3) ++log.pool_size;
  }
  if (log.pool_size == 0) {
    if (header.size() != 3) throw std::invalid_argument("replay log: malformed candidate columns");
  } else {
    const std::size_t per = (header.size() - 3) / log.pool_size;
    if (per < 1 || per * log.pool_size != header.size() - 3) {
      throw std::invalid_argument("replay log: candidate columns are not a whole number of blocks");
    }
    log.dim = per - 1;
  }

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != header.size()) {
      throw std::invalid_argument("replay log line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(header.size()) + " fields, got " +
                                  std::to_string(c.size()));
    }
    ReplayRow row;
    try {
      row.round = std::stoull(c[0]);
      row.logged_arm = static_cast<ArmId>(std::stoul(c[1]));
      row.reward = std::stod(c[2]);
      std::size_t pos = 3;
      for (std::size_t k = 0; k < log.pool_size; ++k) {
        Arm a;
        a.id = static_cast<ArmId>(std::stoul(c[pos++]));
        a.x = Vector(log.dim);
        for (std::size_t f = 0; f < log.dim; ++f) a.x[f] = std::stod(c[pos++]);
        row.candidates.push_back(std::move(a));
      }
    } catch (const std::logic_error&) {
      throw std::invalid_argument("replay log line " + std::to_string(lineno) + ": bad number");
    }
    log.rows.push_back(std::move(row));
  }
  log.validate();
  return log;
}

ReplayResult replay_evaluate(const ReplayLog& log, Agent& agent) {
  ReplayResult res;
  res.rows = log.rows.size();
  for (const auto& row : log.rows) {
    agent.begin_round(row.round);
    const ArmId choice = agent.choose(row.candidates);
    if (choice != row.logged_arm) continue;
    const auto it = std::find_if(row.candidates.begin(), row.candidates.end(),
                                 [&](const Arm& a) { return a.id == choice; });
    ++res.matched;
    res.reward_sum += row.reward;
    agent.learn(it->x, row.reward);
  }
  if (res.matched > 0) res.ctr = res.reward_sum / static_cast<double>(res.matched);
  return res;
}

GeneratedLog generate_replay_log(const EnvConfig& env_cfg, const GenLogOptions& opts) {
  if (opts.fixed_p && !(*opts.fixed_p >= 0.0 && *opts.fixed_p <= 1.0)) {
    throw std::invalid_argument("gen-log: fixed click probability must lie in [0, 1]");
  }
  Environment env(env_cfg);
  Rng logger = make_stream(env_cfg.seed, "logger");
  Rng clicks = make_stream(env_cfg.seed, "clicks");
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  auto click_p = [&](const Vector& x) {
    return opts.fixed_p ? *opts.fixed_p : std::clamp(env.expected_reward(x), 0.0, 1.0);
  };

  GeneratedLog out;
  out.log.dim = env_cfg.dim;
  out.log.pool_size = env_cfg.pool_per_round;
  out.log.rows.reserve(opts.rows);
  double value = 0.0;
  for (std::size_t i = 0; i < opts.rows; ++i) {
    env.step_clock();
    ReplayRow row;
    row.round = env.round();
    row.candidates = env.sample_candidates(env_cfg.pool_per_round);
    std::uniform_int_distribution<std::size_t> pick(0, row.candidates.size() - 1);
    const Arm& logged = row.candidates[pick(logger)];
    row.logged_arm = logged.id;

    double mean = 0.0;
    for (const auto& c : row.candidates) {
      mean += opts.reward == LogReward::kBernoulli ? click_p(c.x) : env.expected_reward(c.x);
    }
    value += mean / static_cast<double>(row.candidates.size());

    if (opts.reward == LogReward::kBernoulli) {
      row.reward = unif(clicks) < click_p(logged.x) ? 1.0 : 0.0;
    } else {
      row.reward = env.reward(logged.x);
    }
    out.log.rows.push_back(std::move(row));
  }
  if (opts.rows > 0) out.uniform_policy_value = value / static_cast<double>(opts.rows);
  return out;
}

}  // namespace dlinucb
