#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "patrolsim/errors.hpp"
#include "patrolsim/event_log.hpp"
#include "patrolsim/metrics.hpp"
#include "patrolsim/network.hpp"
#include "patrolsim/policy.hpp"
#include "patrolsim/world.hpp"

namespace patrolsim {

enum class Algorithm { lr, cr, random_walk };

const char* to_string(Algorithm algorithm);
Algorithm algorithm_from_string(const std::string& name);

inline constexpr int kBaseId = 0;

struct TrialConfig {
  int cols = 20;
  int rows = 20;
  double cell_size = 30.0;
  double field_size = 600.0;  // must equal cols * cell_size (and rows * cell_size)
  int robots = 8;
  double speed = 1.25;
  double sense_range = 90.0;
  double comm_range = 180.0;
  PolicyParams policy{};
  std::int64_t duration = 40000;
  std::int64_t start_time = 0;
  std::uint64_t seed = 1;
  Algorithm algorithm = Algorithm::lr;
  bool collect_log = true;

  void validate() const;  // throws ConfigError naming the offending key
  std::string trial_id() const;
};

// Advances one patroller straight toward its target center by at most
// speed * 1s, clamping onto the center. The base and target-less robots
// stay put.
void move_robot(RobotState& robot, const GridMap& map);

// One deterministic trial. Step phases, in fixed order: motion, link
// update, visit registration, inbox delivery from end-of-previous-step
// snapshots, per-robot knowledge/policy update, metrics accumulation.
class Simulation {
 public:
  explicit Simulation(const TrialConfig& config);

  void step();
  void run();  // steps until duration is reached
  TrialResult finalize() const;

  std::int64_t now() const { return t_; }
  const TrialConfig& config() const { return cfg_; }
  const World& world() const { return world_; }
  const GridMap& map() const { return world_.map(); }
  const std::vector<RobotState>& robots() const { return robots_; }
  const KnowledgeBase& knowledge(int robot) const { return kbs_.at(robot); }
  const ReportState& report_state(int robot) const { return reports_.at(robot); }
  const ConnectivityState& links() const { return links_; }
  const EventLog& log() const { return log_; }
  EventLog release_log() { return std::move(log_); }

 private:
  void select_initial_targets();
  void take_snapshots();
  void log_link_changes(const ConnectivityState& before, const ConnectivityState& after,
                        std::int64_t t);
  void merge_base_inbox(const std::vector<const Envelope*>& inbox, std::int64_t t);

  TrialConfig cfg_;
  World world_;
  std::vector<RobotState> robots_;
  std::vector<KnowledgeBase> kbs_;
  std::vector<ReportState> reports_;
  std::vector<Envelope> snapshots_;  // end-of-previous-step broadcast state
  std::vector<std::mt19937_64> policy_rngs_;
  ConnectivityState links_;
  MetricsAccumulator metrics_;
  EventLog log_;
  std::mt19937_64 rng_;
  std::int64_t t_;
};

struct TrialRun {
  TrialResult result;
  EventLog log;
};

TrialRun run_trial(const TrialConfig& config);

}  // namespace patrolsim
