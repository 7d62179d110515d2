#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "patrolsim/knowledge.hpp"
#include "patrolsim/network.hpp"
#include "patrolsim/world.hpp"

namespace patrolsim {

struct PolicyParams {
  double need_max = 3000.0;         // cap on the report-need scalar
  double need_pivot = 500.0;        // switch point between away- and toward-base bias
  double target_range = 180.0;      // candidate radius around the robot
  double absorb_gain = 0.5;         // weight on absorbed neighbor need
  double degree_gain = 1.0;         // additive term per reporting neighbor
  double absorb_threshold = 500.0;  // minimum neighbor need worth absorbing
  // Experiment seams; not part of the config file schema.
  std::optional<double> need_override;  // pins need before target scoring
  bool unit_bias = false;               // forces the distance bias to 1
};

struct ReportState {
  double need = 0.0;
  std::int64_t base_contact = 0;
};

struct NeighborReport {
  int sender = -1;
  double need = 0.0;
  std::int64_t base_contact = 0;
};

struct TargetChoice {
  int grid = -1;
  double utility = 0.0;
};

struct NeedTransfer {
  int from = -1;
  double amount = 0.0;  // the neighbor's reported need that was absorbed
};

struct NeedUpdate {
  ReportState state;
  std::vector<NeedTransfer> absorbed;
};

// All cells whose center lies within range of position (inclusive),
// ascending index. Throws when no center is in range, which is only
// possible for ranges below half the cell diagonal.
std::vector<int> candidate_grids(Vec2 position, const GridMap& map, double range);

// Whole seconds to reach a cell center, floored at one timestep.
std::int64_t travel_time_estimate(Vec2 position, Vec2 center, double speed);

// Piecewise utility weight that steers a robot toward the base once its
// need passes the pivot and away from it below. grid_dist and robot_dist
// are distances from the origin, where the base sits.
double distance_bias(double need, double pivot, double need_max, double grid_dist,
                     double robot_dist);

double target_utility(std::int64_t assumed_idleness, std::int64_t travel_time,
                      double bias);

// Need transfer between robots, ordered by who reached the base least
// recently. Reports must be sorted by sender id. The result is clamped to
// [0, need_max].
NeedUpdate update_report_need(const ReportState& own,
                              std::span<const NeighborReport> reports,
                              const PolicyParams& params);

// Argmax of target_utility over candidate_grids; ties break by larger
// assumed idleness, then smaller grid index.
TargetChoice select_lr_target(const KnowledgeBase& kb, Vec2 position, double speed,
                              double need, const PolicyParams& params,
                              const GridMap& map);

// Most-idle cell of the Moore neighborhood; ties break by smaller index.
TargetChoice select_cr_target(const KnowledgeBase& kb, int current_cell,
                              const GridMap& map);

// Uniform draw over the Moore neighborhood.
TargetChoice select_random_target(int current_cell, const GridMap& map,
                                  std::mt19937_64& rng);

struct StepContext {
  const GridMap& map;
  const PolicyParams& params;
  std::span<const Envelope* const> inbox;  // direct neighbors' snapshots
  std::span<const int> visited;            // cells this robot stamped this step
  bool target_completed = false;
  std::int64_t now = 0;
  int base_id = 0;
};

struct StepResult {
  std::optional<TargetChoice> selection;
  bool base_linked = false;
  std::vector<NeedTransfer> transfers;
};

// One policy step for a patroller: merge neighbor knowledge, ground own
// visits, update the report need, and re-select on target completion.
StepResult lr_step(const RobotState& robot, KnowledgeBase& kb, ReportState& report,
                   const StepContext& ctx);

// Same gossip and visit grounding as lr_step, but selection ignores the
// report need entirely.
StepResult cr_step(const RobotState& robot, KnowledgeBase& kb, const StepContext& ctx);

StepResult random_step(const RobotState& robot, KnowledgeBase& kb,
                       const StepContext& ctx, std::mt19937_64& rng);

}  // namespace patrolsim
