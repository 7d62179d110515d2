#include "patrolsim/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "patrolsim/rng.hpp"

namespace patrolsim {

std::vector<int> candidate_grids(Vec2 position, const GridMap& map, double range) {
  std::vector<int> out;
  const double s = map.cell_size();
  // window padded by one cell; the exact distance check decides membership
  const int c_lo = std::max(0, static_cast<int>(std::floor((position.x - range) / s)) - 1);
  const int c_hi = std::min(map.cols() - 1, static_cast<int>(std::floor((position.x + range) / s)) + 1);
  const int r_lo = std::max(0, static_cast<int>(std::floor((position.y - range) / s)) - 1);
  const int r_hi = std::min(map.rows() - 1, static_cast<int>(std::floor((position.y + range) / s)) + 1);
  for (int r = r_lo; r <= r_hi; ++r) {
    for (int c = c_lo; c <= c_hi; ++c) {
      const int k = r * map.cols() + c;
      if (distance(map.center(k), position) <= range) out.push_back(k);
    }
  }
  if (out.empty())
    throw std::runtime_error("target_range too small: no grid center within range");
  return out;
}

std::int64_t travel_time_estimate(Vec2 position, Vec2 center, double speed) {
  if (speed <= 0.0) throw std::invalid_argument("speed must be positive");
  const double d = distance(position, center);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(d / speed)));
}

double distance_bias(double need, double pivot, double need_max, double grid_dist,
                     double robot_dist) {
  // the four need/distance cases collapse to 1 -/+ (need - pivot) / need_max
  const double spread = (need - pivot) / need_max;
  return grid_dist >= robot_dist ? 1.0 - spread : 1.0 + spread;
}

double target_utility(std::int64_t assumed_idleness, std::int64_t travel_time,
                      double bias) {
  return bias * static_cast<double>(assumed_idleness + travel_time) /
         static_cast<double>(travel_time);
}

NeedUpdate update_report_need(const ReportState& own,
                              std::span<const NeighborReport> reports,
                              const PolicyParams& params) {
  NeedUpdate out{own, {}};
  if (!reports.empty()) {
    std::int64_t oldest = own.base_contact;
    std::int64_t newest = own.base_contact;
    double peak = reports.front().need;
    double sum = 0.0;
    for (const NeighborReport& r : reports) {
      oldest = std::min(oldest, r.base_contact);
      newest = std::max(newest, r.base_contact);
      peak = std::max(peak, r.need);
      sum += r.need;
    }
    const double degree_term = params.degree_gain * static_cast<double>(reports.size());
    if (own.base_contact == oldest) {
      // longest out of base contact in the neighborhood: aggregate everything
      out.state.need = std::max(own.need, peak) + params.absorb_gain * sum + degree_term;
      for (const NeighborReport& r : reports) out.absorbed.push_back({r.sender, r.need});
    } else if (own.base_contact == newest) {
      out.state.need = 0.0;
    } else {
      // in between: absorb from neighbors that reached the base more
      // recently and carry enough need; hand off to older ones by resetting
      bool absorbed_any = false;
      for (const NeighborReport& r : reports) {
        if (own.base_contact < r.base_contact && r.need > params.absorb_threshold) {
          out.state.need = std::max(out.state.need + params.absorb_gain * r.need, peak);
          out.absorbed.push_back({r.sender, r.need});
          absorbed_any = true;
        }
      }
      out.state.need += degree_term;
      if (!absorbed_any) out.state.need = 0.0;
    }
  }
  out.state.need = std::clamp(out.state.need, 0.0, params.need_max);
  return out;
}

TargetChoice select_lr_target(const KnowledgeBase& kb, Vec2 position, double speed,
                              double need, const PolicyParams& params,
                              const GridMap& map) {
  const double robot_dist = norm(position);
  TargetChoice best;
  std::int64_t best_idleness = -1;
  for (int k : candidate_grids(position, map, params.target_range)) {
    const Vec2 center = map.center(k);
    const std::int64_t idleness = kb.entry(k).idleness;
    const std::int64_t travel = travel_time_estimate(position, center, speed);
    const double bias = params.unit_bias
                            ? 1.0
                            : distance_bias(need, params.need_pivot, params.need_max,
                                            norm(center), robot_dist);
    const double utility = target_utility(idleness, travel, bias);
    if (best.grid < 0 || utility > best.utility ||
        (utility == best.utility && idleness > best_idleness)) {
      best = TargetChoice{k, utility};
      best_idleness = idleness;
    }
  }
  return best;
}

TargetChoice select_cr_target(const KnowledgeBase& kb, int current_cell,
                              const GridMap& map) {
  TargetChoice best;
  for (int k : map.adjacent(current_cell)) {
    const double idleness = static_cast<double>(kb.entry(k).idleness);
    if (best.grid < 0 || idleness > best.utility) best = TargetChoice{k, idleness};
  }
  return best;
}

TargetChoice select_random_target(int current_cell, const GridMap& map,
                                  std::mt19937_64& rng) {
  const std::vector<int> options = map.adjacent(current_cell);
  return TargetChoice{options[uniform_below(rng, options.size())], 0.0};
}

namespace {

void merge_and_ground(KnowledgeBase& kb, const StepContext& ctx) {
  for (const Envelope* env : ctx.inbox) kb.merge_from(env->knowledge);
  for (int k : ctx.visited) kb.mark_visited(k, ctx.now);
}

}  // namespace

StepResult lr_step(const RobotState& robot, KnowledgeBase& kb, ReportState& report,
                   const StepContext& ctx) {
  StepResult out;
  merge_and_ground(kb, ctx);

  // Need reports come from patroller neighbors only; the base gossips
  // knowledge but never broadcasts a need of its own.
  std::vector<NeighborReport> reports;
  reports.reserve(ctx.inbox.size());
  for (const Envelope* env : ctx.inbox) {
    if (env->sender == ctx.base_id) {
      out.base_linked = true;
    } else {
      reports.push_back({env->sender, env->need, env->base_contact});
    }
  }

  if (out.base_linked) {
    report.need = 0.0;
    report.base_contact = ctx.now;
  }
  // the growth tick applies to the post-reset value
  report.need = std::min(ctx.params.need_max, report.need + 1.0);
  NeedUpdate update = update_report_need(report, reports, ctx.params);
  report = update.state;
  out.transfers = std::move(update.absorbed);
  if (ctx.params.need_override) report.need = *ctx.params.need_override;

  if (ctx.target_completed) {
    if (robot.target) kb.mark_visited(*robot.target, ctx.now);
    const TargetChoice choice = select_lr_target(kb, robot.position, robot.speed,
                                                 report.need, ctx.params, ctx.map);
    kb.mark_visited(choice.grid, ctx.now);  // claim it before arriving
    out.selection = choice;
  }
  return out;
}

StepResult cr_step(const RobotState& robot, KnowledgeBase& kb, const StepContext& ctx) {
  StepResult out;
  merge_and_ground(kb, ctx);
  for (const Envelope* env : ctx.inbox)
    if (env->sender == ctx.base_id) out.base_linked = true;
  if (ctx.target_completed)
    out.selection = select_cr_target(kb, ctx.map.locate(robot.position), ctx.map);
  return out;
}

StepResult random_step(const RobotState& robot, KnowledgeBase& kb,
                       const StepContext& ctx, std::mt19937_64& rng) {
  StepResult out;
  merge_and_ground(kb, ctx);
  for (const Envelope* env : ctx.inbox)
    if (env->sender == ctx.base_id) out.base_linked = true;
  if (ctx.target_completed)
    out.selection = select_random_target(ctx.map.locate(robot.position), ctx.map, rng);
  return out;
}

}  // namespace patrolsim
