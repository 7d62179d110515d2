#include "patrolsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace patrolsim {

const char* to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::lr: return "lr";
    case Algorithm::cr: return "cr";
    case Algorithm::random_walk: return "random";
  }
  throw std::invalid_argument("unknown algorithm");
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "lr") return Algorithm::lr;
  if (name == "cr") return Algorithm::cr;
  if (name == "random") return Algorithm::random_walk;
  throw ConfigError("algorithm must be one of \"lr\", \"cr\", \"random\" (got \"" +
                    name + "\")");
}

void TrialConfig::validate() const {
  if (cols < 1) throw ConfigError("cols must be at least 1");
  if (rows < 1) throw ConfigError("rows must be at least 1");
  if (cell_size <= 0.0) throw ConfigError("cell_size must be positive");
  if (std::abs(field_size - cols * cell_size) > 1e-9 ||
      std::abs(field_size - rows * cell_size) > 1e-9)
    throw ConfigError("field_size must equal cols * cell_size and rows * cell_size");
  if (robots < 2) throw ConfigError("robots must be at least 2");
  if (speed <= 0.0) throw ConfigError("speed must be positive");
  if (sense_range <= 0.0) throw ConfigError("sense_range must be positive");
  if (sense_range >= comm_range)
    throw ConfigError("sense_range must be smaller than comm_range");
  if (policy.target_range < cell_size * std::numbers::sqrt2 / 2.0)
    throw ConfigError("target_range must cover at least half the cell diagonal");
  if (policy.need_max <= 0.0) throw ConfigError("need_max must be positive");
  if (policy.need_pivot <= 0.0 || policy.need_pivot >= policy.need_max)
    throw ConfigError("need_pivot must lie strictly between 0 and need_max");
  if (policy.absorb_gain < 0.0) throw ConfigError("absorb_gain must be non-negative");
  if (policy.degree_gain < 0.0) throw ConfigError("degree_gain must be non-negative");
  if (policy.absorb_threshold < 0.0)
    throw ConfigError("absorb_threshold must be non-negative");
  if (duration <= start_time) throw ConfigError("duration must exceed start_time");
}

std::string TrialConfig::trial_id() const {
  std::ostringstream id;
  id << to_string(algorithm) << "-N" << robots << "-s" << seed;
  return id.str();
}

void move_robot(RobotState& robot, const GridMap& map) {
  if (robot.is_base || !robot.target) return;
  const Vec2 goal = map.center(*robot.target);
  const Vec2 delta = goal - robot.position;
  const double dist = norm(delta);
  if (dist <= 0.0) return;
  robot.heading = std::atan2(delta.y, delta.x);
  if (dist <= robot.speed) {
    robot.position = goal;
  } else {
    robot.position = robot.position + delta * (robot.speed / dist);
  }
}

namespace {

const TrialConfig& validated(const TrialConfig& config) {
  config.validate();
  return config;
}

std::mt19937_64 make_policy_rng(std::uint64_t seed, int robot) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(robot), 0x70617472u};
  return std::mt19937_64(seq);
}

}  // namespace

Simulation::Simulation(const TrialConfig& config)
    : cfg_(validated(config)),
      world_(GridMap(cfg_.cols, cfg_.rows, cfg_.cell_size)),
      metrics_(cfg_.start_time),
      rng_(cfg_.seed),
      t_(cfg_.start_time) {
  log_.set_enabled(cfg_.collect_log);
  robots_ = deploy(world_.map(), cfg_.robots, cfg_.speed, rng_);
  const int cells = world_.map().cell_count();
  kbs_.reserve(robots_.size());
  policy_rngs_.reserve(robots_.size());
  for (const RobotState& r : robots_) {
    kbs_.emplace_back(r.id, cells);
    policy_rngs_.push_back(make_policy_rng(cfg_.seed, r.id));
  }
  reports_.resize(robots_.size());
  links_ = update_links(robots_, ConnectivityState{}, cfg_.sense_range, cfg_.comm_range);
  log_link_changes(ConnectivityState{}, links_, t_);
  select_initial_targets();
  reports_[kBaseId] = ReportState{0.0, t_};
  metrics_.accumulate(world_, kbs_[kBaseId], t_);
  snapshots_.resize(robots_.size());
  take_snapshots();
}

void Simulation::select_initial_targets() {
  // Each patroller treats its starting cell as a just-completed target and
  // runs the normal selection path once.
  for (RobotState& r : robots_) {
    if (r.is_base) continue;
    const int current = world_.map().locate(r.position);
    TargetChoice choice;
    switch (cfg_.algorithm) {
      case Algorithm::lr: {
        KnowledgeBase& kb = kbs_[r.id];
        kb.mark_visited(current, t_);
        double need = reports_[r.id].need;
        if (cfg_.policy.need_override) need = *cfg_.policy.need_override;
        choice = select_lr_target(kb, r.position, r.speed, need, cfg_.policy,
                                  world_.map());
        kb.mark_visited(choice.grid, t_);
        break;
      }
      case Algorithm::cr:
        choice = select_cr_target(kbs_[r.id], current, world_.map());
        break;
      case Algorithm::random_walk:
        choice = select_random_target(current, world_.map(), policy_rngs_[r.id]);
        break;
    }
    r.target = choice.grid;
    log_.append({t_, EventKind::target_selected, r.id, choice.grid, choice.utility});
  }
}

void Simulation::log_link_changes(const ConnectivityState& before,
                                  const ConnectivityState& after, std::int64_t t) {
  if (!log_.enabled()) return;
  auto dist = [&](const std::pair<int, int>& p) {
    return distance(robots_[p.first].position, robots_[p.second].position);
  };
  for (const auto& pair : after.links())
    if (!before.linked(pair.first, pair.second))
      log_.append({t, EventKind::link_up, pair.first, pair.second, dist(pair)});
  for (const auto& pair : before.links())
    if (!after.linked(pair.first, pair.second))
      log_.append({t, EventKind::link_down, pair.first, pair.second, dist(pair)});
}

void Simulation::merge_base_inbox(const std::vector<const Envelope*>& inbox,
                                  std::int64_t t) {
  KnowledgeBase& kb = kbs_[kBaseId];
  if (!log_.enabled()) {
    for (const Envelope* env : inbox) kb.merge_from(env->knowledge);
    return;
  }
  static thread_local std::vector<std::int64_t> before;
  before.clear();
  for (const AssumedEntry& e : kb.entries()) before.push_back(e.refresh);
  for (const Envelope* env : inbox) kb.merge_from(env->knowledge);
  for (int k = 0; k < kb.size(); ++k) {
    const std::int64_t refresh = kb.entry(k).refresh;
    if (refresh != before[k])
      log_.append({t, EventKind::base_report, kBaseId, k,
                   static_cast<double>(refresh)});
  }
}

void Simulation::step() {
  const std::int64_t t = ++t_;

  for (RobotState& r : robots_) move_robot(r, world_.map());

  ConnectivityState next_links =
      update_links(robots_, links_, cfg_.sense_range, cfg_.comm_range);
  log_link_changes(links_, next_links, t);
  links_ = std::move(next_links);

  std::vector<std::vector<int>> visited(robots_.size());
  std::vector<char> completed(robots_.size(), 0);
  for (const RobotState& r : robots_) {
    if (r.is_base) continue;
    std::vector<int> cells = world_.register_visits(r.position, t);
    for (int k : cells) {
      log_.append({t, EventKind::visit, r.id, k, 0.0});
      if (r.target && *r.target == k) completed[r.id] = 1;
    }
    visited[r.id] = std::move(cells);
  }

  const std::vector<std::vector<int>> inboxes =
      exchange(static_cast<int>(robots_.size()), links_);

  for (RobotState& r : robots_) {
    const int n = r.id;
    kbs_[n].advance();
    std::vector<const Envelope*> inbox;
    inbox.reserve(inboxes[n].size());
    for (int m : inboxes[n]) inbox.push_back(&snapshots_[m]);
    if (r.is_base) {
      merge_base_inbox(inbox, t);
      reports_[n] = ReportState{0.0, t};
      continue;
    }
    const StepContext ctx{world_.map(),      cfg_.policy, inbox, visited[n],
                          completed[n] != 0, t,           kBaseId};
    StepResult result;
    switch (cfg_.algorithm) {
      case Algorithm::lr:
        result = lr_step(r, kbs_[n], reports_[n], ctx);
        break;
      case Algorithm::cr:
        result = cr_step(r, kbs_[n], ctx);
        break;
      case Algorithm::random_walk:
        result = random_step(r, kbs_[n], ctx, policy_rngs_[n]);
        break;
    }
    for (const NeedTransfer& transfer : result.transfers)
      log_.append({t, EventKind::epsilon_transfer, n, transfer.from, transfer.amount});
    if (result.selection) {
      r.target = result.selection->grid;
      log_.append({t, EventKind::target_selected, n, result.selection->grid,
                   result.selection->utility});
    }
  }

  metrics_.accumulate(world_, kbs_[kBaseId], t);
  take_snapshots();
}

void Simulation::run() {
  while (t_ < cfg_.duration) step();
}

TrialResult Simulation::finalize() const {
  const MetricsAccumulator::Summary summary =
      metrics_.finalize(cfg_.duration, world_.map().cell_count());
  TrialResult result;
  result.trial_id = cfg_.trial_id();
  result.algorithm = to_string(cfg_.algorithm);
  result.robots = cfg_.robots;
  result.seed = cfg_.seed;
  result.mean_idleness = summary.mean_idleness;
  result.worst_idleness = summary.worst_idleness;
  result.mean_sa_delay = summary.mean_sa_delay;
  result.worst_sa_delay = summary.worst_sa_delay;
  return result;
}

void Simulation::take_snapshots() {
  for (const RobotState& r : robots_) {
    Envelope& env = snapshots_[r.id];
    env.sender = r.id;
    env.need = reports_[r.id].need;
    env.base_contact = reports_[r.id].base_contact;
    env.knowledge = kbs_[r.id];
  }
}

TrialRun run_trial(const TrialConfig& config) {
  Simulation sim(config);
  sim.run();
  TrialRun run;
  run.result = sim.finalize();
  run.log = sim.release_log();
  return run;
}

}  // namespace patrolsim
