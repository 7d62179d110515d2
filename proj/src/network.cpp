#include "patrolsim/network.hpp"

#include <algorithm>
#include <stdexcept>

namespace patrolsim {

namespace {
std::pair<int, int> ordered(int a, int b) { return {std::min(a, b), std::max(a, b)}; }
}  // namespace

bool ConnectivityState::linked(int a, int b) const {
  if (a == b) return false;
  return links_.count(ordered(a, b)) != 0;
}

void ConnectivityState::add(int a, int b) {
  if (a == b) throw std::invalid_argument("self-links are not allowed");
  links_.insert(ordered(a, b));
}

std::vector<int> ConnectivityState::neighbors(int n) const {
  std::vector<int> out;
  for (const auto& [lo, hi] : links_) {
    if (lo == n) out.push_back(hi);
    else if (hi == n) out.push_back(lo);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ConnectivityState update_links(std::span<const RobotState> robots,
                               const ConnectivityState& prior, double sense_range,
                               double comm_range) {
  ConnectivityState next;
  for (std::size_t i = 0; i < robots.size(); ++i) {
    for (std::size_t j = i + 1; j < robots.size(); ++j) {
      const double d = distance(robots[i].position, robots[j].position);
      const bool keep = prior.linked(robots[i].id, robots[j].id) && d <= comm_range;
      if (keep || d <= sense_range) next.add(robots[i].id, robots[j].id);
    }
  }
  return next;
}

std::vector<std::vector<int>> exchange(int robot_count, const ConnectivityState& links) {
  std::vector<std::vector<int>> inboxes(robot_count);
  for (const auto& [lo, hi] : links.links()) {
    inboxes[lo].push_back(hi);
    inboxes[hi].push_back(lo);
  }
  for (auto& inbox : inboxes) std::sort(inbox.begin(), inbox.end());
  return inboxes;
}

}  // namespace patrolsim
