#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "patrolsim/knowledge.hpp"
#include "patrolsim/world.hpp"

namespace patrolsim {

// Undirected link set over robot ids.
class ConnectivityState {
 public:
  bool linked(int a, int b) const;
  void add(int a, int b);
  std::vector<int> neighbors(int n) const;  // ascending
  const std::set<std::pair<int, int>>& links() const { return links_; }
  bool empty() const { return links_.empty(); }

 private:
  std::set<std::pair<int, int>> links_;  // normalized (lo, hi) pairs
};

// A pair is linked afterwards iff it was linked and still within comm_range,
// or it is within sense_range. The base participates like any robot.
ConnectivityState update_links(std::span<const RobotState> robots,
                               const ConnectivityState& prior, double sense_range,
                               double comm_range);

// What one robot broadcast at the end of a step: a full knowledge snapshot
// plus its report-need state.
struct Envelope {
  int sender = -1;
  double need = 0.0;
  std::int64_t base_contact = 0;
  KnowledgeBase knowledge;
};

// One-hop synchronous delivery: robot n's inbox is the ids of its direct
// neighbors, whose end-of-previous-step envelopes it may read. Multi-hop
// propagation therefore takes one timestep per hop.
std::vector<std::vector<int>> exchange(int robot_count, const ConnectivityState& links);

}  // namespace patrolsim
