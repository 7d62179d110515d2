#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "patrolsim/knowledge.hpp"
#include "patrolsim/world.hpp"

namespace patrolsim {

struct TrialResult {
  std::string trial_id;
  std::string algorithm;
  int robots = 0;
  std::uint64_t seed = 0;
  double mean_idleness = 0.0;        // time-and-grid mean of ground-truth idleness
  std::int64_t worst_idleness = 0;   // max over grids and time
  double mean_sa_delay = 0.0;        // staleness of the base station's table, mean
  std::int64_t worst_sa_delay = 0;   // staleness of the base station's table, max
};

// Exact integer accumulation over the trial; division happens only at
// finalization.
class MetricsAccumulator {
 public:
  explicit MetricsAccumulator(std::int64_t start_time) : t0_(start_time) {}

  // Call exactly once per step, after all state updates for the step.
  void accumulate(const World& world, const KnowledgeBase& base_knowledge,
                  std::int64_t t);

  struct Summary {
    double mean_idleness = 0.0;
    std::int64_t worst_idleness = 0;
    double mean_sa_delay = 0.0;
    std::int64_t worst_sa_delay = 0;
  };

  // Requires accumulation to have covered start_time..end_time inclusive.
  Summary finalize(std::int64_t end_time, int cell_count) const;

  std::int64_t steps_observed() const { return steps_; }

 private:
  std::int64_t t0_;
  std::int64_t last_t_ = std::numeric_limits<std::int64_t>::min();
  std::int64_t idleness_sum_ = 0;
  std::int64_t sa_delay_sum_ = 0;
  std::int64_t worst_idleness_ = 0;
  std::int64_t worst_sa_delay_ = 0;
  std::int64_t steps_ = 0;
};

}  // namespace patrolsim
