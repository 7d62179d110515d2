#include "patrolsim/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace patrolsim {

void MetricsAccumulator::accumulate(const World& world,
                                    const KnowledgeBase& base_knowledge,
                                    std::int64_t t) {
  if (steps_ > 0 && t <= last_t_)
    throw std::logic_error("metrics accumulated twice for one step");
  const int cells = world.map().cell_count();
  if (base_knowledge.size() != cells)
    throw std::logic_error("base knowledge does not match the grid");
  std::int64_t idle_sum = 0, idle_max = 0, sa_sum = 0, sa_max = 0;
  for (int k = 0; k < cells; ++k) {
    const std::int64_t idle = t - world.last_visit(k);
    idle_sum += idle;
    idle_max = std::max(idle_max, idle);
    const std::int64_t stale = t - base_knowledge.entry(k).refresh;
    sa_sum += stale;
    sa_max = std::max(sa_max, stale);
  }
  idleness_sum_ += idle_sum;
  sa_delay_sum_ += sa_sum;
  worst_idleness_ = std::max(worst_idleness_, idle_max);
  worst_sa_delay_ = std::max(worst_sa_delay_, sa_max);
  last_t_ = t;
  ++steps_;
}

MetricsAccumulator::Summary MetricsAccumulator::finalize(std::int64_t end_time,
                                                         int cell_count) const {
  if (steps_ == 0) throw std::logic_error("no steps accumulated");
  if (last_t_ != end_time || steps_ != end_time - t0_ + 1)
    throw std::logic_error("accumulation did not cover every step of the trial");
  const double denom = static_cast<double>(steps_) * cell_count;
  return Summary{static_cast<double>(idleness_sum_) / denom, worst_idleness_,
                 static_cast<double>(sa_delay_sum_) / denom, worst_sa_delay_};
}

}  // namespace patrolsim
