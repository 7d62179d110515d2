#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "patrolsim/metrics.hpp"

namespace patrolsim {

struct SummaryRow {
  std::string algorithm;
  int robots = 0;
  std::string metric;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

// Quantile by linear interpolation between closest ranks; data must be
// sorted ascending.
double quantile_linear(std::span<const double> sorted, double p);

// Five-number summaries per (algorithm, robots, metric), sorted by
// algorithm, robots, then metric in reporting order I_G, I_W, D_MSA, D_WSA.
std::vector<SummaryRow> summarize_trials(std::span<const TrialResult> rows);

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows);

}  // namespace patrolsim
