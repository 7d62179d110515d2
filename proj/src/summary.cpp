#include "patrolsim/summary.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>

namespace patrolsim {

double quantile_linear(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty data");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile p outside [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - lo) * (sorted[lo + 1] - sorted[lo]);
}

namespace {

SummaryRow five_numbers(const std::string& algorithm, int robots,
                        const std::string& metric, std::vector<double> values) {
  std::sort(values.begin(), values.end());
  SummaryRow row;
  row.algorithm = algorithm;
  row.robots = robots;
  row.metric = metric;
  row.min = values.front();
  row.q1 = quantile_linear(values, 0.25);
  row.median = quantile_linear(values, 0.5);
  row.q3 = quantile_linear(values, 0.75);
  row.max = values.back();
  return row;
}

std::string format_stat(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::vector<SummaryRow> summarize_trials(std::span<const TrialResult> rows) {
  if (rows.empty()) throw std::invalid_argument("no trial rows to summarize");
  std::map<std::pair<std::string, int>, std::vector<const TrialResult*>> groups;
  for (const TrialResult& r : rows) groups[{r.algorithm, r.robots}].push_back(&r);

  std::vector<SummaryRow> out;
  for (const auto& [cell, members] : groups) {
    std::vector<double> ig, iw, dmsa, dwsa;
    for (const TrialResult* r : members) {
      ig.push_back(r->mean_idleness);
      iw.push_back(static_cast<double>(r->worst_idleness));
      dmsa.push_back(r->mean_sa_delay);
      dwsa.push_back(static_cast<double>(r->worst_sa_delay));
    }
    out.push_back(five_numbers(cell.first, cell.second, "I_G", std::move(ig)));
    out.push_back(five_numbers(cell.first, cell.second, "I_W", std::move(iw)));
    out.push_back(five_numbers(cell.first, cell.second, "D_MSA", std::move(dmsa)));
    out.push_back(five_numbers(cell.first, cell.second, "D_WSA", std::move(dwsa)));
  }
  return out;
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRow> rows) {
  out << "algorithm,N,metric,min,q1,median,q3,max\n";
  for (const SummaryRow& r : rows) {
    out << r.algorithm << ',' << r.robots << ',' << r.metric << ','
        << format_stat(r.min) << ',' << format_stat(r.q1) << ','
        << format_stat(r.median) << ',' << format_stat(r.q3) << ','
        << format_stat(r.max) << '\n';
  }
}

}  // namespace patrolsim
