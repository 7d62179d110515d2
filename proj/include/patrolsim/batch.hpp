#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "patrolsim/config_io.hpp"
#include "patrolsim/metrics.hpp"

namespace patrolsim {

struct BatchOutcome {
  std::vector<TrialResult> rows;       // sorted by (algorithm, N, seed)
  std::vector<std::string> failures;   // one line per failed (config, seed) cell
};

// Expands the spec into one trial per (algorithm, N, trial-index) with seed
// base_seed + index, so seeds pair up across algorithms. Trials run on up
// to max_threads workers; failed cells are reported, the rest complete.
BatchOutcome run_batch(const BatchSpec& spec, unsigned max_threads);

// Thread cap from PATROLSIM_THREADS, defaulting to the hardware count.
unsigned batch_thread_cap();

void write_trials_csv(std::ostream& out, std::span<const TrialResult> rows);
std::vector<TrialResult> read_trials_csv(std::istream& in);
std::vector<TrialResult> read_trials_csv(const std::filesystem::path& path);

}  // namespace patrolsim
