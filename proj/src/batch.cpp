#include "patrolsim/batch.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "patrolsim/engine.hpp"

namespace patrolsim {

unsigned batch_thread_cap() {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PATROLSIM_THREADS")) {
    char* end = nullptr;
    const unsigned long parsed = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || parsed == 0)
      throw ConfigError("PATROLSIM_THREADS must be a positive integer");
    cap = std::min<unsigned long>(cap, parsed);
  }
  return cap;
}

BatchOutcome run_batch(const BatchSpec& spec, unsigned max_threads) {
  spec.validate();
  std::vector<TrialConfig> jobs;
  for (Algorithm algorithm : spec.algorithms) {
    for (int robots : spec.robot_counts) {
      for (int trial = 0; trial < spec.trials; ++trial) {
        TrialConfig cfg = spec.base;
        cfg.algorithm = algorithm;
        cfg.robots = robots;
        cfg.seed = spec.base_seed + static_cast<std::uint64_t>(trial);
        cfg.collect_log = false;
        jobs.push_back(cfg);
      }
    }
  }

  std::vector<TrialResult> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
      try {
        results[i] = run_trial(jobs[i]).result;
      } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "(algorithm=" << to_string(jobs[i].algorithm)
            << ", N=" << jobs[i].robots << ", seed=" << jobs[i].seed
            << "): " << e.what();
        errors[i] = msg.str();
      }
    }
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(max_threads, jobs.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  BatchOutcome outcome;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (errors[i].empty()) outcome.rows.push_back(std::move(results[i]));
    else outcome.failures.push_back(std::move(errors[i]));
  }
  auto key = [](const TrialResult& r) {
    return std::make_tuple(r.algorithm, r.robots, r.seed);
  };
  std::sort(outcome.rows.begin(), outcome.rows.end(),
            [&](const TrialResult& a, const TrialResult& b) { return key(a) < key(b); });
  std::sort(outcome.failures.begin(), outcome.failures.end());
  return outcome;
}

namespace {

std::string format_mean(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

void write_trials_csv(std::ostream& out, std::span<const TrialResult> rows) {
  out << "trial_id,algorithm,N,seed,I_G,I_W,D_MSA,D_WSA\n";
  for (const TrialResult& r : rows) {
    out << r.trial_id << ',' << r.algorithm << ',' << r.robots << ',' << r.seed
        << ',' << format_mean(r.mean_idleness) << ',' << r.worst_idleness << ','
        << format_mean(r.mean_sa_delay) << ',' << r.worst_sa_delay << '\n';
  }
}

std::vector<TrialResult> read_trials_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "trial_id,algorithm,N,seed,I_G,I_W,D_MSA,D_WSA")
    throw std::runtime_error("unexpected trials CSV header");
  std::vector<TrialResult> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 8) throw std::runtime_error("malformed trials CSV row: " + line);
    TrialResult r;
    r.trial_id = f[0];
    r.algorithm = f[1];
    r.robots = std::stoi(f[2]);
    r.seed = std::stoull(f[3]);
    r.mean_idleness = std::stod(f[4]);
    r.worst_idleness = std::stoll(f[5]);
    r.mean_sa_delay = std::stod(f[6]);
    r.worst_sa_delay = std::stoll(f[7]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<TrialResult> read_trials_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_trials_csv(in);
}

}  // namespace patrolsim
