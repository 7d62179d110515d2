#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>
#include <vector>

#include "patrolsim/batch.hpp"
#include "patrolsim/config_io.hpp"
#include "patrolsim/engine.hpp"
#include "patrolsim/summary.hpp"

#include "oracle.hpp"

using namespace patrolsim;
namespace fs = std::filesystem;

namespace {

void report(int criterion, bool pass, const std::string& what) {
  std::printf("[criterion %d] %s - %s\n", criterion, pass ? "PASS" : "FAIL",
              what.c_str());
  std::fflush(stdout);
  CHECK_MESSAGE(pass, "criterion " << criterion << ": " << what);
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return quantile_linear(values, 0.5);
}

std::vector<TrialResult> run_parallel(const std::vector<TrialConfig>& jobs) {
  std::vector<TrialResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1))
      results[i] = run_trial(jobs[i]).result;
  };
  const unsigned threads = std::max(
      1u, std::min<unsigned>(std::thread::hardware_concurrency(), jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  return results;
}

// Ten full-length trials per cell at the table defaults, seeds 1..10 paired
// across cells. Shared by criteria 1-4 and computed once.
struct LongResults {
  std::map<std::pair<std::string, int>, std::vector<TrialResult>> cells;
  double elapsed_seconds = 0.0;

  LongResults() {
    const std::vector<std::pair<Algorithm, int>> wanted{
        {Algorithm::lr, 4},  {Algorithm::lr, 8}, {Algorithm::lr, 12},
        {Algorithm::cr, 8},  {Algorithm::random_walk, 8}};
    std::vector<TrialConfig> jobs;
    for (const auto& [algorithm, robots] : wanted) {
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        TrialConfig cfg;
        cfg.algorithm = algorithm;
        cfg.robots = robots;
        cfg.seed = seed;
        cfg.collect_log = false;
        jobs.push_back(cfg);
      }
    }
    const auto start = std::chrono::steady_clock::now();
    const std::vector<TrialResult> results = run_parallel(jobs);
    elapsed_seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start).count();
    for (const TrialResult& r : results)
      cells[{r.algorithm, r.robots}].push_back(r);
  }

  std::vector<double> metric(const std::string& algorithm, int robots,
                             double (*get)(const TrialResult&)) const {
    std::vector<double> out;
    for (const TrialResult& r : cells.at({algorithm, robots})) out.push_back(get(r));
    return out;
  }
};

const LongResults& longs() {
  static LongResults results;
  return results;
}

double get_ig(const TrialResult& r) { return r.mean_idleness; }
double get_iw(const TrialResult& r) { return static_cast<double>(r.worst_idleness); }
double get_dmsa(const TrialResult& r) { return r.mean_sa_delay; }
double get_dwsa(const TrialResult& r) { return static_cast<double>(r.worst_sa_delay); }

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("criterion 1: lr with eight robots patrols every grid in every trial") {
  const auto& rows = longs().cells.at({"lr", 8});
  bool pass = rows.size() == 10;
  std::int64_t worst = 0;
  for (const TrialResult& r : rows) {
    pass = pass && r.worst_idleness < 40000;
    worst = std::max(worst, r.worst_idleness);
  }
  std::ostringstream what;
  what << "I_W < 40000 in all 10 trials (max " << worst << "; 50 full trials took "
       << static_cast<int>(longs().elapsed_seconds) << "s)";
  report(1, pass, what.str());
}

TEST_CASE("criterion 2: lr has the lowest median graph idleness at N=8") {
  const double lr = median_of(longs().metric("lr", 8, get_ig));
  const double cr = median_of(longs().metric("cr", 8, get_ig));
  const double rnd = median_of(longs().metric("random", 8, get_ig));
  std::ostringstream what;
  what << "median I_G: lr " << lr << " < cr " << cr << " and < random " << rnd;
  report(2, lr < cr && lr < rnd, what.str());
}

TEST_CASE("criterion 3: lr has the lowest median SA delays at N=8") {
  const double lr_m = median_of(longs().metric("lr", 8, get_dmsa));
  const double cr_m = median_of(longs().metric("cr", 8, get_dmsa));
  const double rnd_m = median_of(longs().metric("random", 8, get_dmsa));
  const double lr_w = median_of(longs().metric("lr", 8, get_dwsa));
  const double cr_w = median_of(longs().metric("cr", 8, get_dwsa));
  const double rnd_w = median_of(longs().metric("random", 8, get_dwsa));
  const bool pass = lr_m < cr_m && lr_m < rnd_m && lr_w < cr_w && lr_w < rnd_w;
  std::ostringstream what;
  what << "median D_MSA: lr " << lr_m << " vs cr " << cr_m << ", random " << rnd_m
       << "; median D_WSA: lr " << lr_w << " vs cr " << cr_w << ", random " << rnd_w;
  report(3, pass, what.str());
}

TEST_CASE("criterion 4: lr median graph idleness strictly decreases with N") {
  const double n4 = median_of(longs().metric("lr", 4, get_ig));
  const double n8 = median_of(longs().metric("lr", 8, get_ig));
  const double n12 = median_of(longs().metric("lr", 12, get_ig));
  std::ostringstream what;
  what << "median I_G: N=4 " << n4 << " > N=8 " << n8 << " > N=12 " << n12;
  report(4, n4 > n8 && n8 > n12, what.str());
}

TEST_CASE("criterion 5: the event-log replay reproduces all four metrics exactly") {
  struct Case {
    Algorithm algorithm;
    std::uint64_t seed;
  };
  const std::vector<Case> cases{{Algorithm::lr, 101},
                                {Algorithm::lr, 102},
                                {Algorithm::cr, 103},
                                {Algorithm::cr, 104},
                                {Algorithm::random_walk, 105}};
  bool pass = true;
  for (const Case& c : cases) {
    TrialConfig cfg;
    cfg.algorithm = c.algorithm;
    cfg.seed = c.seed;
    cfg.duration = 2000;
    const TrialRun run = run_trial(cfg);
    const oracle::Metrics replayed =
        oracle::replay_metrics(run.log, cfg.cols * cfg.rows, cfg.start_time,
                               cfg.duration);
    pass = pass && run.result.mean_idleness == replayed.mean_idleness &&
           run.result.worst_idleness == replayed.worst_idleness &&
           run.result.mean_sa_delay == replayed.mean_sa_delay &&
           run.result.worst_sa_delay == replayed.worst_sa_delay;
  }
  report(5, pass, "5 short trials, integer-exact I_G/I_W and exact D_MSA/D_WSA");
}

TEST_CASE("criterion 6: equation unit suite") {
  bool pass = true;
  // bias boundary and the two saturated table cases
  pass = pass && distance_bias(500.0, 500.0, 3000.0, 100.0, 50.0) == 1.0;
  pass = pass && distance_bias(500.0, 500.0, 3000.0, 10.0, 50.0) == 1.0;
  pass = pass &&
         std::abs(distance_bias(3000.0, 500.0, 3000.0, 100.0, 50.0) - 1.0 / 6.0) < 1e-12;
  pass = pass &&
         std::abs(distance_bias(0.0, 500.0, 3000.0, 10.0, 50.0) - 5.0 / 6.0) < 1e-12;
  // utility hand traces
  pass = pass && target_utility(0, 7, 0.75) == 0.75;
  pass = pass && target_utility(60, 30, 1.0) == 3.0;
  pass = pass && target_utility(30, 30, 0.5) == 1.0;
  // need transfer hand traces
  const PolicyParams params;
  const NeedUpdate untouched = update_report_need(ReportState{42.5, 7}, {}, params);
  pass = pass && untouched.state.need == 42.5 && untouched.state.base_contact == 7;
  const std::vector<NeighborReport> one{{2, 200.0, 50}};
  pass = pass &&
         update_report_need(ReportState{100.0, 5}, one, params).state.need == 301.0;
  pass = pass &&
         update_report_need(ReportState{1234.0, 100}, one, params).state.need == 0.0;
  report(6, pass, "bias, utility, and need-transfer hand traces reproduced exactly");
}

TEST_CASE("criterion 7: invariants hold at every step of a 12-robot lr trial") {
  TrialConfig cfg;
  cfg.robots = 12;
  cfg.seed = 7;
  cfg.duration = 1000;
  cfg.collect_log = false;
  Simulation sim(cfg);

  std::vector<std::vector<std::int64_t>> refresh_floor(cfg.robots);
  for (int n = 0; n < cfg.robots; ++n)
    for (const AssumedEntry& e : sim.knowledge(n).entries())
      refresh_floor[n].push_back(e.refresh);

  bool pass = true;
  while (sim.now() < cfg.duration && pass) {
    sim.step();
    for (int n = 0; n < cfg.robots && pass; ++n) {
      const double need = sim.report_state(n).need;
      pass = pass && need >= 0.0 && need <= cfg.policy.need_max;
      const auto entries = sim.knowledge(n).entries();
      for (int k = 0; k < static_cast<int>(entries.size()); ++k) {
        pass = pass && entries[k].refresh >= refresh_floor[n][k];
        refresh_floor[n][k] = entries[k].refresh;
      }
      const RobotState& robot = sim.robots()[n];
      if (robot.is_base) continue;
      const double robot_dist = norm(robot.position);
      for (int k : candidate_grids(robot.position, sim.map(), cfg.policy.target_range)) {
        const double bias = distance_bias(need, cfg.policy.need_pivot,
                                          cfg.policy.need_max,
                                          norm(sim.map().center(k)), robot_dist);
        pass = pass && bias >= 1.0 / 6.0 - 1e-12 && bias <= 11.0 / 6.0 + 1e-12;
      }
    }
  }
  const TrialResult result = sim.finalize();
  pass = pass && static_cast<double>(result.worst_idleness) >= result.mean_idleness;
  report(7, pass,
         "need in [0, 3000], refresh monotone, bias in [1/6, 11/6], I_W >= I_G");
}

TEST_CASE("criterion 8: batch reruns are byte-identical") {
  const fs::path dir = fs::temp_directory_path() / "patrolsim_acceptance_batch";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path spec_path = dir / "spec.json";
  {
    std::ofstream spec(spec_path);
    spec << R"({"algorithms": ["lr", "cr"], "robot_counts": [4], "trials": 2,)"
         << R"( "base_seed": 5, "output_dir": ")" << (dir / "a").string()
         << R"(", "config": {"duration": 400}})";
  }
  auto invoke = [&](const std::string& out) {
    const std::string cmd = std::string("\"") + PATROLSIM_CLI_PATH + "\" batch --spec \"" +
                            spec_path.string() + "\" --out \"" + out + "\" >/dev/null 2>&1";
    return std::system(cmd.c_str());
  };
  const int first = invoke((dir / "a").string());
  const int second = invoke((dir / "b").string());
  bool pass = first == 0 && second == 0;
  std::string a, b;
  if (pass) {
    a = read_bytes(dir / "a" / "trials.csv");
    b = read_bytes(dir / "b" / "trials.csv");
    pass = !a.empty() && a == b;
  }
  report(8, pass, "two batch executions of one spec wrote identical trials.csv");
  fs::remove_all(dir);
}

TEST_CASE("criterion 9: a visit crosses a 3-hop chain to the base in exactly 3 steps") {
  std::vector<RobotState> bots{
      {0, {0.0, 0.0}, 0.0, std::nullopt, true, 1.25},
      {1, {80.0, 0.0}, 0.0, std::nullopt, false, 1.25},
      {2, {160.0, 0.0}, 0.0, std::nullopt, false, 1.25},
      {3, {240.0, 0.0}, 0.0, std::nullopt, false, 1.25},
  };
  const ConnectivityState links = update_links(bots, {}, 90.0, 180.0);
  const auto inboxes = exchange(4, links);
  std::vector<KnowledgeBase> kbs;
  for (int n = 0; n < 4; ++n) kbs.emplace_back(n, 400);

  const std::int64_t written_at = 50;
  const int cell = 123;
  kbs[3].mark_visited(cell, written_at);

  bool pass = links.linked(0, 1) && links.linked(1, 2) && links.linked(2, 3) &&
              !links.linked(0, 2) && !links.linked(0, 3);
  for (std::int64_t t = written_at + 1; t <= written_at + 5; ++t) {
    const std::vector<KnowledgeBase> snapshots = kbs;
    for (int n = 0; n < 4; ++n) {
      kbs[n].advance();
      for (int m : inboxes[n]) kbs[n].merge_from(snapshots[m]);
    }
    const std::int64_t expected = (t >= written_at + 3) ? written_at : 0;
    pass = pass && kbs[0].entry(cell).refresh == expected;
  }
  report(9, pass, "base table holds the write at t+3, not earlier");
}
