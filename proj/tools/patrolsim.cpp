#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "patrolsim/batch.hpp"
#include "patrolsim/config_io.hpp"
#include "patrolsim/engine.hpp"
#include "patrolsim/snapshot.hpp"
#include "patrolsim/summary.hpp"

namespace fs = std::filesystem;
using namespace patrolsim;

namespace {

TrialConfig resolve_config(const std::string& config_arg) {
  if (config_arg == "default") return default_config();
  return load_trial_config(config_arg);
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

int cmd_run(const std::string& config_arg, std::optional<std::uint64_t> seed,
            std::optional<std::string> algorithm, const fs::path& out_dir) {
  TrialConfig cfg = resolve_config(config_arg);
  if (seed) cfg.seed = *seed;
  if (algorithm) cfg.algorithm = algorithm_from_string(*algorithm);
  cfg.validate();

  const TrialRun run = run_trial(cfg);
  {
    auto csv = open_output(out_dir / (cfg.trial_id() + ".csv"));
    write_trials_csv(csv, {&run.result, 1});
  }
  run.log.write_jsonl(out_dir / (cfg.trial_id() + ".events.jsonl"));

  std::printf("trial %s\n", cfg.trial_id().c_str());
  std::printf("I_G   = %.6f\n", run.result.mean_idleness);
  std::printf("I_W   = %lld\n", static_cast<long long>(run.result.worst_idleness));
  std::printf("D_MSA = %.6f\n", run.result.mean_sa_delay);
  std::printf("D_WSA = %lld\n", static_cast<long long>(run.result.worst_sa_delay));
  return 0;
}

int cmd_batch(const fs::path& spec_path, std::optional<std::string> out_override) {
  BatchSpec spec = load_batch_spec(spec_path);
  if (out_override) spec.output_dir = *out_override;

  const BatchOutcome outcome = run_batch(spec, batch_thread_cap());

  fs::create_directories(spec.output_dir);
  {
    auto out = open_output(spec.output_dir / "trials.csv");
    write_trials_csv(out, outcome.rows);
  }
  if (!outcome.rows.empty()) {
    const std::vector<SummaryRow> summary = summarize_trials(outcome.rows);
    auto out = open_output(spec.output_dir / "summary.csv");
    write_summary_csv(out, summary);
  }
  std::printf("%zu trials written to %s\n", outcome.rows.size(),
              (spec.output_dir / "trials.csv").string().c_str());
  if (!outcome.failures.empty()) {
    std::fprintf(stderr, "%zu trials failed:\n", outcome.failures.size());
    for (const std::string& failure : outcome.failures)
      std::fprintf(stderr, "  %s\n", failure.c_str());
    return 1;
  }
  return 0;
}

int cmd_summarize(const fs::path& input, std::optional<std::string> out_path) {
  const std::vector<TrialResult> rows = read_trials_csv(input);
  if (rows.empty()) throw std::runtime_error("no trial rows in " + input.string());
  const std::vector<SummaryRow> summary = summarize_trials(rows);
  if (out_path) {
    auto out = open_output(*out_path);
    write_summary_csv(out, summary);
  } else {
    write_summary_csv(std::cout, summary);
  }
  return 0;
}

int cmd_snapshot(const fs::path& log_path, std::int64_t t, const fs::path& out_path,
                 int cols, int rows) {
  const EventLog log = EventLog::read_jsonl(log_path);
  const GridMap map(cols, rows, 30.0);
  const ReplaySnapshot snap = replay_snapshot(log, map, t);
  const GrayImage image = render_snapshot(snap, map);
  auto out = open_output(out_path);
  write_pgm(out, image);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"patrolsim: deterministic multi-robot patrol simulator"};
  app.require_subcommand(1);

  std::string config_arg = "default";
  std::optional<std::uint64_t> seed;
  std::optional<std::string> algorithm;
  std::string run_out = ".";
  auto* run = app.add_subcommand("run", "run one trial");
  run->add_option("--config", config_arg, "config JSON path, or \"default\"");
  run->add_option("--seed", seed, "override the trial seed");
  run->add_option("--algorithm", algorithm, "override the policy: lr|cr|random");
  run->add_option("--out", run_out, "output directory");

  std::string spec_path;
  std::optional<std::string> batch_out;
  auto* batch = app.add_subcommand("batch", "run a sweep of trials");
  batch->add_option("--spec", spec_path, "batch spec JSON path")->required();
  batch->add_option("--out", batch_out, "override the spec's output directory");

  std::string summarize_in;
  std::optional<std::string> summarize_out;
  auto* summarize = app.add_subcommand("summarize", "five-number summaries per cell");
  summarize->add_option("--input", summarize_in, "per-trial CSV path")->required();
  summarize->add_option("--out", summarize_out, "summary CSV path (default: stdout)");

  std::string snapshot_log;
  std::int64_t snapshot_t = 0;
  std::string snapshot_out;
  int snapshot_cols = 20, snapshot_rows = 20;
  auto* snapshot = app.add_subcommand("snapshot", "render a grid idleness image");
  snapshot->add_option("--log", snapshot_log, "event log (JSONL) path")->required();
  snapshot->add_option("--t", snapshot_t, "time to reconstruct")->required();
  snapshot->add_option("--out", snapshot_out, "output PGM path")->required();
  snapshot->add_option("--cols", snapshot_cols, "grid columns (default 20)");
  snapshot->add_option("--rows", snapshot_rows, "grid rows (default 20)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_arg, seed, algorithm, run_out);
    if (batch->parsed()) return cmd_batch(spec_path, batch_out);
    if (summarize->parsed()) return cmd_summarize(summarize_in, summarize_out);
    if (snapshot->parsed())
      return cmd_snapshot(snapshot_log, snapshot_t, snapshot_out, snapshot_cols,
                          snapshot_rows);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
