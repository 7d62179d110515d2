#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "patrolsim/engine.hpp"

namespace patrolsim {

// Table defaults: 600 x 600 m field of 20 x 20 cells, 8 robots at
// 1.25 m/s, 40000 s trials, LR policy.
TrialConfig default_config();

// Flat JSON object mirroring TrialConfig field names. Unknown keys are
// rejected, naming the key.
TrialConfig trial_config_from_json(const nlohmann::json& j,
                                   TrialConfig base = default_config());
nlohmann::json trial_config_to_json(const TrialConfig& config);
TrialConfig load_trial_config(const std::filesystem::path& path);

struct BatchSpec {
  std::vector<Algorithm> algorithms{Algorithm::lr, Algorithm::cr,
                                    Algorithm::random_walk};
  std::vector<int> robot_counts{4, 8, 12};
  int trials = 10;
  std::uint64_t base_seed = 1;
  std::filesystem::path output_dir = "out";
  TrialConfig base = default_config();  // per-trial settings shared by all cells

  void validate() const;
};

BatchSpec batch_spec_from_json(const nlohmann::json& j);
BatchSpec load_batch_spec(const std::filesystem::path& path);

}  // namespace patrolsim
