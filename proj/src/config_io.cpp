#include "patrolsim/config_io.hpp"

#include <fstream>

namespace patrolsim {

namespace {

using nlohmann::json;

[[noreturn]] void bad_type(const std::string& key, const char* expected) {
  throw ConfigError("config key \"" + key + "\" must be " + expected);
}

int get_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) bad_type(key, "an integer");
  return v.get<int>();
}

std::int64_t get_int64(const json& v, const std::string& key) {
  if (!v.is_number_integer()) bad_type(key, "an integer");
  return v.get<std::int64_t>();
}

std::uint64_t get_uint64(const json& v, const std::string& key) {
  if (!v.is_number_integer()) bad_type(key, "an integer");
  if (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)
    bad_type(key, "a non-negative integer");
  return v.get<std::uint64_t>();
}

double get_double(const json& v, const std::string& key) {
  if (!v.is_number()) bad_type(key, "a number");
  return v.get<double>();
}

std::string get_string(const json& v, const std::string& key) {
  if (!v.is_string()) bad_type(key, "a string");
  return v.get<std::string>();
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("invalid JSON in " + path.string() + ": " + e.what());
  }
  return j;
}

}  // namespace

TrialConfig default_config() { return TrialConfig{}; }

TrialConfig trial_config_from_json(const json& j, TrialConfig base) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  TrialConfig cfg = base;
  for (const auto& [key, value] : j.items()) {
    if (key == "cols") cfg.cols = get_int(value, key);
    else if (key == "rows") cfg.rows = get_int(value, key);
    else if (key == "cell_size") cfg.cell_size = get_double(value, key);
    else if (key == "field_size") cfg.field_size = get_double(value, key);
    else if (key == "robots") cfg.robots = get_int(value, key);
    else if (key == "speed") cfg.speed = get_double(value, key);
    else if (key == "sense_range") cfg.sense_range = get_double(value, key);
    else if (key == "comm_range") cfg.comm_range = get_double(value, key);
    else if (key == "target_range") cfg.policy.target_range = get_double(value, key);
    else if (key == "need_max") cfg.policy.need_max = get_double(value, key);
    else if (key == "need_pivot") cfg.policy.need_pivot = get_double(value, key);
    else if (key == "absorb_gain") cfg.policy.absorb_gain = get_double(value, key);
    else if (key == "degree_gain") cfg.policy.degree_gain = get_double(value, key);
    else if (key == "absorb_threshold")
      cfg.policy.absorb_threshold = get_double(value, key);
    else if (key == "duration") cfg.duration = get_int64(value, key);
    else if (key == "start_time") cfg.start_time = get_int64(value, key);
    else if (key == "seed") cfg.seed = get_uint64(value, key);
    else if (key == "algorithm") cfg.algorithm = algorithm_from_string(get_string(value, key));
    else throw ConfigError("unknown config key: \"" + key + "\"");
  }
  cfg.validate();
  return cfg;
}

json trial_config_to_json(const TrialConfig& c) {
  nlohmann::ordered_json j;
  j["cols"] = c.cols;
  j["rows"] = c.rows;
  j["cell_size"] = c.cell_size;
  j["field_size"] = c.field_size;
  j["robots"] = c.robots;
  j["speed"] = c.speed;
  j["sense_range"] = c.sense_range;
  j["comm_range"] = c.comm_range;
  j["target_range"] = c.policy.target_range;
  j["need_max"] = c.policy.need_max;
  j["need_pivot"] = c.policy.need_pivot;
  j["absorb_gain"] = c.policy.absorb_gain;
  j["degree_gain"] = c.policy.degree_gain;
  j["absorb_threshold"] = c.policy.absorb_threshold;
  j["duration"] = c.duration;
  j["start_time"] = c.start_time;
  j["seed"] = c.seed;
  j["algorithm"] = to_string(c.algorithm);
  return j;
}

TrialConfig load_trial_config(const std::filesystem::path& path) {
  return trial_config_from_json(read_json_file(path));
}

void BatchSpec::validate() const {
  if (algorithms.empty()) throw ConfigError("algorithms must not be empty");
  if (robot_counts.empty()) throw ConfigError("robot_counts must not be empty");
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

BatchSpec batch_spec_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("batch spec must be a JSON object");
  BatchSpec spec;
  for (const auto& [key, value] : j.items()) {
    if (key == "algorithms") {
      if (!value.is_array()) bad_type(key, "an array of strings");
      spec.algorithms.clear();
      for (const auto& name : value)
        spec.algorithms.push_back(algorithm_from_string(get_string(name, key)));
    } else if (key == "robot_counts") {
      if (!value.is_array()) bad_type(key, "an array of integers");
      spec.robot_counts.clear();
      for (const auto& n : value) spec.robot_counts.push_back(get_int(n, key));
    } else if (key == "trials") {
      spec.trials = get_int(value, key);
    } else if (key == "base_seed") {
      spec.base_seed = get_uint64(value, key);
    } else if (key == "output_dir") {
      spec.output_dir = get_string(value, key);
    } else if (key == "config") {
      if (!value.is_object()) bad_type(key, "an object");
      for (const char* swept : {"robots", "seed", "algorithm"})
        if (value.contains(swept))
          throw ConfigError(std::string("config key \"") + swept +
                            "\" is set by the batch sweep and cannot appear in "
                            "the nested config");
      spec.base = trial_config_from_json(value);
    } else {
      throw ConfigError("unknown batch spec key: \"" + key + "\"");
    }
  }
  spec.validate();
  return spec;
}

BatchSpec load_batch_spec(const std::filesystem::path& path) {
  return batch_spec_from_json(read_json_file(path));
}

}  // namespace patrolsim
