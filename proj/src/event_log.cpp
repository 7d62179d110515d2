#include "patrolsim/event_log.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace patrolsim {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::visit: return "visit";
    case EventKind::target_selected: return "target_selected";
    case EventKind::link_up: return "link_up";
    case EventKind::link_down: return "link_down";
    case EventKind::base_report: return "base_report";
    case EventKind::epsilon_transfer: return "epsilon_transfer";
  }
  throw std::invalid_argument("unknown event kind");
}

EventKind event_kind_from_string(const std::string& name) {
  if (name == "visit") return EventKind::visit;
  if (name == "target_selected") return EventKind::target_selected;
  if (name == "link_up") return EventKind::link_up;
  if (name == "link_down") return EventKind::link_down;
  if (name == "base_report") return EventKind::base_report;
  if (name == "epsilon_transfer") return EventKind::epsilon_transfer;
  throw std::invalid_argument("unknown event kind: " + name);
}

void EventLog::append(const Event& event) {
  if (!enabled_) return;
  if (!events_.empty() && event.t < events_.back().t)
    throw std::logic_error("event timestamps must be non-decreasing");
  events_.push_back(event);
}

void EventLog::write_jsonl(std::ostream& out) const {
  for (const Event& e : events_) {
    nlohmann::ordered_json j;
    j["t"] = e.t;
    j["kind"] = to_string(e.kind);
    j["robot"] = e.robot;
    j["grid"] = e.grid;
    j["value"] = e.value;
    out << j.dump() << '\n';
  }
}

void EventLog::write_jsonl(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_jsonl(out);
}

EventLog EventLog::read_jsonl(std::istream& in) {
  EventLog log;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const nlohmann::json j = nlohmann::json::parse(line);
    log.append(Event{j.at("t").get<std::int64_t>(),
                     event_kind_from_string(j.at("kind").get<std::string>()),
                     j.at("robot").get<int>(), j.at("grid").get<int>(),
                     j.at("value").get<double>()});
  }
  return log;
}

EventLog EventLog::read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_jsonl(in);
}

}  // namespace patrolsim
