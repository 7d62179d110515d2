#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace patrolsim {

enum class EventKind {
  visit,
  target_selected,
  link_up,
  link_down,
  base_report,
  epsilon_transfer,
};

const char* to_string(EventKind kind);
EventKind event_kind_from_string(const std::string& name);

// grid doubles as the peer id for link and transfer events; -1 when unused.
struct Event {
  std::int64_t t = 0;
  EventKind kind = EventKind::visit;
  int robot = -1;
  int grid = -1;
  double value = 0.0;

  friend bool operator==(const Event&, const Event&) = default;
};

// Append-only trial record with non-decreasing timestamps. Disabled logs
// swallow appends so the engine can log unconditionally.
class EventLog {
 public:
  void set_enabled(bool enabled) { enabled_ = enabled; }
  bool enabled() const { return enabled_; }

  void append(const Event& event);
  const std::vector<Event>& events() const { return events_; }
  bool empty() const { return events_.empty(); }

  void write_jsonl(std::ostream& out) const;
  void write_jsonl(const std::filesystem::path& path) const;
  static EventLog read_jsonl(std::istream& in);
  static EventLog read_jsonl(const std::filesystem::path& path);

 private:
  std::vector<Event> events_;
  bool enabled_ = true;
};

}  // namespace patrolsim
