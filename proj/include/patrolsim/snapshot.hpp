#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "patrolsim/event_log.hpp"
#include "patrolsim/world.hpp"

namespace patrolsim {

// Grid state reconstructed from an event log at one instant.
struct ReplaySnapshot {
  std::int64_t t = 0;
  std::vector<std::int64_t> idleness;   // per cell
  std::map<int, int> robot_cells;       // patroller id -> cell of latest visit, if any
  int base_cell = 0;
};

// Replays visit events up to and including t. Throws when t lies outside
// the log's time span.
ReplaySnapshot replay_snapshot(const EventLog& log, const GridMap& map, std::int64_t t);

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  // row-major, row 0 at the field's y = 0 edge
};

// Renders each cell as a block shaded 255 * (1 - idleness / max idleness),
// all 255 when idleness is uniformly zero. Patroller cells get a
// contrast-inverted dot, the base cell a contrast-inverted ring; block
// corners always carry the pure shade.
GrayImage render_snapshot(const ReplaySnapshot& snapshot, const GridMap& map,
                          int block = 8);

void write_pgm(std::ostream& out, const GrayImage& image);

}  // namespace patrolsim
