#include "patrolsim/world.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "patrolsim/rng.hpp"

namespace patrolsim {

GridMap::GridMap(int cols, int rows, double cell_size)
    : cols_(cols), rows_(rows), cell_size_(cell_size) {
  if (cols <= 0 || rows <= 0 || cell_size <= 0.0)
    throw std::invalid_argument("grid dimensions must be positive");
}

void GridMap::check_index(int k) const {
  if (k < 0 || k >= cell_count()) throw std::out_of_range("unknown grid index");
}

Vec2 GridMap::center(int k) const {
  check_index(k);
  return {(col_of(k) + 0.5) * cell_size_, (row_of(k) + 0.5) * cell_size_};
}

bool GridMap::contains(Vec2 p) const {
  return p.x >= 0.0 && p.x <= width() && p.y >= 0.0 && p.y <= height();
}

int GridMap::locate(Vec2 p) const {
  if (!contains(p)) throw std::out_of_range("position outside the field");
  const int col = std::min(static_cast<int>(p.x / cell_size_), cols_ - 1);
  const int row = std::min(static_cast<int>(p.y / cell_size_), rows_ - 1);
  return row * cols_ + col;
}

std::vector<int> GridMap::adjacent(int k) const {
  check_index(k);
  std::vector<int> out;
  out.reserve(8);
  const int c0 = col_of(k);
  const int r0 = row_of(k);
  for (int r = r0 - 1; r <= r0 + 1; ++r) {
    if (r < 0 || r >= rows_) continue;
    for (int c = c0 - 1; c <= c0 + 1; ++c) {
      if (c < 0 || c >= cols_) continue;
      if (r == r0 && c == c0) continue;
      out.push_back(r * cols_ + c);
    }
  }
  return out;
}

World::World(GridMap map) : map_(map), last_visit_(map.cell_count(), 0) {}

std::int64_t World::last_visit(int k) const {
  if (k < 0 || k >= map_.cell_count()) throw std::out_of_range("unknown grid index");
  return last_visit_[k];
}

std::int64_t World::idleness(int k, std::int64_t t) const { return t - last_visit(k); }

std::vector<int> World::register_visits(Vec2 position, std::int64_t t) {
  std::vector<int> visited;
  if (!map_.contains(position)) return visited;
  const int k0 = map_.locate(position);
  const int reach = static_cast<int>(std::ceil(kVisitRadius / map_.cell_size()));
  const int c0 = map_.col_of(k0);
  const int r0 = map_.row_of(k0);
  for (int r = std::max(0, r0 - reach); r <= std::min(map_.rows() - 1, r0 + reach); ++r) {
    for (int c = std::max(0, c0 - reach); c <= std::min(map_.cols() - 1, c0 + reach); ++c) {
      const int k = r * map_.cols() + c;
      if (distance(map_.center(k), position) <= kVisitRadius) {
        last_visit_[k] = t;
        visited.push_back(k);
      }
    }
  }
  return visited;
}

std::vector<RobotState> deploy(const GridMap& map, int robot_count, double speed,
                               std::mt19937_64& rng) {
  if (robot_count < 2) throw std::invalid_argument("at least two robots required");
  std::vector<RobotState> robots(robot_count);
  robots[0] = RobotState{0, Vec2{0.0, 0.0}, 0.0, std::nullopt, true, speed};
  for (int n = 1; n < robot_count; ++n) {
    const double x = uniform_unit(rng) * map.width();
    const double y = uniform_unit(rng) * map.height();
    const double heading = uniform_unit(rng) * 2.0 * std::numbers::pi;
    robots[n] = RobotState{n, Vec2{x, y}, heading, std::nullopt, false, speed};
  }
  return robots;
}

}  // namespace patrolsim
