#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "patrolsim/geometry.hpp"

namespace patrolsim {

// Row-major field of square cells anchored at the origin corner.
class GridMap {
 public:
  GridMap(int cols, int rows, double cell_size);

  int cols() const { return cols_; }
  int rows() const { return rows_; }
  double cell_size() const { return cell_size_; }
  int cell_count() const { return cols_ * rows_; }
  double width() const { return cols_ * cell_size_; }
  double height() const { return rows_ * cell_size_; }

  int col_of(int k) const { return k % cols_; }
  int row_of(int k) const { return k / cols_; }
  Vec2 center(int k) const;

  bool contains(Vec2 p) const;

  // Containing cell of a position. Points on a shared edge fall into the
  // higher-index cell; the outer field boundary stays in range.
  int locate(Vec2 p) const;

  // The <= 8 cells around k (Moore neighborhood), ascending index.
  std::vector<int> adjacent(int k) const;

 private:
  void check_index(int k) const;

  int cols_;
  int rows_;
  double cell_size_;
};

struct RobotState {
  int id = 0;
  Vec2 position{};
  double heading = 0.0;
  std::optional<int> target;
  bool is_base = false;
  double speed = 0.0;
};

// Ground truth: grid geometry plus the last visit time of every cell.
class World {
 public:
  explicit World(GridMap map);

  const GridMap& map() const { return map_; }
  std::int64_t last_visit(int k) const;
  std::int64_t idleness(int k, std::int64_t t) const;

  // Stamps every cell whose center lies within kVisitRadius of position
  // (inclusive) and returns them in ascending index order.
  std::vector<int> register_visits(Vec2 position, std::int64_t t);

  static constexpr double kVisitRadius = 3.0;

 private:
  GridMap map_;
  std::vector<std::int64_t> last_visit_;
};

// Base robot at the origin, patrollers uniform over the field with uniform
// headings. Identical seeds give identical placements.
std::vector<RobotState> deploy(const GridMap& map, int robot_count, double speed,
                               std::mt19937_64& rng);

}  // namespace patrolsim
