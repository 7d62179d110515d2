#include "patrolsim/snapshot.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace patrolsim {

ReplaySnapshot replay_snapshot(const EventLog& log, const GridMap& map,
                               std::int64_t t) {
  if (log.empty()) throw std::runtime_error("event log is empty");
  const auto& events = log.events();
  if (t < events.front().t || t > events.back().t)
    throw std::runtime_error("event log does not cover the requested time");

  ReplaySnapshot snap;
  snap.t = t;
  std::vector<std::int64_t> last_visit(map.cell_count(), 0);
  for (const Event& e : events) {
    if (e.t > t) break;
    if (e.kind != EventKind::visit) continue;
    if (e.grid < 0 || e.grid >= map.cell_count())
      throw std::runtime_error("visit event references a cell outside the grid");
    last_visit[e.grid] = e.t;
    snap.robot_cells[e.robot] = e.grid;
  }
  snap.idleness.reserve(map.cell_count());
  for (int k = 0; k < map.cell_count(); ++k) snap.idleness.push_back(t - last_visit[k]);
  snap.base_cell = map.locate(Vec2{0.0, 0.0});
  return snap;
}

namespace {

std::uint8_t invert_contrast(std::uint8_t shade) { return shade >= 128 ? 0 : 255; }

}  // namespace

GrayImage render_snapshot(const ReplaySnapshot& snapshot, const GridMap& map,
                          int block) {
  if (block < 4) throw std::invalid_argument("block size must be at least 4");
  std::int64_t max_idle = 0;
  for (std::int64_t i : snapshot.idleness) max_idle = std::max(max_idle, i);

  GrayImage img;
  img.width = map.cols() * block;
  img.height = map.rows() * block;
  img.pixels.assign(static_cast<std::size_t>(img.width) * img.height, 255);

  auto fill_cell = [&](int k, std::uint8_t shade) {
    const int x0 = map.col_of(k) * block;
    const int y0 = map.row_of(k) * block;
    for (int y = y0; y < y0 + block; ++y)
      for (int x = x0; x < x0 + block; ++x)
        img.pixels[static_cast<std::size_t>(y) * img.width + x] = shade;
  };

  for (int k = 0; k < map.cell_count(); ++k) {
    const std::uint8_t shade =
        max_idle == 0
            ? 255
            : static_cast<std::uint8_t>(std::llround(
                  255.0 * (1.0 - static_cast<double>(snapshot.idleness[k]) / max_idle)));
    fill_cell(k, shade);
  }

  auto shade_of = [&](int k) {
    return img.pixels[static_cast<std::size_t>(map.row_of(k) * block) * img.width +
                      map.col_of(k) * block];
  };
  auto put = [&](int x, int y, std::uint8_t v) {
    img.pixels[static_cast<std::size_t>(y) * img.width + x] = v;
  };

  // patroller: centered dot; base: one-pixel-inset ring; corners untouched
  for (const auto& [robot, cell] : snapshot.robot_cells) {
    const std::uint8_t mark = invert_contrast(shade_of(cell));
    const int x0 = map.col_of(cell) * block;
    const int y0 = map.row_of(cell) * block;
    const int lo = block / 2 - 1, hi = block / 2;
    for (int y = lo; y <= hi; ++y)
      for (int x = lo; x <= hi; ++x) put(x0 + x, y0 + y, mark);
  }
  {
    const int cell = snapshot.base_cell;
    const std::uint8_t mark = invert_contrast(shade_of(cell));
    const int x0 = map.col_of(cell) * block;
    const int y0 = map.row_of(cell) * block;
    for (int i = 1; i < block - 1; ++i) {
      put(x0 + i, y0 + 1, mark);
      put(x0 + i, y0 + block - 2, mark);
      put(x0 + 1, y0 + i, mark);
      put(x0 + block - 2, y0 + i, mark);
    }
  }
  return img;
}

void write_pgm(std::ostream& out, const GrayImage& image) {
  out << "P2\n" << image.width << ' ' << image.height << "\n255\n";
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      if (x > 0) out << ' ';
      out << static_cast<int>(image.pixels[static_cast<std::size_t>(y) * image.width + x]);
    }
    out << '\n';
  }
}

}  // namespace patrolsim
