#pragma once

#include <algorithm>
#include <cstdint>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "rankcover/errors.hpp"
#include "rankcover/grid_map.hpp"

namespace rankcover {

struct MapGenOptions {
  int rows = 30;
  int cols = 30;
  double obstacle_density = 0.2;  // target fraction of obstacle pixels before trimming
  std::uint64_t seed = 0;
};

namespace detail {

struct Region {
  int x0, y0, x1, y1;  // half-open
  int w() const { return x1 - x0; }
  int h() const { return y1 - y0; }
};

inline std::size_t obstacle_count(const GridMap& m) { return m.occupancy.size() - m.free_count(); }

// Walls dividing the map into rooms; every wall keeps one or two doors.
// Returns the number of rooms.
inline int carve_rooms(GridMap& m, std::mt19937_64& rng, std::size_t wall_budget) {
  constexpr int kMinRoom = 4;
  int rooms = 0;
  std::vector<Region> stack{{0, 0, m.width, m.height}};
  while (!stack.empty()) {
    const Region r = stack.back();
    stack.pop_back();
    const bool can_v = r.w() >= 2 * kMinRoom + 1;
    const bool can_h = r.h() >= 2 * kMinRoom + 1;
    if (!can_v && !can_h) {
      ++rooms;
      continue;
    }
    const bool vertical = can_v && (!can_h || (r.w() > r.h()) || (r.w() == r.h() && (rng() & 1)));
    const int span = vertical ? r.h() : r.w();
    if (obstacle_count(m) + static_cast<std::size_t>(span) > wall_budget) {
      ++rooms;
      continue;
    }

    const int lo = (vertical ? r.x0 : r.y0) + kMinRoom;
    const int hi = (vertical ? r.x1 : r.y1) - kMinRoom - 1;
    const int at = std::uniform_int_distribution<int>(lo, hi)(rng);
    std::vector<bool> door(span, false);
    const int doors = span >= 12 ? 2 : 1;
    for (int d = 0; d < doors; ++d) {
      const int width = std::min(span, std::uniform_int_distribution<int>(2, 3)(rng));
      const int start = std::uniform_int_distribution<int>(0, span - width)(rng);
      std::fill(door.begin() + start, door.begin() + start + width, true);
    }
    for (int k = 0; k < span; ++k) {
      if (door[k]) continue;
      if (vertical) m.set_obstacle(at, r.y0 + k, true);
      else m.set_obstacle(r.x0 + k, at, true);
    }
    if (vertical) {
      stack.push_back({r.x0, r.y0, at, r.y1});
      stack.push_back({at + 1, r.y0, r.x1, r.y1});
    } else {
      stack.push_back({r.x0, r.y0, r.x1, at});
      stack.push_back({r.x0, at + 1, r.x1, r.y1});
    }
  }
  return rooms;
}

// Frees everything outside the largest 4-connected free component.
inline void keep_largest_component(GridMap& m) {
  const int n = m.width * m.height;
  std::vector<int> label(n, -1);
  int best = -1;
  std::size_t best_size = 0;
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (m.occupancy[s] || label[s] != -1) continue;
    std::size_t size = 0;
    std::queue<int> q;
    q.push(s);
    label[s] = next;
    while (!q.empty()) {
      const int c = q.front();
      q.pop();
      ++size;
      const int x = c % m.width, y = c / m.width;
      const int nx[4] = {x - 1, x + 1, x, x};
      const int ny[4] = {y, y, y - 1, y + 1};
      for (int k = 0; k < 4; ++k) {
        if (!m.in_bounds(nx[k], ny[k]) || m.obstacle(nx[k], ny[k])) continue;
        const int id = ny[k] * m.width + nx[k];
        if (label[id] == -1) {
          label[id] = next;
          q.push(id);
        }
      }
    }
    if (size > best_size) {
      best_size = size;
      best = next;
    }
    ++next;
  }
  for (int c = 0; c < n; ++c)
    if (!m.occupancy[c] && label[c] != best) m.occupancy[c] = true;
}

}  // namespace detail

// Seeded rectilinear map: room walls with doors, then rectangular clutter
// until the obstacle fraction reaches the target. Only the largest free
// component is kept, so the result is connected and has a free cell.
// `rooms`, when given, receives the number of rooms the walls enclose.
inline GridMap generate_map(const MapGenOptions& opt, int* rooms = nullptr) {
  if (opt.rows < 1 || opt.cols < 1) throw ContractError("generate_map: rows and cols must be >= 1");
  if (!(opt.obstacle_density >= 0.0 && opt.obstacle_density < 1.0))
    throw ContractError("generate_map: density must lie in [0, 1)");
  GridMap m(opt.cols, opt.rows);
  if (rooms) *rooms = 1;
  if (opt.obstacle_density == 0.0) return m;

  std::mt19937_64 rng(opt.seed);
  const std::size_t total = m.occupancy.size();
  const auto target = static_cast<std::size_t>(opt.obstacle_density * static_cast<double>(total));
  const int carved = detail::carve_rooms(m, rng, target / 2);
  if (rooms) *rooms = carved;

  std::uniform_int_distribution<int> size(1, 4);
  std::uniform_int_distribution<int> px(0, m.width - 1), py(0, m.height - 1);
  for (int attempt = 0; detail::obstacle_count(m) < target && attempt < 100000; ++attempt) {
    const int w = size(rng), h = size(rng);
    const int x = px(rng), y = py(rng);
    for (int j = y; j < std::min(y + h, m.height); ++j)
      for (int i = x; i < std::min(x + w, m.width); ++i) m.set_obstacle(i, j, true);
  }

  if (m.free_count() == 0) m.set_obstacle(px(rng), py(rng), false);
  detail::keep_largest_component(m);
  return m;
}

inline std::string generate_ascii_map(const MapGenOptions& opt) { return to_ascii(generate_map(opt)); }

}  // namespace rankcover
