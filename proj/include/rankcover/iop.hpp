#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rankcover/errors.hpp"
#include "rankcover/grid_map.hpp"

namespace rankcover {

struct Cell {
  int col = 0;
  int row = 0;
  auto operator<=>(const Cell&) const = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

enum class Orientation : std::uint8_t { H, V };

inline char to_char(Orientation o) { return o == Orientation::H ? 'H' : 'V'; }

using OrientationAssignment = std::vector<Orientation>;

// Integral orthogonal polygon: the set of l x l grid cells the tool can occupy.
//
// Cell ids are dense and row-major: id(a) < id(b) iff (row, col) of a is
// lexicographically smaller. This fixes the column order of every matrix
// built from an IOP.
class IOP {
 public:
  static constexpr int kNone = -1;

  IOP() = default;

  // `cells` may be unsorted and contain duplicates; coordinates must lie in
  // [0, cols) x [0, rows).
  IOP(int cols, int rows, double cell_size, std::vector<Cell> cells)
      : cols_(cols), rows_(rows), cell_size_(cell_size) {
    if (cols < 0 || rows < 0) throw ContractError("IOP: negative dimensions");
    if (!(cell_size > 0.0)) throw ContractError("IOP: cell_size must be positive");
    std::sort(cells.begin(), cells.end(),
              [](const Cell& a, const Cell& b) { return std::pair(a.row, a.col) < std::pair(b.row, b.col); });
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    lookup_.assign(static_cast<std::size_t>(cols) * rows, kNone);
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const Cell& c = cells[i];
      if (c.col < 0 || c.row < 0 || c.col >= cols || c.row >= rows)
        throw ContractError("IOP: cell outside grid");
      lookup_[static_cast<std::size_t>(c.row) * cols + c.col] = static_cast<int>(i);
    }
    cells_ = std::move(cells);
  }

  int cols() const { return cols_; }
  int rows() const { return rows_; }
  double cell_size() const { return cell_size_; }
  int size() const { return static_cast<int>(cells_.size()); }
  bool empty() const { return cells_.empty(); }
  std::span<const Cell> cells() const { return cells_; }
  const Cell& cell(int id) const { return cells_[id]; }

  int id_at(int col, int row) const {
    if (col < 0 || row < 0 || col >= cols_ || row >= rows_) return kNone;
    return lookup_[static_cast<std::size_t>(row) * cols_ + col];
  }
  bool contains(int col, int row) const { return id_at(col, row) != kNone; }

  int left(int id) const { return id_at(cells_[id].col - 1, cells_[id].row); }
  int right(int id) const { return id_at(cells_[id].col + 1, cells_[id].row); }
  int top(int id) const { return id_at(cells_[id].col, cells_[id].row - 1); }
  int bottom(int id) const { return id_at(cells_[id].col, cells_[id].row + 1); }

  // Border identifiers: the left/top neighbour is outside the IOP (map edge or obstacle).
  bool left_border(int id) const { return left(id) == kNone; }
  bool top_border(int id) const { return top(id) == kNone; }

  Point center(int id) const {
    return {(cells_[id].col + 0.5) * cell_size_, (cells_[id].row + 0.5) * cell_size_};
  }

  bool operator==(const IOP& o) const {
    return cols_ == o.cols_ && rows_ == o.rows_ && cell_size_ == o.cell_size_ && cells_ == o.cells_;
  }

 private:
  int cols_ = 0;
  int rows_ = 0;
  double cell_size_ = 1.0;
  std::vector<Cell> cells_;
  std::vector<int> lookup_;
};

// Cell (i, j) covers pixels [i*w, (i+1)*w) x [j*w, (j+1)*w) and is kept only
// when every pixel in the block is free. Partial blocks at the right and
// bottom edges are dropped.
inline IOP build_iop(const GridMap& map, int tool_width_px) {
  if (tool_width_px < 1) throw ContractError("build_iop: tool width must be >= 1 pixel");
  const int cols = map.width / tool_width_px;
  const int rows = map.height / tool_width_px;
  std::vector<Cell> cells;
  for (int j = 0; j < rows; ++j) {
    for (int i = 0; i < cols; ++i) {
      bool free = true;
      for (int y = j * tool_width_px; free && y < (j + 1) * tool_width_px; ++y)
        for (int x = i * tool_width_px; free && x < (i + 1) * tool_width_px; ++x)
          free = !map.obstacle(x, y);
      if (free) cells.push_back({i, j});
    }
  }
  return IOP(cols, rows, tool_width_px * map.resolution, std::move(cells));
}

// A maximal run of same-oriented cells: H runs left to right, V runs top to bottom.
struct Rank {
  Orientation orientation = Orientation::H;
  std::vector<int> cells;
  Point first;  // center of cells.front()
  Point last;   // center of cells.back()

  double length() const { return std::hypot(last.x - first.x, last.y - first.y); }
  bool operator==(const Rank&) const = default;
};

namespace detail {

inline void check_assignment(const IOP& iop, const OrientationAssignment& a, const char* who) {
  if (static_cast<int>(a.size()) != iop.size())
    throw ContractError(std::string(who) + ": assignment has " + std::to_string(a.size()) +
                        " labels for " + std::to_string(iop.size()) + " cells");
}

inline bool h_endpoint(const IOP& iop, const OrientationAssignment& a, int i) {
  if (a[i] != Orientation::H) return false;
  const int l = iop.left(i);
  return l == IOP::kNone || a[l] == Orientation::V;
}

inline bool v_endpoint(const IOP& iop, const OrientationAssignment& a, int i) {
  if (a[i] != Orientation::V) return false;
  const int t = iop.top(i);
  return t == IOP::kNone || a[t] == Orientation::H;
}

}  // namespace detail

// Number of left endpoints of H ranks plus top endpoints of V ranks.
inline int count_ranks(const IOP& iop, const OrientationAssignment& a) {
  detail::check_assignment(iop, a, "count_ranks");
  int total = 0;
  for (int i = 0; i < iop.size(); ++i)
    total += detail::h_endpoint(iop, a, i) + detail::v_endpoint(iop, a, i);
  return total;
}

// Ranks are returned ordered by their first cell id.
inline std::vector<Rank> extract_ranks(const IOP& iop, const OrientationAssignment& a) {
  detail::check_assignment(iop, a, "extract_ranks");
  std::vector<Rank> ranks;
  for (int i = 0; i < iop.size(); ++i) {
    const bool h = detail::h_endpoint(iop, a, i);
    if (!h && !detail::v_endpoint(iop, a, i)) continue;
    Rank r;
    r.orientation = a[i];
    for (int c = i; c != IOP::kNone && a[c] == r.orientation; c = h ? iop.right(c) : iop.bottom(c))
      r.cells.push_back(c);
    r.first = iop.center(r.cells.front());
    r.last = iop.center(r.cells.back());
    ranks.push_back(std::move(r));
  }
  return ranks;
}

// Assignment with every cell labelled by `ranks`; cells absent from all ranks keep H.
inline OrientationAssignment assignment_from_ranks(const IOP& iop, std::span<const Rank> ranks) {
  OrientationAssignment a(iop.size(), Orientation::H);
  for (const Rank& r : ranks)
    for (int c : r.cells) a[c] = r.orientation;
  return a;
}

// 4-connected components of the cell set; component[i] is a dense label.
inline std::vector<int> connected_components(const IOP& iop, int* count = nullptr) {
  std::vector<int> comp(iop.size(), -1);
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < iop.size(); ++s) {
    if (comp[s] != -1) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : {iop.left(u), iop.right(u), iop.top(u), iop.bottom(u)}) {
        if (v != IOP::kNone && comp[v] == -1) {
          comp[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

}  // namespace rankcover
