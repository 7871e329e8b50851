#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "rankcover/errors.hpp"
#include "rankcover/iop.hpp"

namespace rankcover {

enum class OracleMethod { exhaustive, mincut };

struct OracleResult {
  int min_ranks = 0;
  OrientationAssignment witness;
  OracleMethod method = OracleMethod::exhaustive;
};

inline constexpr int kBruteForceMaxCells = 20;

// Exhaustive minimum over all 2^n assignments. Bit i of the enumeration mask
// set means cell i is V; among minimisers the smallest mask is returned, i.e.
// the lexicographically first witness with H < V.
inline OracleResult brute_force_min_ranks(const IOP& iop) {
  const int n = iop.size();
  if (n > kBruteForceMaxCells)
    throw SizeError("brute_force_min_ranks: " + std::to_string(n) + " cells exceeds limit of " +
                    std::to_string(kBruteForceMaxCells));
  OracleResult res;
  res.method = OracleMethod::exhaustive;
  if (n == 0) return res;

  // Gray-code walk: each step flips one cell, and only the endpoint terms of
  // that cell and its right/bottom neighbours can change.
  OrientationAssignment a(n, Orientation::H);
  auto local = [&](int i) {
    int t = 0;
    for (int c : {i, iop.right(i), iop.bottom(i)}) {
      if (c == IOP::kNone) continue;
      if (a[c] == Orientation::H) {
        const int l = iop.left(c);
        t += (l == IOP::kNone || a[l] == Orientation::V);
      } else {
        const int u = iop.top(c);
        t += (u == IOP::kNone || a[u] == Orientation::H);
      }
    }
    return t;
  };
  int count = count_ranks(iop, a);
  std::uint32_t mask = 0;
  int best = count;
  std::uint32_t best_mask = 0;
  const std::uint32_t total = std::uint32_t{1} << n;
  for (std::uint32_t k = 1; k < total; ++k) {
    const int bit = std::countr_zero(k);
    count -= local(bit);
    a[bit] = a[bit] == Orientation::H ? Orientation::V : Orientation::H;
    count += local(bit);
    mask ^= std::uint32_t{1} << bit;
    if (count < best || (count == best && mask < best_mask)) {
      best = count;
      best_mask = mask;
    }
  }
  res.min_ranks = best;
  res.witness.resize(n);
  for (int i = 0; i < n; ++i) res.witness[i] = (best_mask >> i) & 1u ? Orientation::V : Orientation::H;
  return res;
}

// Dinic max-flow with integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : head_(n, -1), level_(n), iter_(n) {}

  void add_edge(int u, int v, int cap) {
    to_.push_back(v), cap_.push_back(cap), next_.push_back(head_[u]), head_[u] = static_cast<int>(to_.size()) - 1;
    to_.push_back(u), cap_.push_back(0), next_.push_back(head_[v]), head_[v] = static_cast<int>(to_.size()) - 1;
  }

  std::int64_t run(int s, int t) {
    std::int64_t flow = 0;
    while (bfs(s, t)) {
      iter_ = head_;
      while (const int f = dfs(s, t, std::numeric_limits<int>::max())) flow += f;
    }
    return flow;
  }

  // Nodes reachable from s in the final residual graph.
  std::vector<bool> source_side(int s) const {
    std::vector<bool> seen(head_.size(), false);
    std::vector<int> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int e = head_[u]; e != -1; e = next_[e]) {
        if (cap_[e] > 0 && !seen[to_[e]]) {
          seen[to_[e]] = true;
          stack.push_back(to_[e]);
        }
      }
    }
    return seen;
  }

 private:
  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int e = head_[u]; e != -1; e = next_[e]) {
        if (cap_[e] > 0 && level_[to_[e]] < 0) {
          level_[to_[e]] = level_[u] + 1;
          q.push(to_[e]);
        }
      }
    }
    return level_[t] >= 0;
  }

  // iterative blocking-flow DFS; recursion depth would reach the cell count
  int dfs(int s, int t, int limit) {
    std::vector<int> path_edges;
    int u = s;
    while (true) {
      if (u == t) {
        int f = limit;
        for (int e : path_edges) f = std::min(f, cap_[e]);
        for (int e : path_edges) {
          cap_[e] -= f;
          cap_[e ^ 1] += f;
        }
        return f;
      }
      int& e = iter_[u];
      while (e != -1 && !(cap_[e] > 0 && level_[to_[e]] == level_[u] + 1)) e = next_[e];
      if (e == -1) {
        if (path_edges.empty()) return 0;
        level_[u] = -1;  // dead end
        const int back = path_edges.back();
        path_edges.pop_back();
        u = to_[back ^ 1];
        iter_[u] = next_[iter_[u]];
        continue;
      }
      path_edges.push_back(e);
      u = to_[e];
    }
  }

  std::vector<int> head_, to_, cap_, next_;
  std::vector<int> level_, iter_;
};

inline constexpr int kRowDpMaxCols = 10;

// Exhaustive minimum by dynamic programming over rows: the state is the
// orientation pattern of one grid row, and a cell's endpoint status depends
// only on its own row and the row above. Covers every assignment, so it is
// exact for any cell count as long as the grid is at most kRowDpMaxCols wide.
inline OracleResult rowwise_min_ranks(const IOP& iop) {
  if (iop.cols() > kRowDpMaxCols)
    throw SizeError("rowwise_min_ranks: " + std::to_string(iop.cols()) + " columns exceeds limit of " +
                    std::to_string(kRowDpMaxCols));
  OracleResult res;
  res.method = OracleMethod::exhaustive;
  if (iop.empty()) return res;

  const int cols = iop.cols(), rows = iop.rows();
  const std::uint32_t states = std::uint32_t{1} << cols;
  auto present = [&](int row) {
    std::uint32_t m = 0;
    for (int c = 0; c < cols; ++c)
      if (iop.contains(c, row)) m |= std::uint32_t{1} << c;
    return m;
  };
  // bit set = V; bits of absent cells stay clear
  auto row_cost = [&](std::uint32_t mask, std::uint32_t here, std::uint32_t prev, std::uint32_t above) {
    int t = 0;
    for (int c = 0; c < cols; ++c) {
      const std::uint32_t b = std::uint32_t{1} << c;
      if (!(here & b)) continue;
      if (mask & b) {
        t += !(above & b) || !(prev & b);
      } else {
        const bool left_present = c > 0 && (here & (b >> 1));
        t += !left_present || (mask & (b >> 1));
      }
    }
    return t;
  };

  constexpr int kInf = std::numeric_limits<int>::max() / 2;
  std::vector<int> dp(states, kInf), next(states);
  std::vector<std::vector<std::uint32_t>> parent(rows, std::vector<std::uint32_t>(states, 0));
  dp[0] = 0;
  std::uint32_t above = 0;
  for (int r = 0; r < rows; ++r) {
    const std::uint32_t here = present(r);
    std::fill(next.begin(), next.end(), kInf);
    for (std::uint32_t mask = here;; mask = (mask - 1) & here) {
      for (std::uint32_t prev = above;; prev = (prev - 1) & above) {
        if (dp[prev] < kInf) {
          const int c = dp[prev] + row_cost(mask, here, prev, above);
          if (c < next[mask]) {
            next[mask] = c;
            parent[r][mask] = prev;
          }
        }
        if (prev == 0) break;
      }
      if (mask == 0) break;
    }
    dp.swap(next);
    above = here;
  }

  std::uint32_t best = 0;
  for (std::uint32_t m = 0; m < states; ++m)
    if (dp[m] < dp[best]) best = m;
  res.min_ranks = dp[best];
  res.witness.assign(iop.size(), Orientation::H);
  for (int r = rows - 1; r >= 0; --r) {
    for (int c = 0; c < cols; ++c)
      if ((best >> c) & 1u) res.witness[iop.id_at(c, r)] = Orientation::V;
    best = parent[r][best];
  }
  return res;
}

// Minimum via s-t cut. With s_i = 1 for H cells, the rank count is
//   sum over horizontal pairs of max(0, s_i - s_left)
// + sum over vertical pairs of max(0, s_top - s_i)
// with s = 0 standing in for a missing left neighbour and s = 1 for a
// missing top neighbour. Each term is a unit arc; source = H, sink = V.
inline OracleResult mincut_min_ranks(const IOP& iop) {
  const int n = iop.size();
  OracleResult res;
  res.method = OracleMethod::mincut;
  if (n == 0) return res;
  const int source = n;
  const int sink = n + 1;
  MaxFlow g(n + 2);
  for (int i = 0; i < n; ++i) {
    const Cell c = iop.cell(i);
    const int l = iop.id_at(c.col - 1, c.row);
    g.add_edge(i, l == IOP::kNone ? sink : l, 1);
    const int t = iop.id_at(c.col, c.row - 1);
    g.add_edge(t == IOP::kNone ? source : t, i, 1);
  }
  res.min_ranks = static_cast<int>(g.run(source, sink));
  const auto side = g.source_side(source);
  res.witness.resize(n);
  for (int i = 0; i < n; ++i) res.witness[i] = side[i] ? Orientation::H : Orientation::V;
  return res;
}

}  // namespace rankcover
