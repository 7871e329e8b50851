#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <string>
#include <numeric>
#include <random>
#include <vector>

#include "rankcover/errors.hpp"
#include "rankcover/iop.hpp"
#include "rankcover/lp.hpp"

namespace rankcover {

// Dense integer matrix, row-major.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<int> data;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}
  int& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  int operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
};

// Constraint matrix of the LP in standard equality form:
//   [ A_H  0   -I   0   I   0 ]
//   [ 0    A_V  0  -I   0   I ]
//   [ I    I    0   0   0   0 ]
// over [x_h | x_v | y_h | y_v | z_h | z_v].
inline IntMatrix sef_matrix(const NaiMatrices& m) {
  const int n = m.n;
  IntMatrix a(3 * n, 6 * n);
  for (const Triplet& t : m.a_h) a(t.row, t.col) = t.value;
  for (const Triplet& t : m.a_v) a(n + t.row, n + t.col) = t.value;
  for (int i = 0; i < n; ++i) {
    a(i, 2 * n + i) = -1;
    a(i, 4 * n + i) = 1;
    a(n + i, 3 * n + i) = -1;
    a(n + i, 5 * n + i) = 1;
    a(2 * n + i, i) = 1;
    a(2 * n + i, n + i) = 1;
  }
  return a;
}

// Exact determinant by fraction-free (Bareiss) elimination in 64-bit integers.
// Intermediate values are minors of the input, so they stay small for the
// orders used here.
inline std::int64_t exact_determinant(std::vector<std::int64_t> m, int order) {
  if (order == 0) return 1;
  auto at = [&](int r, int c) -> std::int64_t& { return m[static_cast<std::size_t>(r) * order + c]; };
  std::int64_t sign = 1;
  std::int64_t prev = 1;
  for (int k = 0; k < order - 1; ++k) {
    if (at(k, k) == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < order; ++r)
        if (at(r, k) != 0) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return 0;
      for (int c = 0; c < order; ++c) std::swap(at(k, c), at(swap_row, c));
      sign = -sign;
    }
    for (int i = k + 1; i < order; ++i) {
      for (int j = k + 1; j < order; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
    }
    prev = at(k, k);
  }
  return sign * at(order - 1, order - 1);
}

struct TuSample {
  std::vector<int> rows;
  std::vector<int> cols;
  std::int64_t determinant = 0;
};

struct TuReport {
  std::vector<TuSample> samples;
  int violations = 0;
  bool passed() const { return violations == 0; }
};

inline constexpr int kMaxTuOrder = 8;

// Samples random square submatrices of the standard-form constraint matrix
// and checks each determinant lies in {-1, 0, 1}. Half the samples draw
// columns uniformly; the other half draw them from the support of the
// chosen rows, which makes non-zero determinants far more common.
inline TuReport verify_tu(const IOP& iop, int samples, int max_order, std::uint64_t seed) {
  if (max_order < 1 || max_order > kMaxTuOrder)
    throw ContractError("verify_tu: max_order must be in [1, " + std::to_string(kMaxTuOrder) + "]");
  TuReport report;
  if (iop.empty()) return report;
  const IntMatrix a = sef_matrix(build_nai(iop));
  std::mt19937_64 rng(seed);

  std::vector<int> all_rows(a.rows), all_cols(a.cols);
  std::iota(all_rows.begin(), all_rows.end(), 0);
  std::iota(all_cols.begin(), all_cols.end(), 0);

  for (int s = 0; s < samples; ++s) {
    const int cap = std::min({max_order, a.rows, a.cols});
    const int order = std::uniform_int_distribution<int>(1, cap)(rng);
    TuSample sample;
    std::sample(all_rows.begin(), all_rows.end(), std::back_inserter(sample.rows), order, rng);

    std::vector<int> pool;
    if (s % 2 == 1) {
      for (int r : sample.rows)
        for (int c = 0; c < a.cols; ++c)
          if (a(r, c) != 0) pool.push_back(c);
      std::sort(pool.begin(), pool.end());
      pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    }
    if (static_cast<int>(pool.size()) < order) pool = all_cols;
    std::sample(pool.begin(), pool.end(), std::back_inserter(sample.cols), order, rng);
    std::shuffle(sample.cols.begin(), sample.cols.end(), rng);

    std::vector<std::int64_t> sub(static_cast<std::size_t>(order) * order);
    for (int i = 0; i < order; ++i)
      for (int j = 0; j < order; ++j) sub[static_cast<std::size_t>(i) * order + j] = a(sample.rows[i], sample.cols[j]);
    sample.determinant = exact_determinant(std::move(sub), order);
    if (sample.determinant < -1 || sample.determinant > 1) ++report.violations;
    report.samples.push_back(std::move(sample));
  }
  return report;
}

}  // namespace rankcover
