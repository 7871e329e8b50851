#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace rankcover {

// Textbook two-phase tableau simplex for min c'x s.t. Ax = b, x >= 0, with
// Bland's rule. Dense and O(m k) per pivot: meant for small instances and
// for cross-checking the network solver, not for production sizes.
struct DenseLpResult {
  enum class Status { optimal, infeasible, unbounded } status = Status::infeasible;
  std::vector<double> x;
  double objective = 0.0;
  long pivots = 0;
};

class DenseSimplex {
 public:
  // a is row-major m x k.
  DenseSimplex(int m, int k, std::vector<double> a, std::vector<double> b, std::vector<double> c)
      : m_(m), k_(k), a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}

  DenseLpResult solve() {
    DenseLpResult res;
    // tableau columns: k structural, m artificial, rhs
    const int width = k_ + m_ + 1;
    t_.assign(static_cast<std::size_t>(m_ + 1) * width, 0.0);
    basis_.assign(m_, 0);
    for (int i = 0; i < m_; ++i) {
      const double sign = b_[i] < 0 ? -1.0 : 1.0;
      for (int j = 0; j < k_; ++j) at(i, j) = sign * a_[static_cast<std::size_t>(i) * k_ + j];
      at(i, k_ + i) = 1.0;
      at(i, width - 1) = sign * b_[i];
      basis_[i] = k_ + i;
    }

    // phase 1: minimise the sum of artificials
    std::vector<double> phase1(k_ + m_, 0.0);
    for (int i = 0; i < m_; ++i) phase1[k_ + i] = 1.0;
    load_objective(phase1);
    if (!iterate(k_ + m_, res.pivots)) return res;  // cannot be unbounded
    if (at(m_, width - 1) < -kEps) {
      res.status = DenseLpResult::Status::infeasible;
      return res;
    }
    // drive degenerate artificials out of the basis where possible
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < k_) continue;
      for (int j = 0; j < k_; ++j) {
        if (std::abs(at(i, j)) > kEps) {
          pivot_on(i, j);
          ++res.pivots;
          break;
        }
      }
    }

    std::vector<double> phase2(k_ + m_, 0.0);
    for (int j = 0; j < k_; ++j) phase2[j] = c_[j];
    load_objective(phase2);
    if (!iterate(k_, res.pivots)) {
      res.status = DenseLpResult::Status::unbounded;
      return res;
    }

    res.x.assign(k_, 0.0);
    for (int i = 0; i < m_; ++i)
      if (basis_[i] < k_) res.x[basis_[i]] = at(i, width - 1);
    res.objective = 0.0;
    for (int j = 0; j < k_; ++j) res.objective += c_[j] * res.x[j];
    res.status = DenseLpResult::Status::optimal;
    return res;
  }

 private:
  static constexpr double kEps = 1e-9;

  double& at(int i, int j) { return t_[static_cast<std::size_t>(i) * (k_ + m_ + 1) + j]; }

  // objective row holds reduced costs; rhs cell holds -z
  void load_objective(const std::vector<double>& cost) {
    const int width = k_ + m_ + 1;
    for (int j = 0; j < width; ++j) at(m_, j) = j < k_ + m_ ? cost[j] : 0.0;
    for (int i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < width; ++j) at(m_, j) -= cb * at(i, j);
    }
  }

  // Returns false on unboundedness. Columns >= allowed never enter.
  bool iterate(int allowed, long& pivots) {
    const int width = k_ + m_ + 1;
    while (true) {
      int enter = -1;
      for (int j = 0; j < allowed; ++j) {
        if (at(m_, j) < -kEps) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double aij = at(i, enter);
        if (aij <= kEps) continue;
        const double ratio = at(i, width - 1) / aij;
        if (leave < 0 || ratio < best - kEps || (std::abs(ratio - best) <= kEps && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot_on(leave, enter);
      ++pivots;
    }
  }

  void pivot_on(int r, int c) {
    const int width = k_ + m_ + 1;
    const double p = at(r, c);
    for (int j = 0; j < width; ++j) at(r, j) /= p;
    for (int i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (int j = 0; j < width; ++j) at(i, j) -= f * at(r, j);
    }
    basis_[r] = c;
  }

  int m_, k_;
  std::vector<double> a_, b_, c_;
  std::vector<double> t_;
  std::vector<int> basis_;
};

}  // namespace rankcover
