#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "rankcover/iop.hpp"

namespace rankcover {

struct Triplet {
  int row = 0;
  int col = 0;
  int value = 0;
  bool operator==(const Triplet&) const = default;
};

// Node-arc incidence matrices of the horizontal and vertical neighbour graphs.
//
// Row i belongs to cell i: +1 at column i and -1 at the column of its left
// (A_H) or top (A_V) neighbour when that neighbour is a cell. Border
// identifiers carry no variable, so their rows keep the single +1 entry.
// Entries are sorted by (row, col).
struct NaiMatrices {
  int n = 0;
  std::vector<Triplet> a_h;
  std::vector<Triplet> a_v;
};

inline NaiMatrices build_nai(const IOP& iop) {
  NaiMatrices m;
  m.n = iop.size();
  m.a_h.reserve(2 * m.n);
  m.a_v.reserve(2 * m.n);
  for (int i = 0; i < m.n; ++i) {
    // neighbour ids are always smaller than i under row-major ordering
    if (const int l = iop.left(i); l != IOP::kNone) m.a_h.push_back({i, l, -1});
    m.a_h.push_back({i, i, +1});
    if (const int t = iop.top(i); t != IOP::kNone) m.a_v.push_back({i, t, -1});
    m.a_v.push_back({i, i, +1});
  }
  return m;
}

// Sparse row view: the (at most two) entries of row i.
struct NaiRow {
  int self = -1;
  int neighbour = -1;  // -1 when the row has a single entry
};

inline std::vector<NaiRow> nai_rows(const std::vector<Triplet>& entries, int n) {
  std::vector<NaiRow> rows(n);
  for (const Triplet& t : entries) {
    if (t.value == 1) {
      rows[t.row].self = t.col;
    } else {
      rows[t.row].neighbour = t.col;
    }
  }
  return rows;
}

// min 1'y_h + 1'y_v
//   s.t. A_H x_h - y_h <= 0
//        A_V x_v - y_v <= 0
//        x_h + x_v = 1
//        x_h, x_v, y_h, y_v >= 0
//
// Variable layout for dense views: [x_h | x_v | y_h | y_v], each of length n.
struct LpProblem {
  int n = 0;
  NaiMatrices matrices;

  int variable_count() const { return 4 * n; }
  int inequality_count() const { return 2 * n; }
  int equality_count() const { return n; }
};

inline LpProblem build_lp(const IOP& iop) { return LpProblem{iop.size(), build_nai(iop)}; }

enum class LpStatus { optimal, infeasible, numeric_failure };

inline std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::numeric_failure: return "numeric-failure";
  }
  return "unknown";
}

struct LpSolution {
  std::vector<double> x_h, x_v, y_h, y_v;
  double objective = 0.0;
  LpStatus status = LpStatus::infeasible;
  long pivots = 0;
};

// CPLEX LP text format with exact integer coefficients.
inline void write_lp_format(std::ostream& out, const LpProblem& p) {
  auto var = [](const char* name, int i) { return std::string(name) + std::to_string(i); };
  out << "\\ minimum-rank partition LP, " << p.n << " cells\n";
  out << "Minimize\n obj:";
  if (p.n == 0) out << " 0 dummy";
  for (int i = 0; i < p.n; ++i) out << (i ? " + " : " ") << var("yh", i);
  for (int i = 0; i < p.n; ++i) out << " + " << var("yv", i);
  out << "\nSubject To\n";
  auto write_rows = [&](const std::vector<Triplet>& a, const char* x, const char* y, const char* tag) {
    const auto rows = nai_rows(a, p.n);
    for (int i = 0; i < p.n; ++i) {
      out << ' ' << tag << i << ": " << var(x, rows[i].self);
      if (rows[i].neighbour >= 0) out << " - " << var(x, rows[i].neighbour);
      out << " - " << var(y, i) << " <= 0\n";
    }
  };
  write_rows(p.matrices.a_h, "xh", "yh", "h");
  write_rows(p.matrices.a_v, "xv", "yv", "v");
  for (int i = 0; i < p.n; ++i) out << " e" << i << ": " << var("xh", i) << " + " << var("xv", i) << " = 1\n";
  if (p.n == 0) out << " e0: dummy = 0\n";
  out << "End\n";
}

}  // namespace rankcover
