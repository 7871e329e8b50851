#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rankcover/dense_simplex.hpp"
#include "rankcover/iop.hpp"
#include "rankcover/lp.hpp"
#include "rankcover/network_simplex.hpp"

namespace rankcover {

inline constexpr double kIntegralityTol = 1e-6;

namespace detail {

// Fill y from x and stamp objective/status after checking the integrality
// certificate. `dual_bound` is an independent optimality witness (NaN to skip).
inline void finish_solution(const LpProblem& p, LpSolution& s, double dual_bound) {
  const auto h_rows = nai_rows(p.matrices.a_h, p.n);
  const auto v_rows = nai_rows(p.matrices.a_v, p.n);
  s.y_h.assign(p.n, 0.0);
  s.y_v.assign(p.n, 0.0);
  s.objective = 0.0;
  for (int i = 0; i < p.n; ++i) {
    double ah = s.x_h[h_rows[i].self];
    if (h_rows[i].neighbour >= 0) ah -= s.x_h[h_rows[i].neighbour];
    double av = s.x_v[v_rows[i].self];
    if (v_rows[i].neighbour >= 0) av -= s.x_v[v_rows[i].neighbour];
    s.y_h[i] = std::max(0.0, ah);
    s.y_v[i] = std::max(0.0, av);
    s.objective += s.y_h[i] + s.y_v[i];
  }
  bool ok = std::abs(s.objective - std::round(s.objective)) <= kIntegralityTol;
  if (!std::isnan(dual_bound)) ok = ok && std::abs(s.objective - dual_bound) <= kIntegralityTol;
  for (int i = 0; i < p.n && ok; ++i) {
    ok = std::abs(s.x_h[i] - std::round(s.x_h[i])) <= kIntegralityTol &&
         std::abs(s.x_h[i] + s.x_v[i] - 1.0) <= kIntegralityTol && s.x_h[i] >= -kIntegralityTol &&
         s.x_v[i] >= -kIntegralityTol;
  }
  s.status = ok ? LpStatus::optimal : LpStatus::numeric_failure;
}

}  // namespace detail

// Solves the relaxed LP exactly.
//
// Eliminating x_v = 1 - x_h turns every constraint row into a difference
// constraint between two potentials (a cell, or one of two terminals fixed
// at 0 and 1), so the LP is the dual of a min-cost circulation: one unit
// arc per endpoint row plus a return arc of cost -1. That circulation is solved
// with the network simplex; the optimal tree potentials are a vertex of the
// original LP, and the circulation cost is the dual bound that certifies it.
inline LpSolution solve_lp(const LpProblem& p) {
  LpSolution s;
  if (p.n == 0) {
    s.status = LpStatus::optimal;
    return s;
  }
  const int zero = p.n;     // potential 0: left border
  const int one = p.n + 1;  // potential 1: top border
  NetworkSimplex net(p.n + 2);
  for (const NaiRow& r : nai_rows(p.matrices.a_h, p.n))
    net.add_arc(r.self, r.neighbour >= 0 ? r.neighbour : zero, 1, 0);
  for (const NaiRow& r : nai_rows(p.matrices.a_v, p.n))
    net.add_arc(r.neighbour >= 0 ? r.neighbour : one, r.self, 1, 0);
  const int ret = net.add_arc(zero, one, 2 * static_cast<NetworkSimplex::Value>(p.n) + 1, -1);

  if (net.run() != NetworkSimplex::Status::optimal || !net.in_basis(ret)) {
    s.status = LpStatus::numeric_failure;
    return s;
  }
  s.pivots = net.pivots();
  const auto base = net.potential(zero);
  s.x_h.resize(p.n);
  s.x_v.resize(p.n);
  for (int i = 0; i < p.n; ++i) {
    const double x = std::clamp(static_cast<double>(base - net.potential(i)), 0.0, 1.0);
    s.x_h[i] = x;
    s.x_v[i] = 1.0 - x;
  }
  detail::finish_solution(p, s, static_cast<double>(-net.total_cost()));
  return s;
}

// Same LP in standard equality form, solved by the dense tableau simplex.
// Variable order is [x_h | x_v | y_h | y_v | z_h | z_v]; practical up to a
// few dozen cells.
inline LpSolution solve_lp_dense(const LpProblem& p) {
  LpSolution s;
  const int n = p.n;
  if (n == 0) {
    s.status = LpStatus::optimal;
    return s;
  }
  const int m = 3 * n;
  const int k = 6 * n;
  std::vector<double> a(static_cast<std::size_t>(m) * k, 0.0), b(m, 0.0), c(k, 0.0);
  auto A = [&](int r, int col) -> double& { return a[static_cast<std::size_t>(r) * k + col]; };
  for (const Triplet& t : p.matrices.a_h) A(t.row, t.col) = t.value;
  for (const Triplet& t : p.matrices.a_v) A(n + t.row, n + t.col) = t.value;
  for (int i = 0; i < n; ++i) {
    A(i, 2 * n + i) = -1.0;
    A(i, 4 * n + i) = 1.0;
    A(n + i, 3 * n + i) = -1.0;
    A(n + i, 5 * n + i) = 1.0;
    A(2 * n + i, i) = 1.0;
    A(2 * n + i, n + i) = 1.0;
    b[2 * n + i] = 1.0;
    c[2 * n + i] = 1.0;
    c[3 * n + i] = 1.0;
  }
  DenseSimplex simplex(m, k, std::move(a), std::move(b), std::move(c));
  const DenseLpResult r = simplex.solve();
  s.pivots = r.pivots;
  if (r.status != DenseLpResult::Status::optimal) {
    s.status = r.status == DenseLpResult::Status::infeasible ? LpStatus::infeasible : LpStatus::numeric_failure;
    return s;
  }
  s.x_h.assign(r.x.begin(), r.x.begin() + n);
  s.x_v.assign(r.x.begin() + n, r.x.begin() + 2 * n);
  detail::finish_solution(p, s, r.objective);
  return s;
}

struct Partition {
  OrientationAssignment assignment;
  std::vector<Rank> ranks;
  int objective = 0;
  LpSolution solution;
};

// Minimum-rank partition read off the LP optimum.
inline Partition partition_min_ranks(const IOP& iop) {
  Partition out;
  out.solution = solve_lp(build_lp(iop));
  if (out.solution.status != LpStatus::optimal)
    throw CertificateError("LP solution failed its integrality certificate (status " +
                           to_string(out.solution.status) + ")");
  out.objective = static_cast<int>(std::lround(out.solution.objective));
  out.assignment.resize(iop.size());
  for (int i = 0; i < iop.size(); ++i)
    out.assignment[i] = out.solution.x_h[i] >= 0.5 ? Orientation::H : Orientation::V;
  out.ranks = extract_ranks(iop, out.assignment);
  if (static_cast<int>(out.ranks.size()) != out.objective)
    throw CertificateError("rank count " + std::to_string(out.ranks.size()) + " disagrees with LP objective " +
                           std::to_string(out.objective));
  return out;
}

}  // namespace rankcover
