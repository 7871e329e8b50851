// Acceptance checks, one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "rankcover/baseline.hpp"
#include "rankcover/gtsp.hpp"
#include "rankcover/lp_solve.hpp"
#include "rankcover/mapgen.hpp"
#include "rankcover/motion.hpp"
#include "rankcover/oracle.hpp"
#include "rankcover/tu.hpp"
#include "test_util.hpp"

using namespace rankcover;
using rankcover::testing::iop_from_cells;
using rankcover::testing::rectangle;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

IOP generated_iop(int rows, int cols, double density, std::uint64_t seed, double cell = 1.0) {
  GridMap m = generate_map({rows, cols, density, seed});
  m.resolution = cell;
  return build_iop(m, 1);
}

bool near_integer(double v, double tol) { return std::abs(v - std::round(v)) <= tol; }

// 1. LP objective equals the exhaustive minimum on small random IOPs.
Outcome lp_vs_exhaustive() {
  std::mt19937_64 rng(1001);
  constexpr int kInstances = 300;
  int agree = 0;
  for (int k = 0; k < kInstances; ++k) {
    const IOP iop = rankcover::testing::random_small_iop(rng, 18);
    const LpSolution s = solve_lp(build_lp(iop));
    const OracleResult o = brute_force_min_ranks(iop);
    agree += s.status == LpStatus::optimal && std::abs(s.objective - o.min_ranks) <= 1e-6;
  }
  return {agree == kInstances, std::to_string(agree) + "/" + std::to_string(kInstances) + " instances with n <= 18 agree"};
}

// 2. Every LP solution is integral, x_h within 1e-6 of {0,1}.
Outcome lp_integrality() {
  std::mt19937_64 rng(2002);
  constexpr int kInstances = 500;
  int violations = 0, largest = 0;
  for (int k = 0; k < kInstances; ++k) {
    IOP iop;
    if (k % 2 == 0) {
      const int cols = std::uniform_int_distribution<int>(1, 50)(rng);
      const int rows = std::uniform_int_distribution<int>(1, 40)(rng);
      iop = rankcover::testing::random_iop(rng, cols, rows, std::uniform_real_distribution<double>(0.5, 1.0)(rng));
    } else {
      const int side = std::uniform_int_distribution<int>(4, 44)(rng);
      iop = generated_iop(side, side, std::uniform_real_distribution<double>(0.0, 0.4)(rng), rng());
    }
    largest = std::max(largest, iop.size());
    const LpSolution s = solve_lp(build_lp(iop));
    bool ok = s.status == LpStatus::optimal && near_integer(s.objective, 1e-6);
    for (double x : s.x_h) ok = ok && (std::abs(x) <= 1e-6 || std::abs(x - 1.0) <= 1e-6);
    violations += !ok;
  }
  return {violations == 0 && largest <= 2000, std::to_string(kInstances) + " instances up to " +
                                                  std::to_string(largest) + " cells, " +
                                                  std::to_string(violations) + " violations"};
}

// 3. Sampled square submatrices of the standard-form matrix have determinant in {-1, 0, 1}.
Outcome tu_certificate() {
  std::mt19937_64 rng(3003);
  int instances = 0, violations = 0, nonzero = 0;
  long samples = 0;
  int max_order = 0;
  while (instances < 10) {
    const IOP iop = rankcover::testing::random_iop(rng, 11, 10, 0.75);
    if (iop.size() < 30 || iop.size() > 100) continue;
    const TuReport r = verify_tu(iop, 1000, 6, rng());
    violations += r.violations;
    samples += static_cast<long>(r.samples.size());
    for (const TuSample& s : r.samples) {
      nonzero += s.determinant != 0;
      max_order = std::max(max_order, static_cast<int>(s.rows.size()));
    }
    ++instances;
  }
  return {violations == 0 && samples == 10000 && max_order == 6,
          std::to_string(samples) + " submatrices of order 1-" + std::to_string(max_order) + " on 10 IOPs, " +
              std::to_string(nonzero) + " nonsingular, " + std::to_string(violations) + " violations"};
}

// 4. Min-cut oracle and LP agree on large IOPs, each instance under 5 s.
Outcome mincut_vs_lp() {
  int disagreements = 0, largest = 0;
  double slowest = 0.0;
  constexpr int kInstances = 30;
  for (int k = 0; k < kInstances; ++k) {
    const int side = 12 + 2 * k;  // 12 .. 70
    const IOP iop = k % 3 == 2 ? generated_iop(side, side, 0.05, 400 + k)
                               : generated_iop(side, side, 0.2 + 0.05 * (k % 3), 400 + k);
    largest = std::max(largest, iop.size());
    const auto t0 = std::chrono::steady_clock::now();
    const LpSolution s = solve_lp(build_lp(iop));
    const OracleResult o = mincut_min_ranks(iop);
    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    slowest = std::max(slowest, t);
    disagreements += s.status != LpStatus::optimal || std::abs(s.objective - o.min_ranks) > 1e-6;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d instances up to %d cells, %d disagreements, slowest %.3f s", kInstances,
                largest, disagreements, slowest);
  return {disagreements == 0 && slowest < 5.0 && largest <= 5000, buf};
}

// 5. Rectangles give min(m, n); plus pentomino 3; L-tromino 2.
Outcome analytic_instances() {
  std::string bad;
  int checked_exhaustive = 0;
  for (int m = 1; m <= 8; ++m) {
    for (int n = 1; n <= 8; ++n) {
      const IOP iop = rectangle(m, n);
      const int expected = std::min(m, n);
      if (partition_min_ranks(iop).objective != expected) bad += " lp" + std::to_string(m) + "x" + std::to_string(n);
      if (expected <= 4) {
        const int exhaustive = iop.size() <= kBruteForceMaxCells ? brute_force_min_ranks(iop).min_ranks
                                                                 : rowwise_min_ranks(iop).min_ranks;
        if (exhaustive != expected) bad += " ex" + std::to_string(m) + "x" + std::to_string(n);
        ++checked_exhaustive;
      }
    }
  }
  const IOP plus = iop_from_cells({{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}});
  const IOP tromino = iop_from_cells({{0, 0}, {0, 1}, {1, 1}});
  const int p = partition_min_ranks(plus).objective, pb = brute_force_min_ranks(plus).min_ranks;
  const int t = partition_min_ranks(tromino).objective, tb = brute_force_min_ranks(tromino).min_ranks;
  if (p != 3 || pb != 3) bad += " plus";
  if (t != 2 || tb != 2) bad += " tromino";
  return {bad.empty(), "64 rectangles (" + std::to_string(checked_exhaustive) +
                           " also exhaustive), plus pentomino " + std::to_string(p) + ", L-tromino " +
                           std::to_string(t) + (bad.empty() ? "" : ", mismatches:" + bad)};
}

// 6. count_ranks equals the number of extracted ranks.
Outcome endpoint_run_duality() {
  std::mt19937_64 rng(6006);
  constexpr int kPairs = 1000;
  int agree = 0;
  for (int k = 0; k < kPairs; ++k) {
    const int cols = std::uniform_int_distribution<int>(1, 15)(rng);
    const int rows = std::uniform_int_distribution<int>(1, 15)(rng);
    const IOP iop = rankcover::testing::random_iop(rng, cols, rows, std::uniform_real_distribution<double>(0.3, 1.0)(rng));
    const OrientationAssignment a = rankcover::testing::random_assignment(rng, iop.size());
    agree += count_ranks(iop, a) == static_cast<int>(extract_ranks(iop, a).size());
  }
  return {agree == kPairs, std::to_string(agree) + "/" + std::to_string(kPairs) + " pairs agree"};
}

// 7. Motion model closed forms at the default parameters.
Outcome motion_closed_forms() {
  const MotionModel m;
  const double a = segment_time(200.0, m), b = segment_time(50.0, m), c = turn_time(90.0, m);
  const bool ok = std::abs(a - 4.0) <= 1e-12 && std::abs(b - 2.0) <= 1e-12 && std::abs(c - 3.0) <= 1e-12;
  char buf[160];
  std::snprintf(buf, sizeof buf, "segment_time(200)=%.15g, segment_time(50)=%.15g, turn_time(90)=%.15g", a, b, c);
  return {ok, buf};
}

GtspInstance geometric_instance(std::mt19937_64& rng, int sets, bool asymmetric) {
  GtspInstance inst(sets);
  std::uniform_real_distribution<double> pos(0.0, 1000.0), noise(0.0, 50.0);
  std::vector<Point> a(sets), b(sets);
  for (int s = 0; s < sets; ++s) {
    a[s] = {pos(rng), pos(rng)};
    b[s] = {pos(rng), pos(rng)};
  }
  for (int u = 0; u < 2 * sets; ++u)
    for (int v = 0; v < 2 * sets; ++v) {
      if (set_of(u) == set_of(v)) continue;
      const Point p = is_reversed(u) ? a[set_of(u)] : b[set_of(u)];
      const Point q = is_reversed(v) ? b[set_of(v)] : a[set_of(v)];
      inst.set_cost(u, v, std::hypot(p.x - q.x, p.y - q.y) + (asymmetric ? noise(rng) : 0.0));
    }
  return inst;
}

// GTSP instances from real partitions with a set count in [lo, hi].
std::vector<GtspInstance> map_instances(int count, int lo, int hi, std::uint64_t seed) {
  std::vector<GtspInstance> out;
  std::mt19937_64 rng(seed);
  while (static_cast<int>(out.size()) < count) {
    const int side = std::uniform_int_distribution<int>(3, 9)(rng);
    const IOP iop = generated_iop(side, side, std::uniform_real_distribution<double>(0.0, 0.35)(rng), rng(), 50.0);
    const Partition p = partition_min_ranks(iop);
    if (static_cast<int>(p.ranks.size()) < lo || static_cast<int>(p.ranks.size()) > hi) continue;
    out.push_back(build_gtsp(p.ranks, iop, MotionModel{}, 1));
  }
  return out;
}

// 8. GTSP heuristic quality against the exact solver.
Outcome gtsp_quality() {
  std::mt19937_64 rng(8008);
  std::vector<GtspInstance> small = map_instances(30, 2, 6, 81);
  for (int k = 0; k < 30; ++k) small.push_back(geometric_instance(rng, 2 + k % 5, k % 2 == 1));
  std::vector<GtspInstance> medium = map_instances(12, 7, 10, 82);
  for (int k = 0; k < 13; ++k) medium.push_back(geometric_instance(rng, 7 + k % 4, k % 2 == 1));

  GtspOptions opt;
  opt.time_budget_s = 1.0;
  int equal = 0;
  for (std::size_t k = 0; k < small.size(); ++k) {
    opt.seed = k;
    equal += std::abs(solve_gtsp(small[k], opt).cost - solve_gtsp_exact(small[k]).cost) <= 1e-9;
  }
  int within = 0;
  double worst = 0.0;
  for (std::size_t k = 0; k < medium.size(); ++k) {
    opt.seed = k;
    const double h = solve_gtsp(medium[k], opt).cost;
    const double e = solve_gtsp_exact(medium[k]).cost;
    const double gap = e > 0.0 ? (h - e) / e : 0.0;
    worst = std::max(worst, gap);
    within += gap <= 0.05 + 1e-12;
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "%d/%zu optimal with <= 6 sets; %d/%zu within 5%% with 7-10 sets (worst gap %.2f%%)",
                equal, small.size(), within, medium.size(), 100.0 * worst);
  return {equal == static_cast<int>(small.size()) && small.size() >= 50 && within == static_cast<int>(medium.size()) &&
              medium.size() >= 20,
          buf};
}

// 9. Partition of a generated ~5000-cell map in under 5 s.
Outcome desk_scale() {
  const IOP iop = generated_iop(80, 80, 0.2, 9);
  const auto t0 = std::chrono::steady_clock::now();
  const Partition p = partition_min_ranks(iop);
  const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d cells, %d ranks in %.3f s", iop.size(), p.objective, t);
  return {t < 5.0 && iop.size() >= 4500 && iop.size() <= 5500, buf};
}

// 10. The local-search baseline never beats the LP and loses on some multi-room map.
Outcome benchmark_invariant() {
  constexpr int kInstances = 40;
  int never_better = 0, strict = 0, strict_multi_room = 0, multi_room = 0;
  for (int k = 0; k < kInstances; ++k) {
    int rooms = 0;
    GridMap m = generate_map({30, 30, 0.2, 1000u + k}, &rooms);
    const IOP iop = build_iop(m, 1);
    const int lp = partition_min_ranks(iop).objective;
    BaselineOptions opt;
    opt.seed = k;
    opt.max_restarts = 30;
    opt.time_budget_s = 2.0;
    const int base = baseline_local_search(iop, opt).ranks;
    never_better += base >= lp;
    strict += base > lp;
    multi_room += rooms >= 2;
    strict_multi_room += base > lp && rooms >= 2;
  }
  return {never_better == kInstances && strict_multi_room >= 1,
          std::to_string(kInstances) + " maps (" + std::to_string(multi_room) + " multi-room): baseline >= LP on " +
              std::to_string(never_better) + ", strictly worse on " + std::to_string(strict) + " (" +
              std::to_string(strict_multi_room) + " multi-room)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"LP optimality vs exhaustive oracle", lp_vs_exhaustive},
      {"LP integrality", lp_integrality},
      {"TU certificate", tu_certificate},
      {"cross-oracle agreement", mincut_vs_lp},
      {"analytic instances", analytic_instances},
      {"endpoint/run duality", endpoint_run_duality},
      {"motion model closed forms", motion_closed_forms},
      {"GTSP quality", gtsp_quality},
      {"desk-scale performance", desk_scale},
      {"benchmark invariant", benchmark_invariant},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("%s %2zu %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str(), t);
    std::fflush(stdout);
  }
  return failed;
}
