#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "rankcover/gtsp.hpp"
#include "rankcover/lp_solve.hpp"
#include "test_util.hpp"

namespace rankcover {
namespace {

using testing::iop_from_ascii;
const MotionModel kDefaults{};

GtspInstance random_instance(std::mt19937_64& rng, int sets, bool symmetric) {
  GtspInstance inst(sets);
  std::uniform_real_distribution<double> pos(0.0, 100.0);
  // endpoints in the plane; costs are distances plus a direction penalty
  std::vector<Point> a(sets), b(sets);
  for (int s = 0; s < sets; ++s) {
    a[s] = {pos(rng), pos(rng)};
    b[s] = {pos(rng), pos(rng)};
  }
  std::uniform_real_distribution<double> noise(0.0, 20.0);
  for (int u = 0; u < 2 * sets; ++u) {
    for (int v = 0; v < 2 * sets; ++v) {
      if (set_of(u) == set_of(v)) continue;
      const Point exit = is_reversed(u) ? a[set_of(u)] : b[set_of(u)];
      const Point entry = is_reversed(v) ? b[set_of(v)] : a[set_of(v)];
      double c = std::hypot(exit.x - entry.x, exit.y - entry.y);
      if (!symmetric) c += noise(rng);
      inst.set_cost(u, v, c);
    }
  }
  return inst;
}

// Independent oracle: every set order with the first set fixed, every direction.
double enumerate_best(const GtspInstance& inst, bool closed) {
  const int s = inst.sets();
  std::vector<int> order(s);
  std::iota(order.begin(), order.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    if (closed && order[0] != 0) continue;
    for (int dirs = 0; dirs < (1 << s); ++dirs) {
      std::vector<int> tour;
      for (int k = 0; k < s; ++k) tour.push_back(vertex_of(order[k], (dirs >> k) & 1));
      best = std::min(best, tour_cost(inst, tour, closed));
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

bool valid_tour(const GtspTour& t, int sets) {
  if (static_cast<int>(t.vertices.size()) != sets) return false;
  std::vector<int> seen(sets, 0);
  for (int v : t.vertices) ++seen[set_of(v)];
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

TEST(SolveGtsp, Empty) { EXPECT_TRUE(solve_gtsp(GtspInstance()).vertices.empty()); }

TEST(SolveGtsp, SingleSet) {
  const GtspTour t = solve_gtsp(GtspInstance(1));
  EXPECT_EQ(t.vertices, std::vector<int>{0});
  EXPECT_EQ(t.cost, 0.0);
}

TEST(SolveGtsp, ExactMatchesEnumeration) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int sets = 2 + trial % 5;
    const GtspInstance inst = random_instance(rng, sets, trial % 2 == 0);
    for (bool closed : {true, false}) {
      const GtspTour t = solve_gtsp_exact(inst, closed);
      ASSERT_TRUE(valid_tour(t, sets));
      EXPECT_NEAR(t.cost, enumerate_best(inst, closed), 1e-9);
      if (closed) EXPECT_EQ(set_of(t.vertices.front()), 0);
    }
  }
}

TEST(SolveGtsp, ThreeSetsHeuristicIsExact) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const GtspInstance inst = random_instance(rng, 3, true);
    GtspOptions opt;
    opt.seed = trial;
    EXPECT_NEAR(solve_gtsp(inst, opt).cost, solve_gtsp_exact(inst).cost, 1e-9);
  }
}

TEST(SolveGtsp, HeuristicMatchesExactUpToSixSets) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int sets = 2 + trial % 5;
    const GtspInstance inst = random_instance(rng, sets, trial % 3 != 0);
    for (bool closed : {true, false}) {
      GtspOptions opt;
      opt.seed = trial;
      opt.closed = closed;
      const GtspTour h = solve_gtsp(inst, opt);
      ASSERT_TRUE(valid_tour(h, sets));
      EXPECT_NEAR(h.cost, solve_gtsp_exact(inst, closed).cost, 1e-9) << "trial " << trial;
    }
  }
}

TEST(SolveGtsp, EightSetsWithinFivePercent) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const GtspInstance inst = random_instance(rng, 8, trial % 2 == 0);
    GtspOptions opt;
    opt.seed = trial;
    const double h = solve_gtsp(inst, opt).cost;
    const double e = solve_gtsp_exact(inst).cost;
    EXPECT_LE(h, e * 1.05 + 1e-9);
  }
}

TEST(SolveGtsp, DeterministicPerSeed) {
  std::mt19937_64 rng(2);
  const GtspInstance inst = random_instance(rng, 40, false);
  GtspOptions opt;
  opt.seed = 9;
  opt.time_budget_s = 30.0;
  opt.max_rounds = 50;
  const GtspTour a = solve_gtsp(inst, opt);
  const GtspTour b = solve_gtsp(inst, opt);
  EXPECT_EQ(a.vertices, b.vertices);
  EXPECT_EQ(set_of(a.vertices.front()), 0);
}

TEST(SolveGtsp, ReportedCostMatchesLegs) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const GtspInstance inst = random_instance(rng, 5 + trial, false);
    GtspOptions opt;
    opt.seed = trial;
    opt.closed = trial % 2 == 0;
    const GtspTour t = solve_gtsp(inst, opt);
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < t.vertices.size(); ++k) sum += inst.cost(t.vertices[k], t.vertices[k + 1]);
    if (opt.closed) sum += inst.cost(t.vertices.back(), t.vertices.front());
    EXPECT_NEAR(t.cost, sum, 1e-9);
  }
}

TEST(SolveGtsp, ReversedTourHasSameCostWhenSymmetric) {
  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 20; ++trial) {
    const GtspInstance inst = random_instance(rng, 6, true);
    ASSERT_TRUE(inst.symmetric(1e-9));
    const GtspTour t = solve_gtsp_exact(inst);
    std::vector<int> rev(t.vertices.rbegin(), t.vertices.rend());
    for (int& v : rev) v = flipped(v);
    EXPECT_NEAR(tour_cost(inst, rev, true), t.cost, 1e-9);
  }
}

TEST(BuildGtsp, SingleRank) {
  const IOP iop = testing::rectangle(1, 4, 50.0);
  const Partition p = partition_min_ranks(iop);
  const GtspInstance inst = build_gtsp(p.ranks, iop, kDefaults);
  EXPECT_EQ(inst.sets(), 1);
  EXPECT_EQ(inst.vertices(), 2);
}

TEST(BuildGtsp, TwoParallelRanks) {
  const IOP iop = testing::rectangle(2, 3, 100.0);
  const Partition p = partition_min_ranks(iop);
  ASSERT_EQ(p.ranks.size(), 2u);
  const GtspInstance inst = build_gtsp(p.ranks, iop, kDefaults);
  EXPECT_EQ(inst.vertices(), 4);
  int finite = 0;
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v)
      if (set_of(u) != set_of(v) && std::isfinite(inst.cost(u, v))) ++finite;
  EXPECT_EQ(finite, 8);
  // leaving rank 0 eastward at its east end and entering rank 1 westward: a
  // U-turn of two 90 degree turns around a 100 cm step
  EXPECT_NEAR(inst.cost(vertex_of(0, false), vertex_of(1, true)), 6.0 + 2.0 * std::sqrt(2.0), 1e-12);
}

// Collinear ranks split by an obstacle: the transition detours through the
// row above (up 100, across 200, down 100, four right-angle turns).
TEST(BuildGtsp, DetourAroundObstacle) {
  const IOP iop = iop_from_ascii(".....\n..#..\n", 100.0);
  auto rank_of = [&](std::vector<int> cells) {
    Rank r;
    r.orientation = Orientation::H;
    r.cells = cells;
    r.first = iop.center(cells.front());
    r.last = iop.center(cells.back());
    return r;
  };
  const std::vector<Rank> ranks{rank_of({iop.id_at(0, 1), iop.id_at(1, 1)}),
                                rank_of({iop.id_at(3, 1), iop.id_at(4, 1)})};
  const GtspInstance inst = build_gtsp(ranks, iop, kDefaults);
  const double expected = 2 * segment_time(100, kDefaults) + segment_time(200, kDefaults) + 4 * turn_time(90, kDefaults);
  EXPECT_NEAR(inst.cost(vertex_of(0, false), vertex_of(1, false)), expected, 1e-12);
  EXPECT_GT(inst.cost(vertex_of(0, false), vertex_of(1, false)), segment_time(200, kDefaults));
}

TEST(BuildGtsp, CostsMatchPairwiseAStar) {
  std::mt19937_64 rng(42);
  const IOP iop = iop_from_ascii(
      "..........\n"
      "..##......\n"
      "..##...#..\n"
      ".......#..\n"
      "####.###..\n"
      "..........\n",
      25.0);
  const Partition p = partition_min_ranks(iop);
  const GtspInstance inst = build_gtsp(p.ranks, iop, kDefaults, 2);
  std::vector<Point> terminals;
  for (const Rank& r : p.ranks) {
    terminals.push_back(r.first);
    terminals.push_back(r.last);
  }
  const VisibilityGraph g = build_visibility_graph(iop, terminals);
  std::uniform_int_distribution<int> pick(0, inst.vertices() - 1);
  for (int k = 0; k < 60; ++k) {
    const int u = pick(rng), v = pick(rng);
    if (set_of(u) == set_of(v)) continue;
    const RankTraversal a = traversal(p.ranks[set_of(u)], is_reversed(u));
    const RankTraversal b = traversal(p.ranks[set_of(v)], is_reversed(v));
    const TransitionPath path = shortest_transition(g, a.exit, b.entry, kDefaults, a.heading, b.heading);
    EXPECT_NEAR(inst.cost(u, v), path.travel_time, 1e-9);
  }
}

TEST(BuildGtsp, DisconnectedRanksNamed) {
  const IOP iop = iop_from_ascii("..#..\n");
  const Partition p = partition_min_ranks(iop);
  try {
    build_gtsp(p.ranks, iop, kDefaults);
    FAIL() << "expected NoPathError";
  } catch (const NoPathError& e) {
    EXPECT_NE(std::string(e.what()).find("rank 0"), std::string::npos);
  }
}

TEST(WriteGtsplib, Layout) {
  GtspInstance inst(2);
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v)
      if (set_of(u) != set_of(v)) inst.set_cost(u, v, 1.5);
  std::ostringstream out;
  write_gtsplib(out, inst);
  const std::string s = out.str();
  EXPECT_NE(s.find("DIMENSION: 4"), std::string::npos);
  EXPECT_NE(s.find("GTSP_SETS: 2"), std::string::npos);
  EXPECT_NE(s.find("0 0 1500 1500"), std::string::npos);
  EXPECT_NE(s.find("2 3 4 -1"), std::string::npos);
}

}  // namespace
}  // namespace rankcover
