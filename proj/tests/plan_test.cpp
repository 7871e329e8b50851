#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rankcover/lp_solve.hpp"
#include "rankcover/plan.hpp"
#include "test_util.hpp"

namespace rankcover {
namespace {

const MotionModel kDefaults{};

TEST(AssemblePlan, SingleRank) {
  const IOP iop = testing::rectangle(1, 5, 20.0);
  const Partition p = partition_min_ranks(iop);
  const CoveragePlan plan = plan_coverage(iop, p.ranks, kDefaults);
  EXPECT_EQ(plan.metrics.n_ranks, 1);
  EXPECT_EQ(plan.metrics.n_transitions, 0);
  EXPECT_EQ(plan.metrics.n_turns, 0);
  EXPECT_FALSE(plan.return_leg.has_value());
  EXPECT_NEAR(plan.metrics.coverage_time, segment_time(4 * 20.0, kDefaults), 1e-12);
  EXPECT_NEAR(plan.metrics.tour_time, plan.metrics.coverage_time, 1e-12);
}

TEST(AssemblePlan, EmptyPartition) {
  const CoveragePlan plan = plan_coverage(IOP(), {}, kDefaults);
  EXPECT_EQ(plan.metrics.n_ranks, 0);
  EXPECT_EQ(plan.metrics.n_turns, 0);
  EXPECT_EQ(plan.metrics.tour_time, 0.0);
  EXPECT_TRUE(plan.tour.empty());
}

// 2x2 block, l = 100: two parallel ranks joined by a U-turn (90 + 100 cm + 90).
TEST(AssemblePlan, UTurnBetweenStackedRanks) {
  const IOP iop = testing::rectangle(2, 2, 100.0);
  const Partition p = partition_min_ranks(iop);
  ASSERT_EQ(p.ranks.size(), 2u);
  const double rank_time = segment_time(100.0, kDefaults);
  const double uturn = 2 * turn_time(90.0, kDefaults) + segment_time(100.0, kDefaults);

  PlanOptions open;
  open.gtsp.closed = false;
  const CoveragePlan plan = plan_coverage(iop, p.ranks, kDefaults, open);
  EXPECT_EQ(plan.metrics.n_transitions, 1);
  EXPECT_EQ(plan.metrics.n_turns, 2);
  EXPECT_NEAR(plan.transitions[0].travel_time, uturn, 1e-12);
  EXPECT_NEAR(plan.metrics.coverage_time, 2 * rank_time, 1e-12);
  EXPECT_NEAR(plan.metrics.tour_time, 2 * rank_time + uturn, 1e-12);

  const CoveragePlan closed = plan_coverage(iop, p.ranks, kDefaults);
  EXPECT_EQ(closed.metrics.n_transitions, 1);
  ASSERT_TRUE(closed.return_leg.has_value());
  EXPECT_EQ(closed.metrics.n_turns, 4);
  EXPECT_NEAR(closed.metrics.tour_time, 2 * rank_time + 2 * uturn, 1e-12);
}

TEST(AssemblePlan, RejectsIncompleteTour) {
  const IOP iop = testing::rectangle(2, 2, 100.0);
  const Partition p = partition_min_ranks(iop);
  GtspTour t;
  t.vertices = {0};
  EXPECT_THROW(assemble_plan(iop, p.ranks, t, kDefaults), ContractError);
  t.vertices = {0, 1};
  EXPECT_THROW(assemble_plan(iop, p.ranks, t, kDefaults), ContractError);
}

TEST(AssemblePlan, CompleteAndConsistentOnRandomMaps) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 8; ++trial) {
    IOP iop = testing::random_iop(rng, 9, 8, 0.85);
    // keep the largest component so every rank is reachable
    int count = 0;
    const auto comp = connected_components(iop, &count);
    std::vector<int> size(count, 0);
    for (int c : comp) ++size[c];
    const int keep = static_cast<int>(std::max_element(size.begin(), size.end()) - size.begin());
    std::vector<Cell> cells;
    for (int i = 0; i < iop.size(); ++i)
      if (comp[i] == keep) cells.push_back(iop.cell(i));
    iop = IOP(iop.cols(), iop.rows(), 50.0, cells);

    const Partition p = partition_min_ranks(iop);
    PlanOptions opt;
    opt.gtsp.seed = trial;
    opt.gtsp.closed = trial % 2 == 0;
    const GtspInstance inst = build_gtsp(p.ranks, iop, kDefaults);
    const GtspTour tour = solve_gtsp(inst, opt.gtsp);
    const CoveragePlan plan = assemble_plan(iop, p.ranks, tour, kDefaults);

    std::vector<int> covered(iop.size(), 0);
    for (const PlannedTraversal& t : plan.tour)
      for (int c : plan.ranks[t.rank].cells) ++covered[c];
    for (int c : covered) ASSERT_EQ(c, 1);

    // transitions reproduce the GTSP objective
    EXPECT_NEAR(plan.metrics.transition_time, tour.cost, 1e-9);
    double coverage = 0.0;
    for (const Rank& r : p.ranks) coverage += segment_time(r.length(), kDefaults);
    EXPECT_NEAR(plan.metrics.tour_time, coverage + tour.cost, 1e-9);
    EXPECT_EQ(plan.metrics.n_transitions, static_cast<int>(p.ranks.size()) - 1);
  }
}

}  // namespace
}  // namespace rankcover
