#include <gtest/gtest.h>

#include <cstdlib>

#include "rankcover/bench.hpp"

namespace rankcover {
namespace {

TEST(Bench, TrivialMapBothMethodsFindOneRank) {
  BenchConfig cfg;
  cfg.instances = {{"strip", parse_ascii_map("........\n")}};
  const BenchReport r = run_bench(cfg);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].lp_ranks, 1);
  EXPECT_EQ(r.rows[0].baseline_ranks, 1);
  EXPECT_TRUE(r.rows[0].baseline_reached_optimum);
  EXPECT_EQ(r.rows[0].n_turns, 0);
}

TEST(Bench, GeneratedSuiteHonoursInvariant) {
  BenchConfig cfg;
  cfg.instances = generated_suite(10, 30, 30, 0.2, 0);
  cfg.optimum_cap_s = 0.3;
  cfg.plan = false;
  const BenchReport r = run_bench(cfg);
  ASSERT_EQ(r.rows.size(), 10u);
  EXPECT_EQ(r.failures, 0);
  EXPECT_TRUE(r.invariant_holds());
  for (const BenchRow& row : r.rows) {
    EXPECT_LE(row.lp_ranks, row.baseline_ranks) << row.id;
    EXPECT_EQ(row.oracle_ranks, row.lp_ranks) << row.id;
  }
  EXPECT_LE(r.lp_ranks.mean, r.baseline_ranks.mean);
  EXPECT_LE(r.lp_ranks.min, r.lp_ranks.mean);
  EXPECT_LE(r.lp_ranks.mean, r.lp_ranks.max);
}

TEST(Bench, SmallInstancesMatchExhaustiveOracle) {
  BenchConfig cfg;
  cfg.instances = generated_suite(12, 4, 4, 0.15, 40);
  cfg.optimum_cap_s = 0.2;
  cfg.plan = false;
  const BenchReport r = run_bench(cfg);
  for (const BenchRow& row : r.rows) {
    ASSERT_TRUE(row.ok()) << row.error;
    EXPECT_EQ(row.oracle_method, "exhaustive");
    EXPECT_EQ(row.oracle_ranks, row.lp_ranks);
  }
}

TEST(Bench, FailuresAreRecorded) {
  BenchConfig cfg;
  cfg.instances = {{"split", parse_ascii_map("..#..\n")}, {"ok", parse_ascii_map("...\n")}};
  const BenchReport r = run_bench(cfg);
  EXPECT_FALSE(r.rows[0].ok());
  EXPECT_TRUE(r.rows[1].ok());
  EXPECT_EQ(r.failures, 1);
  EXPECT_TRUE(bench_to_json(r).at("rows").at(0).contains("error"));
}

TEST(Bench, ThreadCapFromEnvironment) {
  ::setenv("RANKCOVER_THREADS", "2", 1);
  EXPECT_EQ(bench_threads(8), 2u);
  EXPECT_EQ(bench_threads(1), 1u);
  ::setenv("RANKCOVER_THREADS", "junk", 1);
  EXPECT_EQ(bench_threads(3), 3u);
  ::unsetenv("RANKCOVER_THREADS");
}

TEST(Bench, RowsDoNotDependOnThreadCount) {
  BenchConfig cfg;
  cfg.instances = generated_suite(4, 10, 10, 0.2, 7);
  cfg.plan = true;
  cfg.gtsp_budget_s = 5.0;
  cfg.threads = 1;
  const BenchReport a = run_bench(cfg);
  cfg.threads = 3;
  const BenchReport b = run_bench(cfg);
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    EXPECT_EQ(a.rows[k].id, b.rows[k].id);
    EXPECT_EQ(a.rows[k].lp_ranks, b.rows[k].lp_ranks);
    EXPECT_EQ(a.rows[k].tour_time, b.rows[k].tour_time);
  }
}

}  // namespace
}  // namespace rankcover
