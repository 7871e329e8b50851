#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "rankcover/baseline.hpp"
#include "rankcover/grid_map.hpp"
#include "rankcover/io.hpp"
#include "rankcover/lp_solve.hpp"
#include "rankcover/mapgen.hpp"
#include "rankcover/oracle.hpp"
#include "rankcover/plan.hpp"

namespace rankcover {

struct BenchInstance {
  std::string id;
  GridMap map;
};

struct BenchConfig {
  std::vector<BenchInstance> instances;
  int tool_width_px = 1;
  MotionModel motion;
  std::uint64_t seed = 0;
  double gtsp_budget_s = 0.5;
  double optimum_cap_s = 5.0;  // time-to-optimal protocol gives up here
  bool plan = true;
  unsigned threads = 0;  // 0: hardware concurrency, capped by RANKCOVER_THREADS
};

struct BenchRow {
  std::string id;
  int n_cells = 0;
  int lp_ranks = 0;
  int oracle_ranks = -1;
  std::string oracle_method;
  double lp_time_s = 0.0;
  // equal-time protocol: the baseline gets the LP's wall-clock time
  int baseline_ranks = 0;
  double baseline_time_s = 0.0;
  // time-to-optimal protocol: the baseline runs until it matches the LP or hits the cap
  bool baseline_reached_optimum = false;
  double baseline_time_to_optimum_s = 0.0;
  int baseline_capped_ranks = 0;
  double tour_time = 0.0;
  int n_turns = 0;
  std::string error;

  bool ok() const { return error.empty(); }
};

struct Range {
  double mean = 0.0, min = 0.0, max = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  Range lp_ranks, baseline_ranks, lp_time_s, baseline_time_s, tour_time, n_turns;
  int failures = 0;
  int baseline_optimal = 0;  // rows where the capped baseline matched the LP
  Range baseline_time_to_optimum_s;  // over those rows

  bool invariant_holds() const {
    return std::all_of(rows.begin(), rows.end(), [](const BenchRow& r) {
      return !r.ok() || (r.lp_ranks <= r.baseline_ranks && r.lp_ranks <= r.baseline_capped_ranks &&
                         (r.oracle_ranks < 0 || r.oracle_ranks == r.lp_ranks));
    });
  }
};

inline unsigned bench_threads(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RANKCOVER_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

inline std::vector<BenchInstance> generated_suite(int count, int rows, int cols, double density, std::uint64_t seed,
                                                  double resolution = 50.0) {
  std::vector<BenchInstance> suite;
  for (int k = 0; k < count; ++k) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(k);
    GridMap map = generate_map({rows, cols, density, s});
    map.resolution = resolution;
    suite.push_back(
        {"gen-" + std::to_string(rows) + "x" + std::to_string(cols) + "-s" + std::to_string(s), std::move(map)});
  }
  return suite;
}

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline BenchRow bench_one(const BenchInstance& inst, const BenchConfig& cfg, std::uint64_t seed) {
  BenchRow row;
  row.id = inst.id;
  try {
    const IOP iop = build_iop(inst.map, cfg.tool_width_px);
    row.n_cells = iop.size();

    const auto t0 = std::chrono::steady_clock::now();
    const Partition p = partition_min_ranks(iop);
    row.lp_time_s = seconds_since(t0);
    row.lp_ranks = p.objective;

    const OracleResult oracle = iop.size() <= 18 ? brute_force_min_ranks(iop) : mincut_min_ranks(iop);
    row.oracle_ranks = oracle.min_ranks;
    row.oracle_method = oracle.method == OracleMethod::exhaustive ? "exhaustive" : "mincut";

    BaselineOptions equal;
    equal.seed = seed;
    equal.time_budget_s = row.lp_time_s;
    equal.max_restarts = std::numeric_limits<int>::max();
    const BaselineResult b = baseline_local_search(iop, equal);
    row.baseline_ranks = b.ranks;
    row.baseline_time_s = b.elapsed_s;

    BaselineOptions capped;
    capped.seed = seed;
    capped.time_budget_s = cfg.optimum_cap_s;
    capped.max_restarts = std::numeric_limits<int>::max();
    capped.target = p.objective;
    const BaselineResult c = baseline_local_search(iop, capped);
    row.baseline_capped_ranks = c.ranks;
    row.baseline_reached_optimum = c.ranks <= p.objective;
    row.baseline_time_to_optimum_s = c.time_to_best_s;

    if (cfg.plan && !p.ranks.empty()) {
      PlanOptions opt;
      opt.threads = 1;
      opt.gtsp.seed = seed;
      opt.gtsp.time_budget_s = cfg.gtsp_budget_s;
      const CoveragePlan plan = plan_coverage(iop, p.ranks, cfg.motion, opt);
      row.tour_time = plan.metrics.tour_time;
      row.n_turns = plan.metrics.n_turns;
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

inline Range range_of(const std::vector<double>& v) {
  if (v.empty()) return {};
  Range r{0.0, v.front(), v.front()};
  for (double x : v) {
    r.mean += x;
    r.min = std::min(r.min, x);
    r.max = std::max(r.max, x);
  }
  r.mean /= static_cast<double>(v.size());
  return r;
}

}  // namespace detail

// Instances run on a worker pool; each row depends only on its instance and
// seed + index, and rows are assembled in suite order.
inline BenchReport run_bench(const BenchConfig& cfg) {
  BenchReport report;
  const int n = static_cast<int>(cfg.instances.size());
  report.rows.resize(n);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int k = next++; k < n; k = next++)
      report.rows[k] = detail::bench_one(cfg.instances[k], cfg, cfg.seed + static_cast<std::uint64_t>(k));
  };
  const unsigned workers = std::min<unsigned>(bench_threads(cfg.threads), static_cast<unsigned>(std::max(n, 1)));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<double> lp, base, lpt, bt, tour, turns, tto;
  for (const BenchRow& r : report.rows) {
    if (!r.ok()) {
      ++report.failures;
      continue;
    }
    lp.push_back(r.lp_ranks);
    base.push_back(r.baseline_ranks);
    lpt.push_back(r.lp_time_s);
    bt.push_back(r.baseline_time_s);
    tour.push_back(r.tour_time);
    turns.push_back(r.n_turns);
    if (r.baseline_reached_optimum) {
      ++report.baseline_optimal;
      tto.push_back(r.baseline_time_to_optimum_s);
    }
  }
  report.lp_ranks = detail::range_of(lp);
  report.baseline_ranks = detail::range_of(base);
  report.lp_time_s = detail::range_of(lpt);
  report.baseline_time_s = detail::range_of(bt);
  report.tour_time = detail::range_of(tour);
  report.n_turns = detail::range_of(turns);
  report.baseline_time_to_optimum_s = detail::range_of(tto);
  return report;
}

inline Json bench_to_json(const BenchReport& r) {
  auto range = [](const Range& x) { return Json{{"mean", x.mean}, {"min", x.min}, {"max", x.max}}; };
  Json rows = Json::array();
  for (const BenchRow& row : r.rows) {
    Json j{{"id", row.id},
           {"n_cells", row.n_cells},
           {"lp_ranks", row.lp_ranks},
           {"oracle_ranks", row.oracle_ranks},
           {"oracle_method", row.oracle_method},
           {"lp_time_s", row.lp_time_s},
           {"baseline_ranks", row.baseline_ranks},
           {"baseline_time_s", row.baseline_time_s},
           {"baseline_reached_optimum", row.baseline_reached_optimum},
           {"baseline_time_to_optimum_s",
            row.baseline_reached_optimum ? Json(row.baseline_time_to_optimum_s) : Json(nullptr)},
           {"baseline_capped_ranks", row.baseline_capped_ranks},
           {"tour_time", row.tour_time},
           {"n_turns", row.n_turns}};
    if (!row.ok()) j["error"] = row.error;
    rows.push_back(std::move(j));
  }
  return Json{{"schema_version", kSchemaVersion},
              {"rows", std::move(rows)},
              {"aggregate",
               {{"instances", r.rows.size()},
                {"failures", r.failures},
                {"lp_ranks", range(r.lp_ranks)},
                {"baseline_ranks", range(r.baseline_ranks)},
                {"lp_time_s", range(r.lp_time_s)},
                {"baseline_time_s", range(r.baseline_time_s)},
                {"baseline_optimal", r.baseline_optimal},
                {"baseline_time_to_optimum_s", range(r.baseline_time_to_optimum_s)},
                {"tour_time", range(r.tour_time)},
                {"n_turns", range(r.n_turns)}}},
              {"invariant_holds", r.invariant_holds()}};
}

inline void print_bench_table(std::ostream& out, const BenchReport& r) {
  out << std::left << std::setw(24) << "map" << std::right << std::setw(7) << "cells" << std::setw(6) << "LP"
      << std::setw(7) << "base" << std::setw(10) << "LP s" << std::setw(10) << "base s" << std::setw(9)
      << "opt s" << std::setw(11) << "tour s" << std::setw(7) << "turns" << '\n';
  const auto flags = out.flags();
  out << std::fixed;
  for (const BenchRow& row : r.rows) {
    out << std::left << std::setw(24) << row.id << std::right;
    if (!row.ok()) {
      out << "  failed: " << row.error << '\n';
      continue;
    }
    out << std::setw(7) << row.n_cells << std::setw(6) << row.lp_ranks << std::setw(7) << row.baseline_ranks
        << std::setprecision(4) << std::setw(10) << row.lp_time_s << std::setw(10) << row.baseline_time_s;
    if (row.baseline_reached_optimum) out << std::setprecision(3) << std::setw(9) << row.baseline_time_to_optimum_s;
    else out << std::setw(9) << "-";
    out << std::setprecision(1) << std::setw(11) << row.tour_time << std::setw(7) << row.n_turns << '\n';
  }
  out << std::setprecision(2) << "mean LP ranks " << r.lp_ranks.mean << ", baseline " << r.baseline_ranks.mean
      << "; baseline reached the optimum on " << r.baseline_optimal << "/" << (r.rows.size() - r.failures)
      << "; failures " << r.failures << '\n';
  out.flags(flags);
}

}  // namespace rankcover
