#pragma once

#include <optional>
#include <vector>

#include "rankcover/gtsp.hpp"
#include "rankcover/iop.hpp"
#include "rankcover/motion.hpp"
#include "rankcover/visibility.hpp"

namespace rankcover {

struct PlannedTraversal {
  int rank = 0;
  bool reversed = false;
  Point start;
  Point end;
  double time = 0.0;  // rest-to-rest straight run
};

struct PlanMetrics {
  int n_ranks = 0;
  int n_transitions = 0;  // legs between consecutive ranks; the return leg is separate
  int n_turns = 0;
  double coverage_time = 0.0;
  double transition_time = 0.0;  // all legs including the return leg
  double tour_time = 0.0;
};

// `transitions[k]` joins tour[k] to tour[k + 1]. A closed tour with at least
// two ranks adds `return_leg` from the last rank back to the first.
struct CoveragePlan {
  std::vector<Rank> ranks;
  std::vector<PlannedTraversal> tour;
  std::vector<TransitionPath> transitions;
  std::optional<TransitionPath> return_leg;
  bool closed = true;
  MotionModel motion;
  PlanMetrics metrics;
};

// Metrics from the plan's own fields.
inline PlanMetrics summarize(const CoveragePlan& plan) {
  PlanMetrics m;
  m.n_ranks = static_cast<int>(plan.ranks.size());
  m.n_transitions = static_cast<int>(plan.transitions.size());
  for (const PlannedTraversal& t : plan.tour) m.coverage_time += t.time;
  auto add = [&](const TransitionPath& p) {
    m.transition_time += p.travel_time;
    m.n_turns += p.turn_count;
  };
  for (const auto& p : plan.transitions) add(p);
  if (plan.return_leg) add(*plan.return_leg);
  m.tour_time = m.coverage_time + m.transition_time;
  return m;
}

inline CoveragePlan assemble_plan(const IOP& iop, const std::vector<Rank>& ranks, const GtspTour& tour,
                                  const MotionModel& m) {
  m.validate();
  CoveragePlan plan;
  plan.ranks = ranks;
  plan.closed = tour.closed;
  plan.motion = m;
  if (ranks.empty()) return plan;
  if (tour.vertices.size() != ranks.size()) throw ContractError("assemble_plan: tour does not cover every rank");
  std::vector<bool> seen(ranks.size(), false);
  for (int v : tour.vertices) {
    if (v < 0 || set_of(v) >= static_cast<int>(ranks.size()) || seen[set_of(v)])
      throw ContractError("assemble_plan: tour must visit each rank exactly once");
    seen[set_of(v)] = true;
  }

  std::vector<Point> terminals;
  for (const Rank& r : ranks) {
    terminals.push_back(r.first);
    terminals.push_back(r.last);
  }
  const VisibilityGraph g = build_visibility_graph(iop, terminals);
  const TransitionGraph tg(g, m);

  for (int v : tour.vertices) {
    const Rank& r = ranks[set_of(v)];
    const RankTraversal t = traversal(r, is_reversed(v));
    plan.tour.push_back({set_of(v), is_reversed(v), t.entry, t.exit, segment_time(r.length(), m)});
  }
  auto leg = [&](int from, int to) {
    const RankTraversal a = traversal(ranks[set_of(from)], is_reversed(from));
    const RankTraversal b = traversal(ranks[set_of(to)], is_reversed(to));
    return shortest_transition(tg, a.exit, b.entry, a.heading, b.heading);
  };
  for (std::size_t k = 0; k + 1 < tour.vertices.size(); ++k)
    plan.transitions.push_back(leg(tour.vertices[k], tour.vertices[k + 1]));
  if (tour.closed && tour.vertices.size() >= 2) plan.return_leg = leg(tour.vertices.back(), tour.vertices.front());
  plan.metrics = summarize(plan);
  return plan;
}

struct PlanOptions {
  GtspOptions gtsp;
  unsigned threads = std::thread::hardware_concurrency();
};

// Tour over an existing partition: GTSP costs, solve, assemble.
inline CoveragePlan plan_coverage(const IOP& iop, const std::vector<Rank>& ranks, const MotionModel& m,
                                  const PlanOptions& opt = {}) {
  const GtspInstance inst = build_gtsp(ranks, iop, m, opt.threads);
  const GtspTour tour = solve_gtsp(inst, opt.gtsp);
  return assemble_plan(iop, ranks, tour, m);
}

}  // namespace rankcover
