#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rankcover/errors.hpp"
#include "rankcover/iop.hpp"
#include "rankcover/plan.hpp"

namespace rankcover {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline Json point_json(Point p) { return Json::array({p.x, p.y}); }

inline Point point_from(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

inline Json transition_json(const TransitionPath& t) {
  Json pts = Json::array();
  for (const Point& p : t.waypoints) pts.push_back(point_json(p));
  return Json{{"waypoints", std::move(pts)}, {"travel_time", t.travel_time}, {"turn_count", t.turn_count}};
}

inline TransitionPath transition_from(const Json& j) {
  TransitionPath t;
  for (const Json& p : j.at("waypoints")) t.waypoints.push_back(point_from(p));
  t.travel_time = j.at("travel_time").get<double>();
  t.turn_count = j.at("turn_count").get<int>();
  return t;
}

inline void check_schema(const Json& j, const char* what) {
  if (!j.contains("schema_version") || j.at("schema_version").get<int>() != kSchemaVersion)
    throw FormatError(std::string(what) + ": unsupported or missing schema_version");
}

}  // namespace detail

inline Json iop_to_json(const IOP& iop) {
  Json cells = Json::array();
  for (const Cell& c : iop.cells()) cells.push_back(Json::array({c.col, c.row}));
  return Json{{"cols", iop.cols()}, {"rows", iop.rows()}, {"cell_size", iop.cell_size()}, {"cells", std::move(cells)}};
}

inline IOP iop_from_json(const Json& j) {
  std::vector<Cell> cells;
  for (const Json& c : j.at("cells")) cells.push_back({c.at(0).get<int>(), c.at(1).get<int>()});
  return IOP(j.at("cols").get<int>(), j.at("rows").get<int>(), j.at("cell_size").get<double>(), std::move(cells));
}

inline Json rank_to_json(const IOP& iop, const Rank& r) {
  Json cells = Json::array();
  for (int id : r.cells) cells.push_back(Json::array({iop.cell(id).col, iop.cell(id).row}));
  return Json{{"orientation", std::string(1, to_char(r.orientation))},
              {"cells", std::move(cells)},
              {"first", detail::point_json(r.first)},
              {"last", detail::point_json(r.last)},
              {"length", r.length()}};
}

inline Rank rank_from_json(const IOP& iop, const Json& j) {
  Rank r;
  const std::string o = j.at("orientation").get<std::string>();
  if (o != "H" && o != "V") throw FormatError("rank orientation must be \"H\" or \"V\"");
  r.orientation = o == "H" ? Orientation::H : Orientation::V;
  for (const Json& c : j.at("cells")) {
    const int id = iop.id_at(c.at(0).get<int>(), c.at(1).get<int>());
    if (id == IOP::kNone) throw FormatError("rank cell outside the IOP");
    r.cells.push_back(id);
  }
  if (r.cells.empty()) throw FormatError("rank without cells");
  r.first = detail::point_from(j.at("first"));
  r.last = detail::point_from(j.at("last"));
  return r;
}

// Partition document: the IOP, one orientation letter per cell id, and the ranks.
inline Json partition_to_json(const IOP& iop, const OrientationAssignment& a, const std::vector<Rank>& ranks,
                              int objective, std::optional<int> oracle_ranks = std::nullopt) {
  std::string letters;
  for (Orientation o : a) letters.push_back(to_char(o));
  Json rs = Json::array();
  for (const Rank& r : ranks) rs.push_back(rank_to_json(iop, r));
  Json j{{"schema_version", kSchemaVersion},
         {"iop", iop_to_json(iop)},
         {"orientations", letters},
         {"objective", objective},
         {"n_ranks", static_cast<int>(ranks.size())},
         {"ranks", std::move(rs)}};
  if (oracle_ranks) j["oracle_ranks"] = *oracle_ranks;
  return j;
}

inline Json metrics_to_json(const PlanMetrics& m) {
  return Json{{"n_ranks", m.n_ranks},
              {"n_transitions", m.n_transitions},
              {"n_turns", m.n_turns},
              {"coverage_time", m.coverage_time},
              {"transition_time", m.transition_time},
              {"tour_time", m.tour_time}};
}

inline Json plan_to_json(const IOP& iop, const CoveragePlan& plan) {
  Json ranks = Json::array();
  for (const Rank& r : plan.ranks) ranks.push_back(rank_to_json(iop, r));
  Json tour = Json::array();
  for (const PlannedTraversal& t : plan.tour)
    tour.push_back(Json{{"rank", t.rank},
                        {"reversed", t.reversed},
                        {"start", detail::point_json(t.start)},
                        {"end", detail::point_json(t.end)},
                        {"time", t.time}});
  Json transitions = Json::array();
  for (std::size_t k = 0; k < plan.transitions.size(); ++k) {
    Json t = detail::transition_json(plan.transitions[k]);
    t["from_rank"] = plan.tour[k].rank;
    t["to_rank"] = plan.tour[k + 1].rank;
    transitions.push_back(std::move(t));
  }
  Json ret = nullptr;
  if (plan.return_leg) {
    ret = detail::transition_json(*plan.return_leg);
    ret["from_rank"] = plan.tour.back().rank;
    ret["to_rank"] = plan.tour.front().rank;
  }
  return Json{{"schema_version", kSchemaVersion},
              {"closed", plan.closed},
              {"motion", {{"v_max", plan.motion.v_max}, {"accel", plan.motion.accel}, {"omega", plan.motion.omega}}},
              {"iop", iop_to_json(iop)},
              {"ranks", std::move(ranks)},
              {"tour", std::move(tour)},
              {"transitions", std::move(transitions)},
              {"return_transition", std::move(ret)},
              {"metrics", metrics_to_json(plan.metrics)}};
}

struct LoadedPlan {
  IOP iop;
  CoveragePlan plan;
  PlanMetrics stored;  // the "metrics" object as written
};

// Rebuilds the plan; `plan.metrics` is recomputed from the legs, not copied.
inline LoadedPlan plan_from_json(const Json& j) {
  detail::check_schema(j, "plan");
  LoadedPlan out;
  out.iop = iop_from_json(j.at("iop"));
  CoveragePlan& p = out.plan;
  p.closed = j.at("closed").get<bool>();
  const Json& m = j.at("motion");
  p.motion = {m.at("v_max").get<double>(), m.at("accel").get<double>(), m.at("omega").get<double>()};
  for (const Json& r : j.at("ranks")) p.ranks.push_back(rank_from_json(out.iop, r));
  for (const Json& t : j.at("tour")) {
    PlannedTraversal pt;
    pt.rank = t.at("rank").get<int>();
    if (pt.rank < 0 || pt.rank >= static_cast<int>(p.ranks.size())) throw FormatError("tour rank out of range");
    pt.reversed = t.at("reversed").get<bool>();
    pt.start = detail::point_from(t.at("start"));
    pt.end = detail::point_from(t.at("end"));
    pt.time = t.at("time").get<double>();
    p.tour.push_back(pt);
  }
  for (const Json& t : j.at("transitions")) p.transitions.push_back(detail::transition_from(t));
  if (!j.at("return_transition").is_null()) p.return_leg = detail::transition_from(j.at("return_transition"));
  p.metrics = summarize(p);

  const Json& s = j.at("metrics");
  out.stored.n_ranks = s.at("n_ranks").get<int>();
  out.stored.n_transitions = s.at("n_transitions").get<int>();
  out.stored.n_turns = s.at("n_turns").get<int>();
  out.stored.coverage_time = s.at("coverage_time").get<double>();
  out.stored.transition_time = s.at("transition_time").get<double>();
  out.stored.tour_time = s.at("tour_time").get<double>();
  return out;
}

}  // namespace rankcover
