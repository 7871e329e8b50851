#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "rankcover/errors.hpp"
#include "rankcover/iop.hpp"
#include "rankcover/motion.hpp"

namespace rankcover {

// The tool centre may stand at a point p when the l x l square around p lies
// inside the IOP. In lattice coordinates (cell centres at integer (col,
// row)) that region is a complex: a point for every cell, a unit segment
// for every pair of 4-adjacent cells, and a unit square for every fully
// present 2x2 block. All visibility nodes are therefore cell centres.
namespace lattice {

inline constexpr double kEps = 1e-9;

inline bool contains(const IOP& iop, double u, double v) {
  const int c0 = static_cast<int>(std::floor(u + kEps));
  const int c1 = static_cast<int>(std::ceil(u - kEps));
  const int r0 = static_cast<int>(std::floor(v + kEps));
  const int r1 = static_cast<int>(std::ceil(v - kEps));
  return iop.contains(c0, r0) && iop.contains(c1, r0) && iop.contains(c0, r1) && iop.contains(c1, r1);
}

// Closed segment between two cell centres lies in the eroded region.
// Checks every lattice-line crossing and the midpoint of each piece between
// crossings; inside a piece the set of touched cells is constant.
inline bool segment_free(const IOP& iop, Cell a, Cell b) {
  const int du = b.col - a.col;
  const int dv = b.row - a.row;
  const int nu = std::abs(du), nv = std::abs(dv);
  auto at = [&](double t) { return contains(iop, a.col + du * t, a.row + dv * t); };
  // merge the crossing parameters i/nu and j/nv in increasing order
  int i = 0, j = 0;
  double prev = 0.0;
  if (!at(0.0)) return false;
  while (i < nu || j < nv) {
    const double ti = i < nu ? static_cast<double>(i + 1) / nu : 2.0;
    const double tj = j < nv ? static_cast<double>(j + 1) / nv : 2.0;
    const double t = std::min(ti, tj);
    if (ti - t < 1e-12) ++i;
    if (tj - t < 1e-12) ++j;
    if (!at(0.5 * (prev + t)) || !at(t)) return false;
    prev = t;
  }
  return true;
}

// A cell centre is a reflex corner when the eroded region is not locally
// convex there: two nearby region points see each other only around it.
inline bool is_reflex(const IOP& iop, Cell c) {
  std::vector<Cell> local{c};
  for (int dr = -1; dr <= 1; ++dr)
    for (int dc = -1; dc <= 1; ++dc) {
      const Cell p{c.col + dc, c.row + dr};
      if ((dc || dr) && iop.contains(p.col, p.row) && segment_free(iop, c, p)) local.push_back(p);
    }
  for (std::size_t i = 0; i < local.size(); ++i)
    for (std::size_t j = i + 1; j < local.size(); ++j)
      if (!segment_free(iop, local[i], local[j])) return true;
  return false;
}

}  // namespace lattice

class VisibilityGraph {
 public:
  struct Edge {
    int to = 0;
    double length = 0.0;
  };

  int size() const { return static_cast<int>(nodes_.size()); }
  const Point& node(int i) const { return nodes_[i]; }
  const Cell& lattice_cell(int i) const { return cells_[i]; }
  const std::vector<Edge>& neighbours(int i) const { return adj_[i]; }

  std::size_t edge_count() const {
    std::size_t e = 0;
    for (const auto& a : adj_) e += a.size();
    return e / 2;
  }

  bool has_edge(int a, int b) const {
    return std::any_of(adj_[a].begin(), adj_[a].end(), [b](const Edge& e) { return e.to == b; });
  }

  std::optional<int> find(Point p) const {
    for (int i = 0; i < size(); ++i)
      if (std::abs(nodes_[i].x - p.x) < 1e-9 && std::abs(nodes_[i].y - p.y) < 1e-9) return i;
    return std::nullopt;
  }

  int index_of(Point p) const {
    const auto i = find(p);
    if (!i) throw ContractError("VisibilityGraph: point is not a graph node");
    return *i;
  }

 private:
  friend VisibilityGraph build_visibility_graph(const IOP&, const std::vector<Point>&);
  std::vector<Point> nodes_;
  std::vector<Cell> cells_;
  std::vector<std::vector<Edge>> adj_;
};

// Nodes: the terminals in the given order (duplicates dropped), then reflex
// corners in cell-id order. Edges join every mutually visible pair.
inline VisibilityGraph build_visibility_graph(const IOP& iop, const std::vector<Point>& terminals) {
  VisibilityGraph g;
  const double l = iop.cell_size();
  std::vector<int> node_of_cell(iop.size(), -1);
  auto add = [&](int cell_id) {
    if (node_of_cell[cell_id] >= 0) return;
    node_of_cell[cell_id] = static_cast<int>(g.nodes_.size());
    g.nodes_.push_back(iop.center(cell_id));
    g.cells_.push_back(iop.cell(cell_id));
  };
  for (const Point& p : terminals) {
    const double u = p.x / l - 0.5;
    const double v = p.y / l - 0.5;
    const int col = static_cast<int>(std::lround(u));
    const int row = static_cast<int>(std::lround(v));
    const int id = iop.id_at(col, row);
    if (id == IOP::kNone || std::abs(u - col) > 1e-9 || std::abs(v - row) > 1e-9)
      throw ContractError("build_visibility_graph: terminal is not an IOP cell centre");
    add(id);
  }
  for (int id = 0; id < iop.size(); ++id)
    if (lattice::is_reflex(iop, iop.cell(id))) add(id);

  const int n = g.size();
  g.adj_.assign(n, {});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!lattice::segment_free(iop, g.cells_[i], g.cells_[j])) continue;
      const double len = std::hypot(g.nodes_[i].x - g.nodes_[j].x, g.nodes_[i].y - g.nodes_[j].y);
      g.adj_[i].push_back({j, len});
      g.adj_[j].push_back({i, len});
    }
  }
  return g;
}

struct TransitionPath {
  std::vector<Point> waypoints;
  double travel_time = 0.0;  // segment times plus every turn, alignment included
  int turn_count = 0;
};

// Directed visibility edges with their motion costs, plus for each edge the
// successor edges worth taking after it. A continuation u -> r -> w is
// dropped when u sees w: the direct leg is shorter, turns no more (angles
// obey the triangle inequality) and segment_time is concave, so some
// optimal path with the fewest legs never uses such a continuation.
class TransitionGraph {
 public:
  TransitionGraph(const VisibilityGraph& g, const MotionModel& m) : g_(g), m_(m) {
    m.validate();
    const int n = g.size();
    offset_.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) offset_[v + 1] = offset_[v] + static_cast<int>(g.neighbours(v).size());
    const int edges = offset_.back();
    from_.resize(edges);
    to_.resize(edges);
    time_.resize(edges);
    heading_.resize(edges);
    std::vector<std::uint64_t> adj(static_cast<std::size_t>(n) * ((n + 63) / 64), 0);
    const std::size_t words = (n + 63) / 64;
    for (int v = 0; v < n; ++v) {
      for (int k = 0; k < offset_[v + 1] - offset_[v]; ++k) {
        const int e = offset_[v] + k;
        const VisibilityGraph::Edge& edge = g.neighbours(v)[k];
        from_[e] = v;
        to_[e] = edge.to;
        time_[e] = segment_time(edge.length, m);
        heading_[e] = Heading::between(g.node(v), g.node(edge.to));
        adj[v * words + edge.to / 64] |= std::uint64_t{1} << (edge.to % 64);
      }
    }
    auto sees = [&](int a, int b) { return (adj[a * words + b / 64] >> (b % 64)) & 1; };

    succ_offset_.assign(edges + 1, 0);
    for (int e = 0; e < edges; ++e) {
      const int u = from_[e], r = to_[e];
      for (int f = offset_[r]; f < offset_[r + 1]; ++f) {
        const int w = to_[f];
        if (w == u || sees(u, w)) continue;
        succ_.push_back(f);
        succ_turn_.push_back(turn_time(heading_change_deg(heading_[e], heading_[f]), m));
      }
      succ_offset_[e + 1] = static_cast<int>(succ_.size());
    }
  }

  const VisibilityGraph& graph() const { return g_; }
  const MotionModel& motion() const { return m_; }
  int edges() const { return offset_.back(); }
  int out_begin(int v) const { return offset_[v]; }
  int out_end(int v) const { return offset_[v + 1]; }
  int from(int e) const { return from_[e]; }
  int to(int e) const { return to_[e]; }
  double time(int e) const { return time_[e]; }
  const Heading& heading(int e) const { return heading_[e]; }
  int succ_begin(int e) const { return succ_offset_[e]; }
  int succ_end(int e) const { return succ_offset_[e + 1]; }
  int succ(int k) const { return succ_[k]; }
  double succ_turn(int k) const { return succ_turn_[k]; }

 private:
  const VisibilityGraph& g_;
  MotionModel m_;
  std::vector<int> offset_, from_, to_;
  std::vector<double> time_;
  std::vector<Heading> heading_;
  std::vector<int> succ_offset_, succ_;
  std::vector<double> succ_turn_;
};

namespace detail {

// Search state: the node reached and the heading it was reached with.
// State ids: [0, E) are directed edges, then one start state, then goals.
class TransitionSearch {
 public:
  explicit TransitionSearch(const TransitionGraph& tg) : tg_(tg), goals_at_(tg.graph().size()) {}

  struct Goal {
    int node = 0;
    std::optional<Heading> heading;
  };

  // Best-first search from `source`. `heuristic(node)` must be a consistent
  // lower bound for every goal (zero for a plain multi-target Dijkstra).
  // Returns the cost per goal (infinity when unreachable).
  template <class Heuristic>
  std::vector<double> run(int source, std::optional<Heading> start, const std::vector<Goal>& goals, Heuristic heuristic) {
    const MotionModel& m = tg_.motion();
    const int edges = tg_.edges();
    const int start_state = edges;
    const int goal_base = edges + 1;
    const int states = goal_base + static_cast<int>(goals.size());
    dist_.assign(states, kInf);
    parent_.assign(states, -1);
    done_.assign(states, false);
    for (auto& g : goals_at_) g.clear();
    for (std::size_t k = 0; k < goals.size(); ++k) goals_at_[goals[k].node].push_back(static_cast<int>(k));

    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    dist_[start_state] = 0.0;
    open.push({heuristic(source), start_state});
    std::size_t goals_left = goals.size();

    while (!open.empty() && goals_left > 0) {
      const int s = open.top().second;
      open.pop();
      if (done_[s]) continue;
      done_[s] = true;
      if (s >= goal_base) {
        --goals_left;
        continue;
      }
      const int node = s == start_state ? source : tg_.to(s);
      const std::optional<Heading> in = s == start_state ? start : std::optional<Heading>(tg_.heading(s));

      for (int k : goals_at_[node]) {
        const Goal& goal = goals[k];
        double c = dist_[s];
        if (in && goal.heading) c += turn_time(heading_change_deg(*in, *goal.heading), m);
        relax(goal_base + k, c, s, 0.0, open);
      }
      if (s == start_state) {
        for (int e = tg_.out_begin(node); e < tg_.out_end(node); ++e) {
          double c = dist_[s];
          if (in) c += turn_time(heading_change_deg(*in, tg_.heading(e)), m);
          c += tg_.time(e);
          relax(e, c, s, heuristic(tg_.to(e)), open);
        }
      } else {
        for (int k = tg_.succ_begin(s); k < tg_.succ_end(s); ++k) {
          const int e = tg_.succ(k);
          double c = dist_[s] + tg_.succ_turn(k);
          c += tg_.time(e);
          relax(e, c, s, heuristic(tg_.to(e)), open);
        }
      }
    }
    last_goal_base_ = goal_base;
    last_start_ = start_state;
    last_source_ = source;
    return {dist_.begin() + goal_base, dist_.end()};
  }

  // Waypoints of the path to goal k from the last run.
  std::vector<Point> waypoints(int goal) const {
    std::vector<int> nodes;
    for (int s = parent_[last_goal_base_ + goal]; s != last_start_; s = parent_[s]) nodes.push_back(tg_.to(s));
    nodes.push_back(last_source_);
    std::reverse(nodes.begin(), nodes.end());
    std::vector<Point> pts;
    for (int v : nodes) pts.push_back(tg_.graph().node(v));
    return pts;
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  template <class Queue>
  void relax(int state, double cost, int parent, double h, Queue& open) {
    if (cost < dist_[state]) {
      dist_[state] = cost;
      parent_[state] = parent;
      open.push({cost + h, state});
    }
  }

  const TransitionGraph& tg_;
  std::vector<std::vector<int>> goals_at_;
  std::vector<double> dist_;
  std::vector<int> parent_;
  std::vector<bool> done_;
  int last_goal_base_ = 0, last_start_ = 0, last_source_ = 0;
};

inline TransitionPath describe_path(std::vector<Point> pts, std::optional<Heading> start,
                                    std::optional<Heading> end, const MotionModel& m) {
  TransitionPath path;
  path.waypoints = std::move(pts);
  std::optional<Heading> heading = start;
  auto turn = [&](Heading next) {
    if (heading) {
      const double deg = heading_change_deg(*heading, next);
      path.travel_time += turn_time(deg, m);
      if (deg > kTurnEpsDeg) ++path.turn_count;
    }
    heading = next;
  };
  for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i) {
    const Point& a = path.waypoints[i];
    const Point& b = path.waypoints[i + 1];
    turn(Heading::between(a, b));
    path.travel_time += segment_time(std::hypot(b.x - a.x, b.y - a.y), m);
  }
  if (end) turn(*end);
  return path;
}

}  // namespace detail

// Time-optimal path between two graph nodes. Each leg costs segment_time
// plus the in-place turn into it. Optional headings add the alignment turn
// out of the start heading and into the end heading. A* with heuristic
// segment_time(straight-line distance).
inline TransitionPath shortest_transition(const TransitionGraph& tg, Point a, Point b,
                                          std::optional<Heading> start_heading = std::nullopt,
                                          std::optional<Heading> end_heading = std::nullopt) {
  const VisibilityGraph& g = tg.graph();
  const MotionModel& m = tg.motion();
  const int ia = g.index_of(a);
  const int ib = g.index_of(b);
  detail::TransitionSearch search(tg);
  const Point target = g.node(ib);
  const auto cost = search.run(ia, start_heading, {{ib, end_heading}}, [&](int v) {
    return segment_time(std::hypot(g.node(v).x - target.x, g.node(v).y - target.y), m);
  });
  if (!std::isfinite(cost[0]))
    throw NoPathError("no collision-free path between (" + std::to_string(a.x) + ", " + std::to_string(a.y) +
                      ") and (" + std::to_string(b.x) + ", " + std::to_string(b.y) + ")");
  return detail::describe_path(search.waypoints(0), start_heading, end_heading, m);
}

inline TransitionPath shortest_transition(const VisibilityGraph& g, Point a, Point b, const MotionModel& m,
                                          std::optional<Heading> start_heading = std::nullopt,
                                          std::optional<Heading> end_heading = std::nullopt) {
  const TransitionGraph tg(g, m);
  return shortest_transition(tg, a, b, start_heading, end_heading);
}

}  // namespace rankcover
