#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "rankcover/errors.hpp"
#include "rankcover/iop.hpp"
#include "rankcover/motion.hpp"
#include "rankcover/visibility.hpp"

namespace rankcover {

// Directed traversal of a rank. Vertex 2k runs rank k first -> last,
// vertex 2k + 1 runs it last -> first.
struct RankTraversal {
  Point entry;
  Point exit;
  Heading heading;
};

inline Heading rank_heading(const Rank& r) {
  if (r.first == r.last) return r.orientation == Orientation::H ? Heading{1.0, 0.0} : Heading{0.0, 1.0};
  return Heading::between(r.first, r.last);
}

inline RankTraversal traversal(const Rank& r, bool reversed) {
  const Heading h = rank_heading(r);
  return reversed ? RankTraversal{r.last, r.first, h.reversed()} : RankTraversal{r.first, r.last, h};
}

inline int vertex_of(int set, bool reversed) { return 2 * set + (reversed ? 1 : 0); }
inline int set_of(int vertex) { return vertex / 2; }
inline bool is_reversed(int vertex) { return vertex % 2 == 1; }
inline int flipped(int vertex) { return vertex ^ 1; }

// Two vertices per set; cost(u, v) is the time to leave traversal u and
// start traversal v, alignment turns included. Rank traversal times are not
// part of the matrix since they do not depend on direction.
class GtspInstance {
 public:
  GtspInstance() = default;
  explicit GtspInstance(int sets)
      : sets_(sets), cost_(static_cast<std::size_t>(2 * sets) * (2 * sets), 0.0) {}

  int sets() const { return sets_; }
  int vertices() const { return 2 * sets_; }
  double cost(int u, int v) const { return cost_[static_cast<std::size_t>(u) * vertices() + v]; }
  void set_cost(int u, int v, double c) { cost_[static_cast<std::size_t>(u) * vertices() + v] = c; }

  bool symmetric(double tol = 1e-12) const {
    for (int u = 0; u < vertices(); ++u)
      for (int v = 0; v < vertices(); ++v)
        if (set_of(u) != set_of(v) && std::abs(cost(u, v) - cost(flipped(v), flipped(u))) > tol) return false;
    return true;
  }

 private:
  int sets_ = 0;
  std::vector<double> cost_;
};

struct GtspTour {
  std::vector<int> vertices;  // one per set, in visiting order
  double cost = 0.0;
  bool closed = true;
};

inline double tour_cost(const GtspInstance& inst, std::span<const int> vertices, bool closed) {
  double c = 0.0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) c += inst.cost(vertices[i], vertices[i + 1]);
  if (closed && vertices.size() > 1) c += inst.cost(vertices.back(), vertices.front());
  return c;
}

// Fills the cost matrix from one multi-target search per exit traversal.
// Searches are independent and run on up to `threads` workers.
inline GtspInstance build_gtsp(const std::vector<Rank>& ranks, const IOP& iop, const MotionModel& m,
                               unsigned threads = std::thread::hardware_concurrency()) {
  m.validate();
  const int sets = static_cast<int>(ranks.size());
  GtspInstance inst(sets);
  if (sets == 0) return inst;

  std::vector<Point> terminals;
  for (const Rank& r : ranks) {
    terminals.push_back(r.first);
    terminals.push_back(r.last);
  }
  const VisibilityGraph g = build_visibility_graph(iop, terminals);

  const int nv = inst.vertices();
  std::vector<int> entry_node(nv), exit_node(nv);
  std::vector<RankTraversal> trav(nv);
  for (int v = 0; v < nv; ++v) {
    trav[v] = traversal(ranks[set_of(v)], is_reversed(v));
    entry_node[v] = g.index_of(trav[v].entry);
    exit_node[v] = g.index_of(trav[v].exit);
  }

  std::vector<detail::TransitionSearch::Goal> goals(nv);
  for (int v = 0; v < nv; ++v) goals[v] = {entry_node[v], trav[v].heading};

  const TransitionGraph tg(g, m);
  auto work = [&](int begin, int step) {
    detail::TransitionSearch search(tg);
    for (int u = begin; u < nv; u += step) {
      const auto cost = search.run(exit_node[u], trav[u].heading, goals, [](int) { return 0.0; });
      for (int v = 0; v < nv; ++v)
        if (set_of(v) != set_of(u)) inst.set_cost(u, v, cost[v]);
    }
  };
  const int workers = static_cast<int>(std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(nv)));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& t : pool) t.join();
  }

  for (int u = 0; u < nv; ++u)
    for (int v = 0; v < nv; ++v)
      if (set_of(u) != set_of(v) && !std::isfinite(inst.cost(u, v)))
        throw NoPathError("no transition path from rank " + std::to_string(set_of(u)) + " to rank " +
                          std::to_string(set_of(v)));
  return inst;
}

inline constexpr int kGtspExactMaxSets = 12;

// Held-Karp over sets. Closed tours start at set 0.
inline GtspTour solve_gtsp_exact(const GtspInstance& inst, bool closed = true) {
  const int s = inst.sets();
  GtspTour tour;
  tour.closed = closed;
  if (s == 0) return tour;
  if (s > kGtspExactMaxSets)
    throw SizeError("solve_gtsp_exact: " + std::to_string(s) + " sets exceeds limit of " +
                    std::to_string(kGtspExactMaxSets));
  if (s == 1) {
    tour.vertices = {0};
    return tour;
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const int nv = inst.vertices();
  const std::uint32_t full = (1u << s) - 1;
  double best = kInf;
  std::vector<int> best_tour;

  std::vector<double> dp(static_cast<std::size_t>(full + 1) * nv);
  std::vector<int> parent(dp.size());
  auto idx = [nv](std::uint32_t mask, int v) { return static_cast<std::size_t>(mask) * nv + v; };

  const int starts = closed ? 2 : 1;
  for (int start = 0; start < starts; ++start) {
    std::fill(dp.begin(), dp.end(), kInf);
    std::fill(parent.begin(), parent.end(), -1);
    if (closed) {
      dp[idx(1u, start)] = 0.0;
    } else {
      for (int v = 0; v < nv; ++v) dp[idx(1u << set_of(v), v)] = 0.0;
    }
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      if (closed && !(mask & 1u)) continue;
      for (int v = 0; v < nv; ++v) {
        const double d = dp[idx(mask, v)];
        if (d == kInf) continue;
        for (int w = 0; w < nv; ++w) {
          const std::uint32_t bit = 1u << set_of(w);
          if (mask & bit) continue;
          const double nd = d + inst.cost(v, w);
          if (nd < dp[idx(mask | bit, w)]) {
            dp[idx(mask | bit, w)] = nd;
            parent[idx(mask | bit, w)] = v;
          }
        }
      }
    }
    for (int v = 0; v < nv; ++v) {
      const double d = dp[idx(full, v)];
      if (d == kInf) continue;
      const double total = closed ? d + inst.cost(v, start) : d;
      if (total < best) {
        best = total;
        best_tour.clear();
        std::uint32_t mask = full;
        for (int cur = v; cur != -1;) {
          best_tour.push_back(cur);
          const int prev = parent[idx(mask, cur)];
          mask &= ~(1u << set_of(cur));
          cur = prev;
        }
        std::reverse(best_tour.begin(), best_tour.end());
      }
    }
  }
  tour.vertices = std::move(best_tour);
  tour.cost = tour_cost(inst, tour.vertices, closed);
  return tour;
}

enum class GtspMode { heuristic, exact };

struct GtspOptions {
  std::uint64_t seed = 0;
  double time_budget_s = 1.0;
  bool closed = true;
  GtspMode mode = GtspMode::heuristic;
  // Iterated local search rounds. The budget only cuts this short, so results
  // are seed-deterministic whenever the budget is not binding.
  int max_rounds = 300;
};

namespace detail {

class GtspLocalSearch {
 public:
  GtspLocalSearch(const GtspInstance& inst, bool closed) : inst_(inst), closed_(closed) {}

  double c(int u, int v) const { return inst_.cost(u, v); }

  // Runs all neighbourhoods to a common local optimum.
  void optimise(std::vector<int>& seq) const {
    if (seq.size() < 2) {
      if (seq.size() == 1) seq[0] = set_of(seq[0]) * 2;
      return;
    }
    bool improved = true;
    while (improved) {
      improved = flip_pass(seq);
      improved = two_opt_pass(seq) || improved;
      improved = or_opt_pass(seq) || improved;
    }
  }

 private:
  static constexpr double kImprove = 1e-9;

  // index of predecessor/successor, -1 when none; closed tours keep
  // position 0 fixed and wrap at the end
  int prev(int i, int n) const { return i > 0 ? i - 1 : (closed_ ? n - 1 : -1); }
  int next(int i, int n) const { return i + 1 < n ? i + 1 : (closed_ ? 0 : -1); }


  bool flip_pass(std::vector<int>& s) const {
    const int n = static_cast<int>(s.size());
    bool any = false;
    for (int i = 0; i < n; ++i) {
      const int p = prev(i, n), q = next(i, n);
      const int f = flipped(s[i]);
      const double before = (p >= 0 ? c(s[p], s[i]) : 0.0) + (q >= 0 ? c(s[i], s[q]) : 0.0);
      const double after = (p >= 0 ? c(s[p], f) : 0.0) + (q >= 0 ? c(f, s[q]) : 0.0);
      if (after < before - kImprove) {
        s[i] = f;
        any = true;
      }
    }
    return any;
  }

  // Reverse s[i..j] and flip every vertex in it.
  bool two_opt_pass(std::vector<int>& s) const {
    const int n = static_cast<int>(s.size());
    bool any = false;
    for (int i = closed_ ? 1 : 0; i < n; ++i) {
      double fwd = 0.0, rev = 0.0;
      for (int j = i + 1; j < n; ++j) {
        fwd += c(s[j - 1], s[j]);
        rev += c(flipped(s[j]), flipped(s[j - 1]));
        const int p = i > 0 ? i - 1 : -1;
        const int q = j + 1 < n ? j + 1 : (closed_ ? 0 : -1);
        const double before = (p >= 0 ? c(s[p], s[i]) : 0.0) + fwd + (q >= 0 ? c(s[j], s[q]) : 0.0);
        const double after =
            (p >= 0 ? c(s[p], flipped(s[j])) : 0.0) + rev + (q >= 0 ? c(flipped(s[i]), s[q]) : 0.0);
        if (after < before - kImprove) {
          std::reverse(s.begin() + i, s.begin() + j + 1);
          for (int k = i; k <= j; ++k) s[k] = flipped(s[k]);
          any = true;
          fwd = rev = 0.0;
          // restart the inner scan from the modified tour
          for (int k = i + 1; k <= j; ++k) {
            fwd += c(s[k - 1], s[k]);
            rev += c(flipped(s[k]), flipped(s[k - 1]));
          }
        }
      }
    }
    return any;
  }

  // Move a run of 1..3 vertices elsewhere, optionally reversed.
  bool or_opt_pass(std::vector<int>& s) const {
    const int n = static_cast<int>(s.size());
    bool any = false;
    std::vector<int> rest;
    for (int len = 1; len <= 3 && len < n; ++len) {
      for (int i = closed_ ? 1 : 0; i + len <= n; ++i) {
        const int e = i + len - 1;
        const int p = i > 0 ? i - 1 : -1;
        const int q = e + 1 < n ? e + 1 : (closed_ ? 0 : -1);
        const double internal = [&] {
          double t = 0.0;
          for (int k = i; k < e; ++k) t += c(s[k], s[k + 1]);
          return t;
        }();
        const double internal_rev = [&] {
          double t = 0.0;
          for (int k = i; k < e; ++k) t += c(flipped(s[k + 1]), flipped(s[k]));
          return t;
        }();
        double removed = (p >= 0 ? c(s[p], s[i]) : 0.0) + (q >= 0 ? c(s[e], s[q]) : 0.0) + internal;
        // p == q when only the depot remains: no p -> q edge to restore
        if (p >= 0 && q >= 0 && p != q) removed -= c(s[p], s[q]);

        rest.assign(s.begin(), s.begin() + i);
        rest.insert(rest.end(), s.begin() + e + 1, s.end());
        const int m = static_cast<int>(rest.size());
        double best_gain = kImprove;
        int best_gap = -1;
        bool best_rev = false;
        // gap g: insert before rest[g]; g == m appends at the end
        for (int gap = closed_ ? 1 : 0; gap <= m; ++gap) {
          if (gap == i) continue;  // original position
          const int a = gap > 0 ? rest[gap - 1] : -1;
          const int b = gap < m ? rest[gap] : (closed_ && m > 0 ? rest[0] : -1);
          const double base = (a >= 0 && b >= 0 && !(closed_ && m == 1)) ? c(a, b) : 0.0;
          for (int r = 0; r < 2; ++r) {
            const int first = r ? flipped(s[e]) : s[i];
            const int last = r ? flipped(s[i]) : s[e];
            const double added =
                (a >= 0 ? c(a, first) : 0.0) + (b >= 0 ? c(last, b) : 0.0) - base + (r ? internal_rev : internal);
            const double gain = removed - added;
            if (gain > best_gain) {
              best_gain = gain;
              best_gap = gap;
              best_rev = r;
            }
          }
        }
        if (best_gap < 0) continue;
        std::vector<int> seg(s.begin() + i, s.begin() + e + 1);
        if (best_rev) {
          std::reverse(seg.begin(), seg.end());
          for (int& v : seg) v = flipped(v);
        }
        rest.insert(rest.begin() + best_gap, seg.begin(), seg.end());
        s = rest;
        any = true;
      }
    }
    return any;
  }

  const GtspInstance& inst_;
  bool closed_;
};

}  // namespace detail

// Randomised cheapest insertion followed by iterated local search (flip,
// 2-opt with direction flips, or-opt). Closed tours always begin at set 0.
inline GtspTour solve_gtsp(const GtspInstance& inst, const GtspOptions& opt = {}) {
  if (opt.mode == GtspMode::exact) return solve_gtsp_exact(inst, opt.closed);
  GtspTour tour;
  tour.closed = opt.closed;
  const int s = inst.sets();
  if (s == 0) return tour;
  if (s == 1) {
    tour.vertices = {0};
    return tour;
  }
  const auto deadline =
      std::chrono::steady_clock::now() + std::chrono::duration<double>(std::max(0.0, opt.time_budget_s));
  std::mt19937_64 rng(opt.seed);
  const detail::GtspLocalSearch ls(inst, opt.closed);
  auto cost = [&](const std::vector<int>& seq) { return tour_cost(inst, seq, opt.closed); };

  auto construct = [&] {
    std::vector<int> order(s - 1);
    std::iota(order.begin(), order.end(), 1);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> seq{vertex_of(0, std::bernoulli_distribution(0.5)(rng))};
    for (int set : order) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_pos = 0;
      int best_v = 0;
      const std::size_t n = seq.size();
      for (std::size_t pos = opt.closed ? 1 : 0; pos <= n; ++pos) {
        const int a = pos > 0 ? seq[pos - 1] : -1;
        const int b = pos < n ? seq[pos] : (opt.closed ? seq[0] : -1);
        for (int r = 0; r < 2; ++r) {
          const int v = vertex_of(set, r);
          double delta = (a >= 0 ? inst.cost(a, v) : 0.0) + (b >= 0 ? inst.cost(v, b) : 0.0);
          if (a >= 0 && b >= 0 && !(opt.closed && n == 1)) delta -= inst.cost(a, b);
          if (delta < best) {
            best = delta;
            best_pos = pos;
            best_v = v;
          }
        }
      }
      seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(best_pos), best_v);
    }
    return seq;
  };

  auto perturb = [&](std::vector<int> seq) {
    const int n = static_cast<int>(seq.size());
    const int lo = opt.closed ? 1 : 0;
    if (n - lo >= 8) {
      // double bridge on the movable part
      std::vector<int> cut{lo, 0, 0, 0, n};
      std::uniform_int_distribution<int> pick(lo + 1, n - 1);
      do {
        cut[1] = pick(rng), cut[2] = pick(rng), cut[3] = pick(rng);
        std::sort(cut.begin() + 1, cut.begin() + 4);
      } while (cut[1] == cut[2] || cut[2] == cut[3]);
      std::vector<int> out(seq.begin(), seq.begin() + lo);
      for (int part : {2, 1, 0, 3})
        out.insert(out.end(), seq.begin() + cut[part], seq.begin() + cut[part + 1]);
      seq = out;
    } else {
      std::shuffle(seq.begin() + lo, seq.end(), rng);
    }
    std::bernoulli_distribution coin(0.3);
    for (int& v : seq)
      if (coin(rng)) v = flipped(v);
    return seq;
  };

  std::vector<int> best = construct();
  ls.optimise(best);
  double best_cost = cost(best);
  std::vector<int> current = best;
  double current_cost = best_cost;
  for (int round = 0; round < opt.max_rounds; ++round) {
    if (std::chrono::steady_clock::now() >= deadline) break;
    std::vector<int> cand = (round % 10 == 9) ? construct() : perturb(current);
    ls.optimise(cand);
    const double cc = cost(cand);
    if (cc < current_cost - 1e-12) {
      current = cand;
      current_cost = cc;
    }
    if (cc < best_cost - 1e-12) {
      best = std::move(cand);
      best_cost = cc;
    }
  }
  tour.vertices = std::move(best);
  tour.cost = tour_cost(inst, tour.vertices, opt.closed);
  return tour;
}

// GTSPLIB-style export (as read by GLNS): times in milliseconds.
inline void write_gtsplib(std::ostream& out, const GtspInstance& inst, const std::string& name = "rankcover") {
  const int nv = inst.vertices();
  out << "NAME: " << name << "\nTYPE: AGTSP\nCOMMENT: rank traversal transitions, ms\n";
  out << "DIMENSION: " << nv << "\nGTSP_SETS: " << inst.sets() << "\n";
  out << "EDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX\nEDGE_WEIGHT_SECTION\n";
  for (int u = 0; u < nv; ++u) {
    for (int v = 0; v < nv; ++v) {
      const long long w = set_of(u) == set_of(v) ? 0LL : std::llround(inst.cost(u, v) * 1000.0);
      out << (v ? " " : "") << w;
    }
    out << '\n';
  }
  out << "GTSP_SET_SECTION:\n";
  for (int s = 0; s < inst.sets(); ++s) out << s + 1 << ' ' << 2 * s + 1 << ' ' << 2 * s + 2 << " -1\n";
  out << "EOF\n";
}

}  // namespace rankcover
