#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "rankcover/errors.hpp"
#include "rankcover/iop.hpp"

namespace rankcover {

// Random-restart hill climbing over single-cell flips. A descent ends after
// a few sweeps in which neither strict nor sideways flips found a better count.
struct BaselineOptions {
  std::uint64_t seed = 0;
  double time_budget_s = 1.0;
  int max_restarts = 1000;  // the result is a function of the seed unless the budget cuts this short
  int target = -1;          // stop as soon as this many ranks is reached
  int plateau_passes = 8;   // sweeps allowed without a strict improvement; sideways flips are taken meanwhile
};

struct BaselineResult {
  OrientationAssignment assignment;
  int ranks = 0;
  int restarts = 0;
  double elapsed_s = 0.0;
  double time_to_best_s = 0.0;
};

namespace detail {

class FlipEvaluator {
 public:
  FlipEvaluator(const IOP& iop, OrientationAssignment& a) : iop_(iop), a_(a) {}

  int contribution(int i) const {
    if (i == IOP::kNone) return 0;
    return h_endpoint(iop_, a_, i) + v_endpoint(iop_, a_, i);
  }

  // Change in count_ranks if cell i were flipped. Only i and its right and
  // bottom neighbours can change endpoint status.
  int delta(int i) {
    const int r = iop_.right(i), b = iop_.bottom(i);
    const int before = contribution(i) + contribution(r) + contribution(b);
    flip(i);
    const int after = contribution(i) + contribution(r) + contribution(b);
    flip(i);
    return after - before;
  }

  void flip(int i) { a_[i] = a_[i] == Orientation::H ? Orientation::V : Orientation::H; }

 private:
  const IOP& iop_;
  OrientationAssignment& a_;
};

}  // namespace detail

inline BaselineResult baseline_local_search(const IOP& iop, const BaselineOptions& opt = {}) {
  if (opt.time_budget_s < 0.0) throw ContractError("baseline_local_search: negative time budget");
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };

  BaselineResult best;
  const int n = iop.size();
  if (n == 0) return best;

  std::mt19937_64 rng(opt.seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  OrientationAssignment a(n);
  detail::FlipEvaluator eval(iop, a);
  for (int restart = 0; restart < std::max(1, opt.max_restarts); ++restart) {
    for (auto& o : a) o = coin(rng) ? Orientation::V : Orientation::H;
    int count = count_ranks(iop, a);
    if (restart == 0 || count < best.ranks) {
      best.assignment = a;
      best.ranks = count;
      best.time_to_best_s = elapsed();
    }
    if (opt.time_budget_s == 0.0) break;

    std::bernoulli_distribution sideways(0.5);
    int stale = 0;
    bool out_of_time = false;
    while (stale <= opt.plateau_passes && !out_of_time) {
      bool improved = false;
      std::shuffle(order.begin(), order.end(), rng);
      for (int i : order) {
        const int d = eval.delta(i);
        if (d < 0 || (d == 0 && stale > 0 && sideways(rng))) {
          count += d;
          eval.flip(i);
          improved = improved || d < 0;
        }
      }
      stale = improved ? 0 : stale + 1;
      out_of_time = elapsed() >= opt.time_budget_s;
    }
    best.restarts = restart + 1;
    if (count < best.ranks) {
      best.assignment = a;
      best.ranks = count;
      best.time_to_best_s = elapsed();
    }
    if (out_of_time || (opt.target >= 0 && best.ranks <= opt.target)) break;
  }
  best.elapsed_s = elapsed();
  return best;
}

}  // namespace rankcover
