#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "rankcover/errors.hpp"

namespace rankcover {

// Primal network simplex for min-cost flow with integer data.
//
// The basis is a spanning tree rooted at an artificial node. Leaving arcs are
// chosen by the strongly-feasible-tree rule, which rules out cycling under
// degeneracy; entering arcs come from a cyclic block search. Both rules are
// deterministic, so a fixed instance always ends on the same basis.
class NetworkSimplex {
 public:
  using Value = std::int64_t;
  static constexpr Value kInfCap = std::numeric_limits<Value>::max() / 4;

  enum class Status { optimal, infeasible, unbounded };

  explicit NetworkSimplex(int node_count) : node_count_(node_count), supply_(node_count, 0) {}

  int add_arc(int from, int to, Value capacity, Value cost) {
    if (from < 0 || to < 0 || from >= node_count_ || to >= node_count_)
      throw ContractError("NetworkSimplex: arc endpoint out of range");
    if (capacity < 0) throw ContractError("NetworkSimplex: negative capacity");
    source_.push_back(from);
    target_.push_back(to);
    cap_.push_back(capacity);
    cost_.push_back(cost);
    return static_cast<int>(source_.size()) - 1;
  }

  void set_supply(int node, Value s) { supply_[node] = s; }

  Status run() {
    init();
    if (!feasible_supply_) return Status::infeasible;
    while (true) {
      const int in = find_entering_arc();
      if (in < 0) break;
      const PivotResult r = pivot(in);
      if (r == PivotResult::unbounded) return Status::unbounded;
      ++pivots_;
    }
    // flow left on an artificial arc means supplies could not be routed
    for (int v = 0; v < node_count_; ++v)
      if (flow_[arc_count_ + v] != 0) return Status::infeasible;
    return Status::optimal;
  }

  Value flow(int arc) const { return flow_[arc]; }
  Value potential(int node) const { return pi_[node]; }
  bool in_basis(int arc) const { return state_[arc] == kTree; }
  long pivots() const { return pivots_; }
  int arc_count() const { return arc_count_; }

  Value total_cost() const {
    Value c = 0;
    for (int e = 0; e < arc_count_; ++e) c += flow_[e] * cost_[e];
    return c;
  }

 private:
  static constexpr int kTree = 0;
  static constexpr int kLower = 1;
  static constexpr int kUpper = -1;
  static constexpr int kUp = 1;     // pred arc points child -> parent
  static constexpr int kDown = -1;  // pred arc points parent -> child

  enum class PivotResult { ok, unbounded };

  void init() {
    arc_count_ = static_cast<int>(source_.size());
    const int root = node_count_;
    const int total_nodes = node_count_ + 1;

    Value sum = 0;
    for (Value s : supply_) sum += s;
    feasible_supply_ = (sum == 0);

    Value art_cost = 1;
    for (Value c : cost_) art_cost += c < 0 ? -c : c;
    art_cost *= 1 + node_count_;

    // artificial arcs occupy ids [arc_count_, arc_count_ + node_count_)
    source_.resize(arc_count_);
    target_.resize(arc_count_);
    cap_.resize(arc_count_);
    cost_.resize(arc_count_);
    flow_.assign(arc_count_, 0);
    state_.assign(arc_count_, kLower);

    parent_.assign(total_nodes, -1);
    pred_.assign(total_nodes, -1);
    pred_dir_.assign(total_nodes, 0);
    depth_.assign(total_nodes, 0);
    pi_.assign(total_nodes, 0);
    first_child_.assign(total_nodes, -1);
    next_sib_.assign(total_nodes, -1);
    prev_sib_.assign(total_nodes, -1);

    for (int v = 0; v < node_count_; ++v) {
      const int e = static_cast<int>(source_.size());
      if (supply_[v] >= 0) {
        source_.push_back(v);
        target_.push_back(root);
        flow_.push_back(supply_[v]);
        pred_dir_[v] = kUp;
        pi_[v] = -art_cost;
      } else {
        source_.push_back(root);
        target_.push_back(v);
        flow_.push_back(-supply_[v]);
        pred_dir_[v] = kDown;
        pi_[v] = art_cost;
      }
      cap_.push_back(kInfCap);
      cost_.push_back(art_cost);
      state_.push_back(kTree);
      pred_[v] = e;
      parent_[v] = root;
      depth_[v] = 1;
      link_child(v, root);
    }

    block_size_ = std::max(10, static_cast<int>(std::sqrt(static_cast<double>(arc_count_))));
    next_arc_ = 0;
    pivots_ = 0;
  }

  Value reduced_cost(int e) const { return cost_[e] + pi_[source_[e]] - pi_[target_[e]]; }

  int find_entering_arc() {
    if (arc_count_ == 0) return -1;
    Value best = 0;
    int best_arc = -1;
    int scanned = 0;
    int e = next_arc_;
    for (int i = 0; i < arc_count_; ++i) {
      const Value c = state_[e] * reduced_cost(e);
      if (c < best) {
        best = c;
        best_arc = e;
      }
      if (++e == arc_count_) e = 0;
      if (++scanned == block_size_) {
        if (best_arc >= 0) break;
        scanned = 0;
      }
    }
    next_arc_ = e;
    return best_arc;
  }

  int find_join(int u, int v) const {
    while (u != v) {
      if (depth_[u] > depth_[v]) {
        u = parent_[u];
      } else if (depth_[v] > depth_[u]) {
        v = parent_[v];
      } else {
        u = parent_[u];
        v = parent_[v];
      }
    }
    return u;
  }

  PivotResult pivot(int in) {
    const int first = state_[in] == kLower ? source_[in] : target_[in];
    const int second = state_[in] == kLower ? target_[in] : source_[in];
    const int join = find_join(source_[in], target_[in]);

    Value delta = cap_[in];
    int u_out = -1;
    int side = 0;
    // walking down from join to `first` traverses each pred arc against its
    // orientation when it points up
    for (int u = first; u != join; u = parent_[u]) {
      const int e = pred_[u];
      const Value d = pred_dir_[u] == kDown ? cap_[e] - flow_[e] : flow_[e];
      if (d < delta) {
        delta = d;
        u_out = u;
        side = 1;
      }
    }
    for (int u = second; u != join; u = parent_[u]) {
      const int e = pred_[u];
      const Value d = pred_dir_[u] == kUp ? cap_[e] - flow_[e] : flow_[e];
      if (d <= delta) {
        delta = d;
        u_out = u;
        side = 2;
      }
    }
    if (delta >= kInfCap) return PivotResult::unbounded;

    if (delta > 0) {
      const Value val = state_[in] * delta;
      flow_[in] += val;
      for (int u = source_[in]; u != join; u = parent_[u]) flow_[pred_[u]] -= pred_dir_[u] * val;
      for (int u = target_[in]; u != join; u = parent_[u]) flow_[pred_[u]] += pred_dir_[u] * val;
    }

    if (side == 0) {
      state_[in] = -state_[in];
      return PivotResult::ok;
    }

    const int out_arc = pred_[u_out];
    state_[out_arc] = flow_[out_arc] == 0 ? kLower : kUpper;
    state_[in] = kTree;

    const int u_in = side == 1 ? first : second;
    const int v_in = side == 1 ? second : first;
    rehang(u_in, v_in, in, u_out);
    return PivotResult::ok;
  }

  // Detach the subtree rooted at u_out and reattach it below v_in through
  // `in`, re-rooting it at u_in.
  void rehang(int u_in, int v_in, int in, int u_out) {
    path_.clear();
    for (int u = u_in;; u = parent_[u]) {
      path_.push_back(u);
      if (u == u_out) break;
    }
    for (int u : path_) unlink_child(u);

    int new_parent = v_in;
    int new_pred = in;
    for (int u : path_) {
      const int old_pred = pred_[u];
      parent_[u] = new_parent;
      pred_[u] = new_pred;
      pred_dir_[u] = source_[new_pred] == u ? kUp : kDown;
      link_child(u, new_parent);
      new_parent = u;
      new_pred = old_pred;
    }

    stack_.clear();
    stack_.push_back(u_in);
    while (!stack_.empty()) {
      const int u = stack_.back();
      stack_.pop_back();
      const int p = parent_[u];
      depth_[u] = depth_[p] + 1;
      pi_[u] = pred_dir_[u] == kUp ? pi_[p] - cost_[pred_[u]] : pi_[p] + cost_[pred_[u]];
      for (int c = first_child_[u]; c != -1; c = next_sib_[c]) stack_.push_back(c);
    }
  }

  void unlink_child(int v) {
    const int p = parent_[v];
    if (prev_sib_[v] != -1) {
      next_sib_[prev_sib_[v]] = next_sib_[v];
    } else {
      first_child_[p] = next_sib_[v];
    }
    if (next_sib_[v] != -1) prev_sib_[next_sib_[v]] = prev_sib_[v];
    next_sib_[v] = prev_sib_[v] = -1;
  }

  void link_child(int v, int p) {
    prev_sib_[v] = -1;
    next_sib_[v] = first_child_[p];
    if (first_child_[p] != -1) prev_sib_[first_child_[p]] = v;
    first_child_[p] = v;
  }

  int node_count_;
  int arc_count_ = 0;
  bool feasible_supply_ = true;
  std::vector<Value> supply_;
  std::vector<int> source_, target_;
  std::vector<Value> cap_, cost_, flow_;
  std::vector<int> state_;

  std::vector<int> parent_, pred_, pred_dir_, depth_;
  std::vector<Value> pi_;
  std::vector<int> first_child_, next_sib_, prev_sib_;
  std::vector<int> path_, stack_;

  int block_size_ = 10;
  int next_arc_ = 0;
  long pivots_ = 0;
};

}  // namespace rankcover
