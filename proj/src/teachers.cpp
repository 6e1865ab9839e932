#include "npi/teachers.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

#include "npi/encoding.hpp"
#include "npi/knapsack_env.hpp"
#include "npi/search_env.hpp"

namespace npi {

namespace {

// Variable aliases used throughout: the agents address v_1..v_4 as 0-based
// indices 0..3.
constexpr int kI = 0, kJ = 1, kL = 2, kH = 3;

struct InterfaceView {
  const Eigen::VectorXd& obs;

  bool var_lt(int i, int j) const { return obs[pair_feature_base(i, j)] > 0.5; }
  bool var_eq(int i, int j) const { return obs[pair_feature_base(i, j) + 1] > 0.5; }
  bool var_gt(int i, int j) const { return obs[pair_feature_base(i, j) + 2] > 0.5; }
  bool val_lt(int i, int j) const { return obs[pair_feature_base(i, j) + 3] > 0.5; }
  // In-bounds comparisons with the neighbors; false at the range boundary.
  bool gt_right(int i) const { return obs[right_neighbor_feature_base(i)] > 0.5; }
  bool lt_left(int i) const { return obs[left_neighbor_feature_base(i) + 3] > 0.5; }
  bool at_high(int i) const { return obs[right_neighbor_feature_base(i) + 3] > 0.5; }
};

}  // namespace

Instruction bubble_teacher(const Eigen::VectorXd& obs) {
  const auto& s = bubble_insertion_schema();
  static const int kSwapNext = s.type_id("SwapWithNext");
  static const int kMove = s.type_id("MoveVar");
  static const int kAssign = s.type_id("AssignVar");
  InterfaceView f{obs};
  if (f.var_lt(kI, kJ)) {
    if (f.gt_right(kI)) return make_ins(kSwapNext, {kI});
    return make_ins(kMove, {kI, 1});
  }
  if (f.var_eq(kI, kJ)) return make_ins(kMove, {kJ, 0});
  return make_ins(kAssign, {kI, kL});
}

Instruction insertion_teacher(const Eigen::VectorXd& obs) {
  const auto& s = bubble_insertion_schema();
  static const int kSwapNext = s.type_id("SwapWithNext");
  static const int kMove = s.type_id("MoveVar");
  static const int kAssign = s.type_id("AssignVar");
  InterfaceView f{obs};
  if (f.var_lt(kI, kJ)) return make_ins(kAssign, {kJ, kI});  // seed v_j at the frontier
  if (f.var_eq(kI, kJ)) return make_ins(kMove, {kI, 1});
  if (f.gt_right(kJ)) return make_ins(kSwapNext, {kJ});
  if (f.lt_left(kJ)) return make_ins(kMove, {kJ, 0});
  return make_ins(kAssign, {kJ, kI});
}

Instruction quicksort_teacher(const Eigen::VectorXd& obs) {
  const auto& s = quicksort_schema();
  static const int kMove = s.type_id("MoveVar");
  static const int kAssign = s.type_id("AssignVar");
  static const int kCall = s.type_id("FunctionCall");
  static const int kReturn = s.type_id("Return");
  static const int kSwap = s.type_id("Swap");
  // Function 1 sorts [v_l, v_h]; function 2 partitions around A[v_h].
  static const Instruction call_top = make_ins(kCall, {0, kL, kH, kL, kH, kH});
  static const Instruction call_partition = make_ins(kCall, {1, kL, kH, kL, kH, kI});
  static const Instruction call_left = make_ins(kCall, {0, kL, kH, kL, kI, kI});
  static const Instruction call_right = make_ins(kCall, {0, kL, kH, kJ, kH, kH});

  InterfaceView f{obs};
  int function_id = 0;
  for (int k = 1; k <= s.num_functions(); ++k)
    if (obs[kInterfaceViewWidth + k] > 0.5) function_id = k;
  std::optional<Instruction> prev = decode_prev_action(
      s, obs.segment(kInterfaceViewWidth + s.num_functions() + 1, s.encode_width()));

  if (function_id == 0) return call_top;
  if (function_id == 1) {  // sort the range
    if (f.var_lt(kL, kH)) {
      if (!prev) return call_partition;
      if (*prev == call_partition) return make_ins(kAssign, {kJ, kI});
      if (*prev == make_ins(kAssign, {kJ, kI})) return make_ins(kMove, {kI, 0});
      if (*prev == make_ins(kMove, {kI, 0})) {
        if (f.var_gt(kI, kL)) return call_left;
        return make_ins(kMove, {kJ, 1});
      }
      if (*prev == call_left) return make_ins(kMove, {kJ, 1});
      if (*prev == make_ins(kMove, {kJ, 1}) && f.var_lt(kJ, kH)) return call_right;
      return make_ins(kReturn, {kH});
    }
    return make_ins(kReturn, {kH});
  }
  // partition
  if (!prev) return make_ins(kAssign, {kI, kL});
  if (*prev == make_ins(kAssign, {kI, kL})) return make_ins(kAssign, {kJ, kL});
  if (f.var_lt(kJ, kH)) {
    if (*prev == make_ins(kSwap, {kI, kJ})) return make_ins(kMove, {kI, 1});
    bool scanning = *prev == make_ins(kAssign, {kJ, kL}) || *prev == make_ins(kMove, {kJ, 1});
    if (scanning && f.val_lt(kJ, kH)) {
      if (!f.var_eq(kI, kJ)) return make_ins(kSwap, {kI, kJ});
      return make_ins(kMove, {kI, 1});
    }
    return make_ins(kMove, {kJ, 1});
  }
  if (*prev == make_ins(kMove, {kJ, 1})) return make_ins(kSwap, {kI, kH});
  return make_ins(kReturn, {kI});
}

namespace {

struct QueryView {
  const Eigen::VectorXd& obs;
  bool q_below(int i) const { return obs[kInterfaceViewWidth + 3 * i] > 0.5; }     // q < A[v_i]
  bool q_at(int i) const { return obs[kInterfaceViewWidth + 3 * i + 1] > 0.5; }    // q = A[v_i]
  bool q_above(int i) const { return obs[kInterfaceViewWidth + 3 * i + 2] > 0.5; }  // q > A[v_i]
};

}  // namespace

Instruction binary_search_teacher(const Eigen::VectorXd& obs) {
  const auto& s = search_schema();
  static const int kMove = s.type_id("MoveVar");
  static const int kAssign = s.type_id("AssignVar");
  static const int kMid = s.type_id("AssignMid");
  static const int kFound = s.type_id("Found");
  static const int kNotFound = s.type_id("NotFound");
  // Aliases here: cursor = v_1, lower bound = v_2, upper bound = v_3.
  constexpr int ci = 0, cl = 1, ch = 2;
  InterfaceView f{obs};
  QueryView qv{obs};
  std::optional<Instruction> prev =
      decode_prev_action(s, obs.segment(kInterfaceViewWidth + 12, s.encode_width()));

  if (f.var_gt(cl, ch) || (f.var_eq(ci, cl) && qv.q_below(ci)) ||
      (f.var_eq(ci, ch) && qv.q_above(ci)))
    return make_ins(kNotFound);
  if (qv.q_at(ci)) return make_ins(kFound, {ci});
  if (!prev || *prev == make_ins(kAssign, {cl, ci}) || *prev == make_ins(kAssign, {ch, ci}))
    return make_ins(kMid, {ci, cl, ch});
  if (*prev == make_ins(kMid, {ci, cl, ch})) {
    if (qv.q_above(ci)) return make_ins(kMove, {ci, 1});
    return make_ins(kMove, {ci, 0});
  }
  if (*prev == make_ins(kMove, {ci, 1})) return make_ins(kAssign, {cl, ci});
  if (*prev == make_ins(kMove, {ci, 0})) return make_ins(kAssign, {ch, ci});
  return make_ins(kNotFound);  // unreachable under this agent's own dynamics
}

Instruction linear_search_teacher(const Eigen::VectorXd& obs) {
  const auto& s = search_schema();
  static const int kMove = s.type_id("MoveVar");
  static const int kFound = s.type_id("Found");
  static const int kNotFound = s.type_id("NotFound");
  InterfaceView f{obs};
  QueryView qv{obs};
  if (qv.q_at(0)) return make_ins(kFound, {0});
  if (qv.q_below(0) || f.at_high(0)) return make_ins(kNotFound);
  return make_ins(kMove, {0, 1});
}

Instruction dfs_knapsack_teacher(const Eigen::VectorXd& obs) {
  const auto& s = knapsack_schema();
  static const int kPut = s.type_id("Put");
  static const int kPop = s.type_id("Pop");
  static const int kMove = s.type_id("MoveVar");
  static const int kCall = s.type_id("Knapsack");
  static const int kReturn = s.type_id("Return");
  std::optional<Instruction> prev = decode_prev_action(s, obs.segment(7, s.encode_width()));

  if (!prev) {
    bool exhausted = obs[1] >= 0.0;      // item cursor at or past the end
    bool overweight = obs[3] < 0.5;      // current weight exceeds capacity
    if (exhausted || overweight) return make_ins(kReturn);
    return make_ins(kPut);
  }
  if (*prev == make_ins(kPut)) return make_ins(kMove, {1});
  if (*prev == make_ins(kMove, {1})) return make_ins(kCall);
  if (*prev == make_ins(kCall)) return make_ins(kMove, {0});
  if (*prev == make_ins(kMove, {0})) {
    if (obs[2] > 0.5) return make_ins(kPop);
    return make_ins(kReturn);
  }
  if (*prev == make_ins(kPop)) return make_ins(kMove, {1});
  return make_ins(kReturn);
}

Instruction selection_teacher(const SortGraphObservation& graph) {
  int n = graph.num_nodes;
  if (n <= 0) throw std::invalid_argument("empty graph");
  // rank of a node = how many values it exceeds; distinct values assumed.
  std::vector<int> rank(static_cast<std::size_t>(n), 0);
  for (long e = 0; e < static_cast<long>(graph.edges.size()); ++e)
    if (graph.edge_features(e, 1) > 0.5) ++rank[static_cast<std::size_t>(graph.edges[static_cast<std::size_t>(e)].first)];
  std::vector<int> node_at_rank(static_cast<std::size_t>(n), -1);
  for (int u = 0; u < n; ++u) node_at_rank[static_cast<std::size_t>(rank[static_cast<std::size_t>(u)])] = u;
  for (int r = 0; r < n; ++r) {
    int u = node_at_rank[static_cast<std::size_t>(r)];
    if (u != r) return Instruction{0, {u, r}};  // move the value into its slot
  }
  throw std::invalid_argument("selection teacher queried on a sorted instance");
}

}  // namespace npi
