#pragma once

#include <Eigen/Core>
#include <array>
#include <vector>

#include "npi/callstack.hpp"
#include "npi/episode.hpp"
#include "npi/rng.hpp"
#include "npi/schema.hpp"

namespace npi {

inline constexpr int kNumSortVars = 4;

enum class SortInterface { FullView, BubbleInsertion, QuickSort };
enum class RewardMode { Sparse, Shaping };

// Array machine shared by the three sorting interfaces. ordered counts the
// adjacent in-order pairs in [low, high] and is maintained incrementally.
struct SortState {
  std::vector<int> a;
  int low = 0;
  int high = 0;
  std::vector<int> v;  // index variables, clamped to [low, high]
  ControlState ctl;
  int ordered = 0;

  int size() const { return high - low + 1; }
  bool solved() const { return ordered == high - low; }
};

// Number of adjacent in-order pairs A[i] <= A[i+1] for i in [low, high-1].
int orderedness(std::span<const int> a, int low, int high);

// Incremental-reward term: h(next) - h(prev) - c.
inline double shaping_reward(int prev_h, int next_h, double c) {
  return static_cast<double>(next_h - prev_h) - c;
}

// Uniform random permutation of 0..n-1 over the full range.
SortState new_sort_instance(int n, Rng& rng);
SortState sort_state_from_array(std::vector<int> a, int low, int high);

const InstructionSchema& bubble_insertion_schema();
const InstructionSchema& quicksort_schema();
// Full-view schema has a single Swap type with two pointer arguments over n nodes.
InstructionSchema full_view_schema(int n);

// 68-dim interface view: 6 indicators per variable pair, then per variable a
// boundary-aware 4-dim comparison with the left and the right neighbor.
Eigen::VectorXd observe_bubble_insertion(const SortState& st);
// 129-dim view: the 68 features, one-hot current function id (F+1 = 3 slots),
// and the fixed encoding of the previous action (58).
Eigen::VectorXd observe_quicksort(const SortState& st);

// Feature layout helpers shared with tests and observation-driven agents.
int pair_feature_base(int i, int j);          // 6-dim block for variable pair i<j
int left_neighbor_feature_base(int i);        // 4-dim block, A[v_i] vs A[v_i - 1]
int right_neighbor_feature_base(int i);       // 4-dim block, A[v_i] vs A[v_i + 1]
inline constexpr int kInterfaceViewWidth = 68;
inline constexpr int kQuickSortViewWidth = 129;

// Complete directed graph over the array positions; edge (u, v) carries
// [sign(u - v), sign(A[u] - A[v])]. Node features are a constant 1.
struct SortGraphObservation {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;  // (source, destination)
  Eigen::MatrixXd edge_features;           // |E| x 2
};

SortGraphObservation observe_full_view(const SortState& st);

// Applies one instruction from any sorting schema. Returns the change in the
// orderedness count (0 for non-data instructions). Function calls and
// returns go through the shared call-stack machinery; a Return with an empty
// stack is a no-op that still counts against the budget.
// Sets *overflow when a call exceeds the depth limit.
int apply_sort_instruction(SortState& st, const Instruction& ins,
                           const InstructionSchema& schema, int depth_limit,
                           bool* overflow = nullptr);

// Episode-facing wrapper used by the runner, teachers, and policies.
class SortEnv {
 public:
  using Obs = Eigen::VectorXd;

  SortEnv(SortState st, SortInterface iface, RewardMode mode = RewardMode::Sparse,
          double step_cost = 0.01);

  const InstructionSchema& schema() const { return *schema_; }
  bool solved() const { return st_.solved(); }
  bool aborted() const { return overflow_; }
  Obs observe() const;
  StepResult apply(const Instruction& ins);
  const SortState& state() const { return st_; }
  SortState& state() { return st_; }

 private:
  SortState st_;
  SortInterface iface_;
  RewardMode mode_;
  double step_cost_;
  const InstructionSchema* schema_;
  int depth_limit_;
  bool overflow_ = false;
};

class FullViewSortEnv {
 public:
  using Obs = SortGraphObservation;

  FullViewSortEnv(SortState st, RewardMode mode = RewardMode::Sparse, double step_cost = 0.01);

  const InstructionSchema& schema() const { return schema_; }
  bool solved() const { return st_.solved(); }
  bool aborted() const { return false; }
  Obs observe() const { return observe_full_view(st_); }
  StepResult apply(const Instruction& ins);
  const SortState& state() const { return st_; }

 private:
  SortState st_;
  RewardMode mode_;
  double step_cost_;
  InstructionSchema schema_;
};

// Instance line format: n low high a_0 ... a_{n-1}.
std::string sort_instance_line(const SortState& st);
SortState parse_sort_instance_line(const std::string& line);

}  // namespace npi
