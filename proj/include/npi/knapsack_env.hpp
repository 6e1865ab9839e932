#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "npi/episode.hpp"
#include "npi/rng.hpp"
#include "npi/schema.hpp"

namespace npi {

// Budgeted 0/1 knapsack search machine. The call stack records only the
// calling instruction per level: the item cursor and the solution set
// deliberately persist across Return so the depth-first teacher can undo its
// own choices.
struct KnapsackState {
  std::vector<double> w;
  std::vector<double> value;
  double capacity = 0.0;
  int item = 0;  // cursor, clamped to [-1, n]
  std::vector<char> in_sol;
  double cur_w = 0.0;
  double cur_v = 0.0;
  double best_v = 0.0;
  std::vector<Instruction> call_stack;
  std::optional<Instruction> prev;

  int n() const { return static_cast<int>(w.size()); }
  int depth() const { return static_cast<int>(call_stack.size()); }
};

const InstructionSchema& knapsack_schema();
inline constexpr int kKnapsackViewWidth = 14;

// Weights and values iid uniform on [0,1); capacity is half the total weight.
KnapsackState new_knapsack_instance(int n, Rng& rng);
KnapsackState knapsack_state_from(std::vector<double> w, std::vector<double> value,
                                  double capacity);

Eigen::VectorXd observe_knapsack(const KnapsackState& st);

// Exhaustive 2^n optimum; the independent oracle for tests and benchmarks.
double knapsack_brute_force_optimum(const std::vector<double>& w,
                                    const std::vector<double>& value, double capacity);

class KnapsackEnv {
 public:
  using Obs = Eigen::VectorXd;

  explicit KnapsackEnv(KnapsackState st);

  const InstructionSchema& schema() const { return knapsack_schema(); }
  bool solved() const { return false; }  // episodes end by Return at depth 0 or budget
  bool aborted() const { return false; }
  Obs observe() const { return observe_knapsack(st_); }
  // Reward is the increment of the best feasible value found so far.
  StepResult apply(const Instruction& ins);
  const KnapsackState& state() const { return st_; }

 private:
  KnapsackState st_;
};

// Instance line format: n W w_0 ... w_{n-1} v_0 ... v_{n-1} (full precision).
std::string knapsack_instance_line(const KnapsackState& st);
KnapsackState parse_knapsack_instance_line(const std::string& line);

}  // namespace npi
