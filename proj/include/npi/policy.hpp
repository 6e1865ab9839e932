#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "npi/mlp.hpp"
#include "npi/rng.hpp"
#include "npi/schema.hpp"

namespace npi {

// Factorized policy over a fixed-width observation: a shared trunk feeds a
// type head and one head per argument slot per type. Argument heads are
// autoregressive: the encodings of the already-chosen arguments are appended
// to the head input. Head outputs are zero-initialized, so the initial
// policy is exactly uniform.
class MlpPolicy {
 public:
  MlpPolicy(const InstructionSchema& schema, int obs_dim, std::uint64_t init_seed,
            int hidden = 64);

  const InstructionSchema& schema() const { return *schema_; }
  int obs_dim() const { return obs_dim_; }

  double log_prob(const Eigen::VectorXd& obs, const Instruction& a) const;
  // Accumulates coef * d log p(a|obs) / d theta into the gradients.
  double log_prob_backward(const Eigen::VectorXd& obs, const Instruction& a, double coef);
  // Entropy along the sampled action path: H(type) plus, for a's type, the
  // entropy of each argument head conditioned on a's earlier arguments.
  // Accumulates coef * dH / d theta when coef != 0.
  double path_entropy_backward(const Eigen::VectorXd& obs, const Instruction& a, double coef);

  Instruction sample(const Eigen::VectorXd& obs, Rng& rng) const;
  Instruction greedy(const Eigen::VectorXd& obs) const;

  ParamSet& params() { return ps_; }
  const ParamSet& params() const { return ps_; }

 private:
  // Input to the head for argument slot `slot` of type `t`: trunk output
  // followed by the encodings of args[0..slot).
  Eigen::VectorXd head_input(const Eigen::VectorXd& rep, int t, int slot,
                             const std::vector<int>& args) const;
  template <class PickArg>
  Instruction decode(const Eigen::VectorXd& obs, PickArg&& pick_type_and_args) const;

  const InstructionSchema* schema_;
  int obs_dim_;
  int hidden_;
  ParamSet ps_;
  Mlp trunk_;
  Mlp type_head_;
  std::vector<std::vector<Mlp>> arg_heads_;  // [type][slot]
};

// Data-independent learned scalar value estimate.
class ScalarBaseline {
 public:
  ScalarBaseline() { idx_ = ps_.add("baseline.v", 1, 1); }
  double value() const { return ps_.at(idx_).value(0, 0); }
  void accumulate_grad(double g) { ps_.at(idx_).grad(0, 0) += g; }
  ParamSet& params() { return ps_; }
  const ParamSet& params() const { return ps_; }

 private:
  ParamSet ps_;
  int idx_;
};

}  // namespace npi
