#pragma once

#include <Eigen/Core>

#include "npi/mlp.hpp"
#include "npi/rng.hpp"
#include "npi/schema.hpp"
#include "npi/sort_env.hpp"

namespace npi {

// Message-passing network with pointer outputs for the full-view sorting
// interface. Five rounds; per round, each directed edge (u, v) produces a
// message from [h_v, h_u, x_uv] and each node updates from [h_v, mean of
// incoming messages]. A per-node head turns final states into pointer
// logits. The second swap index is predicted by re-running the network with
// one extra input bit marking the node chosen first.
class GnnPolicy {
 public:
  explicit GnnPolicy(std::uint64_t init_seed);

  static constexpr int kRounds = 5;
  static constexpr int kStateDim = 16;

  // selected = node chosen as the first index, or -1 for the first pass.
  Eigen::VectorXd pointer_logits(const SortGraphObservation& g, int selected) const;

  double log_prob(const SortGraphObservation& g, const Instruction& a) const;
  double log_prob_backward(const SortGraphObservation& g, const Instruction& a, double coef);

  Instruction sample(const SortGraphObservation& g, Rng& rng) const;
  Instruction greedy(const SortGraphObservation& g) const;

  ParamSet& params() { return ps_; }
  const ParamSet& params() const { return ps_; }

 private:
  struct PassCache {
    Mlp::BatchCache embed;
    std::vector<Mlp::BatchCache> edge;   // per round
    std::vector<Mlp::BatchCache> node;   // per round
    Mlp::BatchCache pointer;
  };

  Eigen::VectorXd run_pass(const SortGraphObservation& g, int selected,
                           PassCache* cache) const;
  void backward_pass(const SortGraphObservation& g, const PassCache& cache,
                     const Eigen::VectorXd& dlogits);

  ParamSet ps_;
  Mlp embed_;
  std::vector<Mlp> edge_;  // one per round
  std::vector<Mlp> node_;
  Mlp pointer_;
};

}  // namespace npi
