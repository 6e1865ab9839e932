#include "npi/gnn.hpp"

#include <cmath>
#include <stdexcept>

namespace npi {

namespace {

Eigen::VectorXd log_softmax(const Eigen::VectorXd& z) {
  double m = z.maxCoeff();
  double lse = std::log((z.array() - m).exp().sum()) + m;
  return z.array() - lse;
}

}  // namespace

GnnPolicy::GnnPolicy(std::uint64_t init_seed) {
  Rng rng(init_seed);
  embed_ = Mlp::make(ps_, "embed", {2, 32, kStateDim}, rng);
  for (int t = 0; t < kRounds; ++t) {
    edge_.push_back(Mlp::make(ps_, "edge" + std::to_string(t),
                              {2 * kStateDim + 2, 32, 32}, rng));
    node_.push_back(Mlp::make(ps_, "node" + std::to_string(t),
                              {kStateDim + 32, 32, kStateDim}, rng));
  }
  pointer_ = Mlp::make(ps_, "pointer", {kStateDim, 16, 1}, rng, /*zero_final=*/true);
}

Eigen::VectorXd GnnPolicy::run_pass(const SortGraphObservation& g, int selected,
                                    PassCache* cache) const {
  int n = g.num_nodes;
  long e_count = static_cast<long>(g.edges.size());

  Eigen::MatrixXd x0 = Eigen::MatrixXd::Zero(2, n);
  x0.row(0).setOnes();
  if (selected >= 0) x0(1, selected) = 1.0;

  if (cache) {
    cache->edge.resize(kRounds);
    cache->node.resize(kRounds);
  }
  Eigen::MatrixXd h = embed_.forward_batch(ps_, x0, cache ? &cache->embed : nullptr);

  for (int t = 0; t < kRounds; ++t) {
    Eigen::MatrixXd edge_in(2 * kStateDim + 2, e_count);
    for (long e = 0; e < e_count; ++e) {
      auto [u, v] = g.edges[static_cast<std::size_t>(e)];
      edge_in.col(e).head(kStateDim) = h.col(v);  // destination state first
      edge_in.col(e).segment(kStateDim, kStateDim) = h.col(u);
      edge_in.col(e).tail(2) = g.edge_features.row(e).transpose();
    }
    Eigen::MatrixXd messages =
        edge_[static_cast<std::size_t>(t)].forward_batch(ps_, edge_in,
                                                         cache ? &cache->edge[static_cast<std::size_t>(t)] : nullptr);
    Eigen::MatrixXd mean_in = Eigen::MatrixXd::Zero(32, n);
    Eigen::VectorXd degree = Eigen::VectorXd::Zero(n);
    for (long e = 0; e < e_count; ++e) {
      mean_in.col(g.edges[static_cast<std::size_t>(e)].second) += messages.col(e);
      degree[g.edges[static_cast<std::size_t>(e)].second] += 1.0;
    }
    for (int v = 0; v < n; ++v)
      if (degree[v] > 0) mean_in.col(v) /= degree[v];

    Eigen::MatrixXd node_in(kStateDim + 32, n);
    node_in.topRows(kStateDim) = h;
    node_in.bottomRows(32) = mean_in;
    h = node_[static_cast<std::size_t>(t)].forward_batch(
        ps_, node_in, cache ? &cache->node[static_cast<std::size_t>(t)] : nullptr);
  }
  Eigen::MatrixXd logits =
      pointer_.forward_batch(ps_, h, cache ? &cache->pointer : nullptr);
  return logits.row(0).transpose();
}

void GnnPolicy::backward_pass(const SortGraphObservation& g, const PassCache& cache,
                              const Eigen::VectorXd& dlogits) {
  int n = g.num_nodes;
  long e_count = static_cast<long>(g.edges.size());
  Eigen::VectorXd degree = Eigen::VectorXd::Zero(n);
  for (const auto& [u, v] : g.edges) degree[v] += 1.0;

  Eigen::MatrixXd dh = pointer_.backward_batch(ps_, cache.pointer, dlogits.transpose());
  for (int t = kRounds - 1; t >= 0; --t) {
    Eigen::MatrixXd dnode_in = node_[static_cast<std::size_t>(t)].backward_batch(
        ps_, cache.node[static_cast<std::size_t>(t)], dh);
    Eigen::MatrixXd dh_prev = dnode_in.topRows(kStateDim);
    Eigen::MatrixXd dmean = dnode_in.bottomRows(32);

    Eigen::MatrixXd dmessages(32, e_count);
    for (long e = 0; e < e_count; ++e) {
      int v = g.edges[static_cast<std::size_t>(e)].second;
      dmessages.col(e) = dmean.col(v) / degree[v];
    }
    Eigen::MatrixXd dedge_in = edge_[static_cast<std::size_t>(t)].backward_batch(
        ps_, cache.edge[static_cast<std::size_t>(t)], dmessages);
    for (long e = 0; e < e_count; ++e) {
      auto [u, v] = g.edges[static_cast<std::size_t>(e)];
      dh_prev.col(v) += dedge_in.col(e).head(kStateDim);
      dh_prev.col(u) += dedge_in.col(e).segment(kStateDim, kStateDim);
    }
    dh = std::move(dh_prev);
  }
  embed_.backward_batch(ps_, cache.embed, dh);
}

Eigen::VectorXd GnnPolicy::pointer_logits(const SortGraphObservation& g, int selected) const {
  return run_pass(g, selected, nullptr);
}

double GnnPolicy::log_prob(const SortGraphObservation& g, const Instruction& a) const {
  int i = a.args.at(0), j = a.args.at(1);
  double lp = log_softmax(run_pass(g, -1, nullptr))[i];
  lp += log_softmax(run_pass(g, i, nullptr))[j];
  return lp;
}

double GnnPolicy::log_prob_backward(const SortGraphObservation& g, const Instruction& a,
                                    double coef) {
  int i = a.args.at(0), j = a.args.at(1);
  double lp = 0.0;
  {
    PassCache cache;
    Eigen::VectorXd logp = log_softmax(run_pass(g, -1, &cache));
    lp += logp[i];
    Eigen::VectorXd dlogits = (-logp.array().exp()).matrix() * coef;
    dlogits[i] += coef;
    backward_pass(g, cache, dlogits);
  }
  {
    PassCache cache;
    Eigen::VectorXd logp = log_softmax(run_pass(g, i, &cache));
    lp += logp[j];
    Eigen::VectorXd dlogits = (-logp.array().exp()).matrix() * coef;
    dlogits[j] += coef;
    backward_pass(g, cache, dlogits);
  }
  return lp;
}

Instruction GnnPolicy::sample(const SortGraphObservation& g, Rng& rng) const {
  auto pick = [&rng](const Eigen::VectorXd& logp) {
    double u = rng.uniform_double();
    double acc = 0.0;
    for (long k = 0; k < logp.size(); ++k) {
      acc += std::exp(logp[k]);
      if (u < acc) return static_cast<int>(k);
    }
    return static_cast<int>(logp.size()) - 1;
  };
  int i = pick(log_softmax(run_pass(g, -1, nullptr)));
  int j = pick(log_softmax(run_pass(g, i, nullptr)));
  return Instruction{0, {i, j}};
}

Instruction GnnPolicy::greedy(const SortGraphObservation& g) const {
  long i, j;
  run_pass(g, -1, nullptr).maxCoeff(&i);
  run_pass(g, static_cast<int>(i), nullptr).maxCoeff(&j);
  return Instruction{0, {static_cast<int>(i), static_cast<int>(j)}};
}

}  // namespace npi
