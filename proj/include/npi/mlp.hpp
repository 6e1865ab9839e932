#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "npi/rng.hpp"

namespace npi {

struct Tensor {
  std::string name;
  Eigen::MatrixXd value;
  Eigen::MatrixXd grad;
};

// Named parameter container. Layers hold indices into it; the optimizer,
// checkpoints, and finite-difference checks iterate it.
class ParamSet {
 public:
  int add(const std::string& name, int rows, int cols) {
    tensors_.push_back({name, Eigen::MatrixXd::Zero(rows, cols), Eigen::MatrixXd::Zero(rows, cols)});
    return static_cast<int>(tensors_.size()) - 1;
  }
  Tensor& at(int i) { return tensors_[static_cast<std::size_t>(i)]; }
  const Tensor& at(int i) const { return tensors_[static_cast<std::size_t>(i)]; }
  std::vector<Tensor>& tensors() { return tensors_; }
  const std::vector<Tensor>& tensors() const { return tensors_; }
  int count() const { return static_cast<int>(tensors_.size()); }

  long long num_params() const {
    long long n = 0;
    for (const auto& t : tensors_) n += t.value.size();
    return n;
  }
  void zero_grads() {
    for (auto& t : tensors_) t.grad.setZero();
  }
  // Accumulate another set's gradients (same layout); used by parallel actors.
  void add_grads_from(const ParamSet& other) {
    for (int i = 0; i < count(); ++i) at(i).grad += other.at(i).grad;
  }
  void copy_values_from(const ParamSet& other) {
    for (int i = 0; i < count(); ++i) at(i).value = other.at(i).value;
  }

 private:
  std::vector<Tensor> tensors_;
};

struct Linear {
  int w = -1, b = -1;
  int in = 0, out = 0;

  static Linear make(ParamSet& ps, const std::string& prefix, int in, int out) {
    Linear l;
    l.in = in;
    l.out = out;
    l.w = ps.add(prefix + ".w", out, in);
    l.b = ps.add(prefix + ".b", out, 1);
    return l;
  }
  // Scaled-uniform fan-in init.
  void init_uniform(ParamSet& ps, Rng& rng) const {
    double bound = 1.0 / std::sqrt(static_cast<double>(in));
    auto& w_ = ps.at(w).value;
    for (long c = 0; c < w_.cols(); ++c)
      for (long r = 0; r < w_.rows(); ++r) w_(r, c) = (2.0 * rng.uniform_double() - 1.0) * bound;
    auto& b_ = ps.at(b).value;
    for (long r = 0; r < b_.rows(); ++r) b_(r, 0) = (2.0 * rng.uniform_double() - 1.0) * bound;
  }

  Eigen::VectorXd forward(const ParamSet& ps, const Eigen::VectorXd& x) const {
    return ps.at(w).value * x + ps.at(b).value.col(0);
  }
  // Accumulates dW, db; returns dx.
  Eigen::VectorXd backward(ParamSet& ps, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& dy) const {
    ps.at(w).grad.noalias() += dy * x.transpose();
    ps.at(b).grad.col(0) += dy;
    return ps.at(w).value.transpose() * dy;
  }
};

// Fully connected stack; rectifier on every layer except the last.
struct Mlp {
  std::vector<Linear> layers;

  static Mlp make(ParamSet& ps, const std::string& prefix, const std::vector<int>& dims,
                  Rng& rng, bool zero_final = false) {
    Mlp m;
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
      auto l = Linear::make(ps, prefix + ".l" + std::to_string(i), dims[i], dims[i + 1]);
      bool last = i + 2 == dims.size();
      if (!last || !zero_final) l.init_uniform(ps, rng);
      m.layers.push_back(l);
    }
    return m;
  }

  struct Cache {
    std::vector<Eigen::VectorXd> acts;  // acts[0] = input, acts[k] = output of layer k
  };

  Eigen::VectorXd forward(const ParamSet& ps, const Eigen::VectorXd& x,
                          Cache* cache = nullptr) const {
    Eigen::VectorXd h = x;
    if (cache) cache->acts = {h};
    for (std::size_t i = 0; i < layers.size(); ++i) {
      h = layers[i].forward(ps, h);
      if (i + 1 < layers.size()) h = h.cwiseMax(0.0);
      if (cache) cache->acts.push_back(h);
    }
    return h;
  }
  // dy w.r.t. the output; returns gradient w.r.t. the input.
  Eigen::VectorXd backward(ParamSet& ps, const Cache& cache, Eigen::VectorXd dy) const {
    for (int i = static_cast<int>(layers.size()) - 1; i >= 0; --i) {
      if (i + 1 < static_cast<int>(layers.size())) {
        // undo the rectifier of this layer's output
        const auto& post = cache.acts[static_cast<std::size_t>(i) + 1];
        dy = (post.array() > 0.0).select(dy, 0.0);
      }
      dy = layers[static_cast<std::size_t>(i)].backward(
          ps, cache.acts[static_cast<std::size_t>(i)], dy);
    }
    return dy;
  }

  int output_dim() const { return layers.back().out; }

  // Column-batched variants (each column one sample).
  struct BatchCache {
    std::vector<Eigen::MatrixXd> acts;
  };

  Eigen::MatrixXd forward_batch(const ParamSet& ps, const Eigen::MatrixXd& x,
                                BatchCache* cache = nullptr) const {
    Eigen::MatrixXd h = x;
    if (cache) cache->acts = {h};
    for (std::size_t i = 0; i < layers.size(); ++i) {
      const auto& l = layers[i];
      h = (ps.at(l.w).value * h).colwise() + ps.at(l.b).value.col(0);
      if (i + 1 < layers.size()) h = h.cwiseMax(0.0);
      if (cache) cache->acts.push_back(h);
    }
    return h;
  }
  Eigen::MatrixXd backward_batch(ParamSet& ps, const BatchCache& cache,
                                 Eigen::MatrixXd dy) const {
    for (int i = static_cast<int>(layers.size()) - 1; i >= 0; --i) {
      const auto& l = layers[static_cast<std::size_t>(i)];
      if (i + 1 < static_cast<int>(layers.size())) {
        const auto& post = cache.acts[static_cast<std::size_t>(i) + 1];
        dy = (post.array() > 0.0).select(dy, 0.0);
      }
      const auto& x = cache.acts[static_cast<std::size_t>(i)];
      ps.at(l.w).grad.noalias() += dy * x.transpose();
      ps.at(l.b).grad.col(0) += dy.rowwise().sum();
      dy = ps.at(l.w).value.transpose() * dy;
    }
    return dy;
  }
};

class Adam {
 public:
  explicit Adam(double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}

  void set_lr(double lr) { lr_ = lr; }
  double lr() const { return lr_; }

  void step(ParamSet& ps) {
    if (m_.empty()) {
      for (const auto& t : ps.tensors()) {
        m_.push_back(Eigen::MatrixXd::Zero(t.value.rows(), t.value.cols()));
        v_.push_back(Eigen::MatrixXd::Zero(t.value.rows(), t.value.cols()));
      }
    }
    ++t_;
    double bc1 = 1.0 - std::pow(beta1_, t_);
    double bc2 = 1.0 - std::pow(beta2_, t_);
    for (int i = 0; i < ps.count(); ++i) {
      auto& g = ps.at(i).grad;
      auto& m = m_[static_cast<std::size_t>(i)];
      auto& v = v_[static_cast<std::size_t>(i)];
      m = beta1_ * m + (1.0 - beta1_) * g;
      v = beta2_ * v + (1.0 - beta2_) * g.cwiseProduct(g);
      ps.at(i).value.array() -=
          lr_ * (m.array() / bc1) / ((v.array() / bc2).sqrt() + eps_);
    }
  }

 private:
  double lr_, beta1_, beta2_, eps_;
  int t_ = 0;
  std::vector<Eigen::MatrixXd> m_, v_;
};

}  // namespace npi
