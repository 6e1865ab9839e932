#include "npi/policy.hpp"

#include <cmath>
#include <stdexcept>

namespace npi {

namespace {

Eigen::VectorXd log_softmax(const Eigen::VectorXd& z) {
  double m = z.maxCoeff();
  double lse = std::log((z.array() - m).exp().sum()) + m;
  return z.array() - lse;
}

// dH/dz for a softmax head.
Eigen::VectorXd entropy_grad_softmax(const Eigen::VectorXd& logp, double entropy) {
  Eigen::VectorXd p = logp.array().exp();
  return (-p.array() * (logp.array() + entropy)).matrix();
}

int sample_from_logp(const Eigen::VectorXd& logp, Rng& rng) {
  double u = rng.uniform_double();
  double acc = 0.0;
  for (long k = 0; k < logp.size(); ++k) {
    acc += std::exp(logp[k]);
    if (u < acc) return static_cast<int>(k);
  }
  return static_cast<int>(logp.size()) - 1;
}

int argmax(const Eigen::VectorXd& z) {
  long best;
  z.maxCoeff(&best);
  return static_cast<int>(best);
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Encoded width and filler for one argument value (one-hot / single bit).
int arg_enc_width(const ArgSpec& spec) { return spec.encoded_width(); }

void write_arg_encoding(const ArgSpec& spec, int value, Eigen::Ref<Eigen::VectorXd> out) {
  out.setZero();
  if (spec.kind == ArgKind::Boolean)
    out[0] = value ? 1.0 : 0.0;
  else
    out[value] = 1.0;
}

}  // namespace

MlpPolicy::MlpPolicy(const InstructionSchema& schema, int obs_dim, std::uint64_t init_seed,
                     int hidden)
    : schema_(&schema), obs_dim_(obs_dim), hidden_(hidden) {
  Rng rng(init_seed);
  trunk_ = Mlp::make(ps_, "trunk", {obs_dim, hidden, hidden, hidden}, rng);
  type_head_ = Mlp::make(ps_, "type", {hidden, hidden, schema.num_types()}, rng,
                         /*zero_final=*/true);
  arg_heads_.resize(static_cast<std::size_t>(schema.num_types()));
  for (int t = 0; t < schema.num_types(); ++t) {
    const auto& ts = schema.type(t);
    int prefix = 0;
    for (int m = 0; m < ts.arity(); ++m) {
      const auto& spec = ts.args[static_cast<std::size_t>(m)];
      int out = spec.kind == ArgKind::Boolean ? 1 : spec.cardinality;
      if (spec.kind == ArgKind::Pointer)
        throw std::invalid_argument("pointer arguments need the graph policy");
      arg_heads_[static_cast<std::size_t>(t)].push_back(
          Mlp::make(ps_, "arg." + ts.name + "." + std::to_string(m),
                    {hidden + prefix, hidden, out}, rng, /*zero_final=*/true));
      prefix += arg_enc_width(spec);
    }
  }
}

Eigen::VectorXd MlpPolicy::head_input(const Eigen::VectorXd& rep, int t, int slot,
                                      const std::vector<int>& args) const {
  const auto& ts = schema_->type(t);
  int prefix = 0;
  for (int m = 0; m < slot; ++m) prefix += arg_enc_width(ts.args[static_cast<std::size_t>(m)]);
  Eigen::VectorXd x(hidden_ + prefix);
  x.head(hidden_) = rep;
  int at = hidden_;
  for (int m = 0; m < slot; ++m) {
    const auto& spec = ts.args[static_cast<std::size_t>(m)];
    write_arg_encoding(spec, args[static_cast<std::size_t>(m)], x.segment(at, arg_enc_width(spec)));
    at += arg_enc_width(spec);
  }
  return x;
}

double MlpPolicy::log_prob(const Eigen::VectorXd& obs, const Instruction& a) const {
  schema_->validate(a);
  Eigen::VectorXd rep = trunk_.forward(ps_, obs);
  double lp = log_softmax(type_head_.forward(ps_, rep))[a.type];
  const auto& ts = schema_->type(a.type);
  for (int m = 0; m < ts.arity(); ++m) {
    const auto& head = arg_heads_[static_cast<std::size_t>(a.type)][static_cast<std::size_t>(m)];
    Eigen::VectorXd z = head.forward(ps_, head_input(rep, a.type, m, a.args));
    if (ts.args[static_cast<std::size_t>(m)].kind == ArgKind::Boolean) {
      double p = sigmoid(z[0]);
      lp += std::log(a.args[static_cast<std::size_t>(m)] ? p : 1.0 - p);
    } else {
      lp += log_softmax(z)[a.args[static_cast<std::size_t>(m)]];
    }
  }
  return lp;
}

double MlpPolicy::log_prob_backward(const Eigen::VectorXd& obs, const Instruction& a,
                                    double coef) {
  schema_->validate(a);
  Mlp::Cache trunk_cache;
  Eigen::VectorXd rep = trunk_.forward(ps_, obs, &trunk_cache);
  Eigen::VectorXd drep = Eigen::VectorXd::Zero(hidden_);

  Mlp::Cache type_cache;
  Eigen::VectorXd logp_type = log_softmax(type_head_.forward(ps_, rep, &type_cache));
  double lp = logp_type[a.type];
  {
    Eigen::VectorXd dz = (-logp_type.array().exp()).matrix() * coef;
    dz[a.type] += coef;
    drep += type_head_.backward(ps_, type_cache, dz);
  }

  const auto& ts = schema_->type(a.type);
  for (int m = 0; m < ts.arity(); ++m) {
    const auto& head = arg_heads_[static_cast<std::size_t>(a.type)][static_cast<std::size_t>(m)];
    Eigen::VectorXd x = head_input(rep, a.type, m, a.args);
    Mlp::Cache cache;
    Eigen::VectorXd z = head.forward(ps_, x, &cache);
    int val = a.args[static_cast<std::size_t>(m)];
    Eigen::VectorXd dz;
    if (ts.args[static_cast<std::size_t>(m)].kind == ArgKind::Boolean) {
      double p = sigmoid(z[0]);
      lp += std::log(val ? p : 1.0 - p);
      dz = Eigen::VectorXd::Constant(1, coef * (static_cast<double>(val) - p));
    } else {
      Eigen::VectorXd logp = log_softmax(z);
      lp += logp[val];
      dz = (-logp.array().exp()).matrix() * coef;
      dz[val] += coef;
    }
    Eigen::VectorXd dx = head.backward(ps_, cache, dz);
    drep += dx.head(hidden_);  // conditioning encodings are constants
  }
  trunk_.backward(ps_, trunk_cache, drep);
  return lp;
}

double MlpPolicy::path_entropy_backward(const Eigen::VectorXd& obs, const Instruction& a,
                                        double coef) {
  Mlp::Cache trunk_cache;
  Eigen::VectorXd rep = trunk_.forward(ps_, obs, &trunk_cache);
  Eigen::VectorXd drep = Eigen::VectorXd::Zero(hidden_);
  double total = 0.0;

  Mlp::Cache type_cache;
  Eigen::VectorXd logp_type = log_softmax(type_head_.forward(ps_, rep, &type_cache));
  double h_type = -(logp_type.array().exp() * logp_type.array()).sum();
  total += h_type;
  if (coef != 0.0)
    drep += type_head_.backward(ps_, type_cache, entropy_grad_softmax(logp_type, h_type) * coef);

  const auto& ts = schema_->type(a.type);
  for (int m = 0; m < ts.arity(); ++m) {
    const auto& head = arg_heads_[static_cast<std::size_t>(a.type)][static_cast<std::size_t>(m)];
    Eigen::VectorXd x = head_input(rep, a.type, m, a.args);
    Mlp::Cache cache;
    Eigen::VectorXd z = head.forward(ps_, x, &cache);
    Eigen::VectorXd dz;
    if (ts.args[static_cast<std::size_t>(m)].kind == ArgKind::Boolean) {
      double p = sigmoid(z[0]);
      double h = p <= 0.0 || p >= 1.0 ? 0.0 : -p * std::log(p) - (1 - p) * std::log(1 - p);
      total += h;
      dz = Eigen::VectorXd::Constant(1, p * (1 - p) * std::log((1 - p) / std::max(p, 1e-300)));
    } else {
      Eigen::VectorXd logp = log_softmax(z);
      double h = -(logp.array().exp() * logp.array()).sum();
      total += h;
      dz = entropy_grad_softmax(logp, h);
    }
    if (coef != 0.0) drep += head.backward(ps_, cache, dz * coef).head(hidden_);
  }
  if (coef != 0.0) trunk_.backward(ps_, trunk_cache, drep);
  return total;
}

template <class PickArg>
Instruction MlpPolicy::decode(const Eigen::VectorXd& obs, PickArg&& pick) const {
  Eigen::VectorXd rep = trunk_.forward(ps_, obs);
  Instruction a;
  a.type = pick(log_softmax(type_head_.forward(ps_, rep)));
  const auto& ts = schema_->type(a.type);
  for (int m = 0; m < ts.arity(); ++m) {
    const auto& head = arg_heads_[static_cast<std::size_t>(a.type)][static_cast<std::size_t>(m)];
    Eigen::VectorXd z = head.forward(ps_, head_input(rep, a.type, m, a.args));
    if (ts.args[static_cast<std::size_t>(m)].kind == ArgKind::Boolean) {
      Eigen::VectorXd two(2);
      double p = sigmoid(z[0]);
      two << std::log(std::max(1.0 - p, 1e-300)), std::log(std::max(p, 1e-300));
      a.args.push_back(pick(two));
    } else {
      a.args.push_back(pick(log_softmax(z)));
    }
  }
  return a;
}

Instruction MlpPolicy::sample(const Eigen::VectorXd& obs, Rng& rng) const {
  return decode(obs, [&rng](const Eigen::VectorXd& logp) { return sample_from_logp(logp, rng); });
}

Instruction MlpPolicy::greedy(const Eigen::VectorXd& obs) const {
  return decode(obs, [](const Eigen::VectorXd& logp) { return argmax(logp); });
}

}  // namespace npi
