#include "tracklets/marl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tracklets::marl {

using nets::Matrix;

void TrainerConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (!(gamma > 0.0 && gamma <= 1.0)) fail("trainer.gamma must lie in (0, 1]");
  if (n_step < 1) fail("trainer.n_step must be >= 1");
  if (!(clip_epsilon > 0.0 && clip_epsilon < 1.0)) fail("trainer.clip_epsilon must lie in (0, 1)");
  if (!(entropy_coef >= 0.0)) fail("trainer.entropy_coef must be >= 0");
  if (!(value_coef >= 0.0)) fail("trainer.value_coef must be >= 0");
  if (epochs < 1) fail("trainer.epochs must be >= 1");
  if (minibatch_size < 1) fail("trainer.minibatch_size must be >= 1");
  if (!(learning_rate > 0.0)) fail("trainer.learning_rate must be > 0");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0)) fail("trainer.adam_beta1 must lie in [0, 1)");
  if (!(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) fail("trainer.adam_beta2 must lie in [0, 1)");
  if (!(adam_eps > 0.0)) fail("trainer.adam_eps must be > 0");
  if (!(max_grad_norm >= 0.0)) fail("trainer.max_grad_norm must be >= 0");
  if (!(reward_scale > 0.0)) fail("trainer.reward_scale must be > 0");
  if (workers < 1) fail("trainer.workers must be >= 1");
  if (total_episodes < 0) fail("trainer.total_episodes must be >= 0");
  if (episodes_per_batch < 1) fail("trainer.episodes_per_batch must be >= 1");
  if (eval_every < 1) fail("trainer.eval_every must be >= 1");
  if (eval_episodes < 1) fail("trainer.eval_episodes must be >= 1");
  if (final_metric_rounds < 1) fail("trainer.final_metric_rounds must be >= 1");
}

double n_step_return(std::span<const double> rewards, std::span<const char> dones, double bootstrap,
                     double gamma) {
  if (rewards.empty()) throw std::invalid_argument("n_step_return: empty reward window");
  if (dones.size() != rewards.size()) {
    throw std::invalid_argument("n_step_return: rewards and done flags differ in length");
  }
  double ret = 0.0;
  double discount = 1.0;
  for (std::size_t k = 0; k < rewards.size(); ++k) {
    ret += discount * rewards[k];
    discount *= gamma;
    if (dones[k]) return ret;
  }
  return ret + discount * bootstrap;
}

std::vector<double> episode_returns(std::span<const double> rewards, std::span<const double> values,
                                    int n, double gamma) {
  if (values.size() != rewards.size()) {
    throw std::invalid_argument("episode_returns: rewards and values differ in length");
  }
  const std::size_t len = rewards.size();
  std::vector<double> out(len);
  std::vector<char> dones;
  for (std::size_t t = 0; t < len; ++t) {
    const std::size_t end = std::min(len, t + static_cast<std::size_t>(n));
    dones.assign(end - t, 0);
    double bootstrap = 0.0;
    if (end == len) {
      dones.back() = 1;
    } else {
      bootstrap = values[end];
    }
    out[t] = n_step_return(rewards.subspan(t, end - t), dones, bootstrap, gamma);
  }
  return out;
}

void standardize(std::span<double> xs) {
  if (xs.empty()) return;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(xs.size());
  const double sd = std::sqrt(var);
  for (double& x : xs) x = sd > 1e-12 ? (x - mean) / sd : x - mean;
}

SurrogateTerm clipped_surrogate(double log_prob, double old_log_prob, double adv, double epsilon) {
  SurrogateTerm s;
  s.ratio = std::exp(log_prob - old_log_prob);
  const double unclipped = s.ratio * adv;
  const double clipped = std::clamp(s.ratio, 1.0 - epsilon, 1.0 + epsilon) * adv;
  if (unclipped <= clipped) {
    s.value = unclipped;
    s.d_log_prob = unclipped;  // d(ratio)/d(log pi) = ratio
  } else {
    // The clipped branch is the minimum only when the ratio lies outside the
    // interval, where it is constant.
    s.value = clipped;
    s.d_log_prob = 0.0;
  }
  return s;
}

double value_loss(std::span<const double> returns, std::span<const double> values) {
  if (returns.size() != values.size() || returns.empty()) {
    throw std::invalid_argument("value_loss: need equal, nonzero lengths");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < returns.size(); ++i) {
    const double e = returns[i] - values[i];
    total += e * e;
  }
  return total / static_cast<double>(returns.size());
}

LossReport ppo_objective(std::span<const Sample* const> batch, const Matrix<float>& adjacency,
                         const nets::NetParams<float>& params, const TrainerConfig& cfg,
                         nets::NetParams<float>& grad) {
  if (batch.empty()) throw std::invalid_argument("ppo_objective: empty batch");
  const int n = static_cast<int>(batch.front()->nodes.rows());
  const auto d = batch.front()->nodes.cols();
  const int b = static_cast<int>(batch.size());

  nets::GraphBatch<float> graphs;
  graphs.num_nodes = n;
  graphs.adjacency = adjacency;
  graphs.nodes.resize(static_cast<Eigen::Index>(b) * n, d);
  for (int i = 0; i < b; ++i) graphs.nodes.middleRows(i * n, n) = batch[i]->nodes;

  nets::ForwardCache<float> cache;
  const auto out = nets::forward_batch(graphs, params, &cache);

  nets::LossSeeds<float> seeds;
  seeds.actions.resize(b);
  seeds.d_log_prob.resize(b);
  seeds.d_entropy.resize(b);
  seeds.d_value.resize(b);

  LossReport rep;
  const double inv_b = 1.0 / b;
  double clipped = 0.0;
  for (int i = 0; i < b; ++i) {
    const Sample& s = *batch[i];
    const double logp = out.log_probs(i, s.action);
    const SurrogateTerm term = clipped_surrogate(logp, s.old_log_prob, s.adv, cfg.clip_epsilon);
    const double v = out.values(i);
    const double err = v - s.ret;
    rep.policy -= term.value * inv_b;
    rep.entropy += out.entropy(i) * inv_b;
    rep.value += err * err * inv_b;
    clipped += std::abs(term.ratio - 1.0) > cfg.clip_epsilon ? 1.0 : 0.0;

    seeds.actions[i] = s.action;
    seeds.d_log_prob(i) = static_cast<float>(-term.d_log_prob * inv_b);
    seeds.d_entropy(i) = static_cast<float>(-cfg.entropy_coef * inv_b);
    seeds.d_value(i) = static_cast<float>(cfg.value_coef * 2.0 * err * inv_b);
  }
  rep.total = rep.policy - cfg.entropy_coef * rep.entropy + cfg.value_coef * rep.value;
  rep.clip_fraction = clipped * inv_b;
  grad = nets::backward(graphs, params, cache, seeds);
  return rep;
}

Adam::Adam(const nets::NetParams<float>& like, const TrainerConfig& cfg)
    : m_(nets::zeros_like(like)),
      v_(nets::zeros_like(like)),
      lr_(cfg.learning_rate),
      beta1_(cfg.adam_beta1),
      beta2_(cfg.adam_beta2),
      eps_(cfg.adam_eps) {}

void Adam::step(nets::NetParams<float>& params, const nets::NetParams<float>& grad) {
  ++t_;
  const float b1 = static_cast<float>(beta1_);
  const float b2 = static_cast<float>(beta2_);
  const float c1 = static_cast<float>(1.0 - std::pow(beta1_, static_cast<double>(t_)));
  const float c2 = static_cast<float>(1.0 - std::pow(beta2_, static_cast<double>(t_)));
  const float lr = static_cast<float>(lr_);
  const float eps = static_cast<float>(eps_);

  std::vector<Matrix<float>*> ms, vs;
  nets::for_each_tensor(m_, [&](const std::string&, Matrix<float>& m) { ms.push_back(&m); });
  nets::for_each_tensor(v_, [&](const std::string&, Matrix<float>& m) { vs.push_back(&m); });
  std::size_t i = 0;
  nets::zip_tensors(params, grad, [&](Matrix<float>& p, const Matrix<float>& g) {
    Matrix<float>& m = *ms.at(i);
    Matrix<float>& v = *vs.at(i);
    ++i;
    m = b1 * m + (1.0f - b1) * g;
    v = b2 * v + (1.0f - b2) * g.cwiseProduct(g);
    p.array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps);
  });
}

double clip_grad_norm(nets::NetParams<float>& grad, double max_norm) {
  double sq = 0.0;
  nets::for_each_tensor(grad, [&](const std::string&, const Matrix<float>& g) {
    sq += g.cast<double>().squaredNorm();
  });
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const float scale = static_cast<float>(max_norm / norm);
    nets::for_each_tensor(grad, [&](const std::string&, Matrix<float>& g) { g *= scale; });
  }
  return norm;
}

bool all_finite(const nets::NetParams<float>& params) {
  bool ok = true;
  nets::for_each_tensor(params, [&](const std::string&, const Matrix<float>& m) {
    ok = ok && m.allFinite();
  });
  return ok;
}

}  // namespace tracklets::marl
