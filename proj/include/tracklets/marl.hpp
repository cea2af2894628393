#ifndef TRACKLETS_MARL_HPP_
#define TRACKLETS_MARL_HPP_

#include <Eigen/Core>

#include <cstdint>
#include <span>
#include <vector>

#include "tracklets/nets.hpp"

namespace tracklets::marl {

struct TrainerConfig {
  double gamma = 0.95;
  int n_step = 10;
  double clip_epsilon = 0.2;
  double entropy_coef = 0.03;
  double value_coef = 0.5;
  int epochs = 4;
  int minibatch_size = 256;
  double learning_rate = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  double max_grad_norm = 0.5;  // 0 disables clipping
  bool standardize_advantages = true;
  double reward_scale = 0.1;   // applied to rewards before computing returns
  int workers = 1;
  long total_episodes = 30000;
  int episodes_per_batch = 16;
  int eval_every = 1000;
  int eval_episodes = 100;
  int final_metric_rounds = 10;
  bool eval_with_dropout = false;  // greedy evaluation sees every detection unless set
  bool share_params = false;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// sum_{k<n} gamma^k r_{t+k} + gamma^n * bootstrap, where the sum stops after
// the first set done flag and the bootstrap is then dropped. `rewards` holds
// r_t..r_{t+n-1}; `dones` has the same length.
double n_step_return(std::span<const double> rewards, std::span<const char> dones, double bootstrap,
                     double gamma);

// n-step returns for every step of one episode. values[t] = V(s_t); the
// episode ends after the last reward, so windows reaching past it are
// truncated without bootstrap.
std::vector<double> episode_returns(std::span<const double> rewards, std::span<const double> values,
                                    int n, double gamma);

inline double advantage(double ret, double value) { return ret - value; }

// In-place zero mean / unit variance. Leaves batches of size < 2 or zero
// variance centered only.
void standardize(std::span<double> xs);

struct SurrogateTerm {
  double ratio = 1.0;
  double value = 0.0;          // min(ratio*D, clip(ratio)*D)
  double d_log_prob = 0.0;     // d value / d log pi
};

SurrogateTerm clipped_surrogate(double log_prob, double old_log_prob, double adv, double epsilon);

// mean_t (R_t - V_t)^2
double value_loss(std::span<const double> returns, std::span<const double> values);

// One sample of the PPO update for a single agent.
struct Sample {
  nets::Matrix<float> nodes;   // (K+1) x node width
  int action = 0;
  double old_log_prob = 0.0;
  double ret = 0.0;
  double adv = 0.0;
};

struct LossReport {
  double total = 0.0;
  double policy = 0.0;   // -mean surrogate
  double value = 0.0;    // mean squared error
  double entropy = 0.0;  // mean entropy
  double clip_fraction = 0.0;
};

// loss = -(mean surrogate + entropy_coef * mean entropy) + value_coef * value loss.
// Returns the loss and fills `grad` with its gradient.
LossReport ppo_objective(std::span<const Sample* const> batch, const nets::Matrix<float>& adjacency,
                         const nets::NetParams<float>& params, const TrainerConfig& cfg,
                         nets::NetParams<float>& grad);

class Adam {
 public:
  Adam() = default;
  Adam(const nets::NetParams<float>& like, const TrainerConfig& cfg);

  void step(nets::NetParams<float>& params, const nets::NetParams<float>& grad);
  long steps() const { return t_; }

 private:
  nets::NetParams<float> m_, v_;
  double lr_ = 3e-4, beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-8;
  long t_ = 0;
};

// Scales `grad` so its global L2 norm is at most max_norm; returns the norm
// before scaling.
double clip_grad_norm(nets::NetParams<float>& grad, double max_norm);

bool all_finite(const nets::NetParams<float>& params);

}  // namespace tracklets::marl

#endif  // TRACKLETS_MARL_HPP_
