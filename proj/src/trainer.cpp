#include "tracklets/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace tracklets::marl {

namespace {

enum : std::uint64_t { kInitStream = 11, kTrainStream = 12, kUpdateStream = 13, kEvalStream = 14 };

struct LossTotals {
  double policy = 0.0, value = 0.0, entropy = 0.0;
  long updates = 0;

  void add(const LossReport& r) {
    policy += r.policy;
    value += r.value;
    entropy += r.entropy;
    ++updates;
  }
};

// Builds the per-network sample pools of one rollout batch.
std::vector<std::vector<Sample>> make_samples(const RolloutBuffer& buffer, const TrainerConfig& cfg,
                                              std::size_t num_nets) {
  std::vector<std::vector<Sample>> pools(num_nets);
  for (const auto& ep : buffer.episodes) {
    for (std::size_t agent = 0; agent < ep.agents.size(); ++agent) {
      const auto& traj = ep.agents[agent];
      std::vector<double> rewards, values;
      for (const auto& tr : traj) {
        rewards.push_back(tr.reward * cfg.reward_scale);
        values.push_back(tr.value);
      }
      const auto returns = episode_returns(rewards, values, cfg.n_step, cfg.gamma);
      auto& pool = pools[num_nets == 1 ? 0 : agent];
      for (std::size_t t = 0; t < traj.size(); ++t) {
        Sample s;
        s.nodes = traj[t].nodes;
        s.action = traj[t].action;
        s.old_log_prob = traj[t].log_prob;
        s.ret = returns[t];
        s.adv = advantage(returns[t], values[t]);
        pool.push_back(std::move(s));
      }
    }
  }
  if (cfg.standardize_advantages) {
    for (auto& pool : pools) {
      std::vector<double> adv;
      for (const auto& s : pool) adv.push_back(s.adv);
      standardize(adv);
      for (std::size_t i = 0; i < pool.size(); ++i) pool[i].adv = adv[i];
    }
  }
  return pools;
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace

double mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double stddev_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size()));
}

Checkpoint to_checkpoint(const PolicySnapshot& snapshot) { return Checkpoint{snapshot.nets}; }

PolicySnapshot from_checkpoint(const Checkpoint& ckpt) { return PolicySnapshot{ckpt.agents}; }

EvalSummary evaluate(const EnvSpec& spec, const PolicySnapshot& policy, int episodes,
                     std::uint64_t seed, int workers) {
  if (episodes < 1) throw std::invalid_argument("evaluation needs at least 1 episode");
  std::vector<std::uint64_t> seeds(episodes);
  for (int j = 0; j < episodes; ++j) seeds[j] = derive_seed(seed, {kEvalStream, std::uint64_t(j)});
  const RolloutBuffer buf = collect_rollouts(spec, policy, seeds, workers, ActionMode::kGreedy, false);
  EvalSummary s;
  for (const auto& ep : buf.episodes) s.episode_rewards.push_back(ep.episode_reward);
  s.mean = mean_of(s.episode_rewards);
  s.std = stddev_of(s.episode_rewards);
  return s;
}

PolicySnapshot initial_policy(const EnvSpec& spec, const TrainerConfig& cfg, const TrainOptions& opt) {
  nets::NetShape shape = opt.shape_overrides;
  const nets::NetShape base = spec.net_shape(opt.representation);
  shape.representation = base.representation;
  shape.input_dims = base.input_dims;
  shape.num_nodes = base.num_nodes;
  shape.num_actions = base.num_actions;
  PolicySnapshot snap;
  const int count = cfg.share_params ? 1 : spec.task.n_agents;
  for (int i = 0; i < count; ++i) {
    Rng rng(derive_seed(opt.seed, {kInitStream, std::uint64_t(i)}));
    snap.nets.push_back(nets::init_params<float>(shape, rng));
  }
  return snap;
}

TrainResult train(const EnvSpec& spec, const TrainerConfig& cfg, const TrainOptions& opt) {
  spec.validate();
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();

  PolicySnapshot policy = initial_policy(spec, cfg, opt);
  std::vector<Adam> optimizers;
  for (const auto& net : policy.nets) optimizers.emplace_back(net, cfg);
  const nets::Matrix<float> adjacency =
      complete_adjacency(spec.num_neighbors() + 1).cast<float>();

  EnvSpec eval_spec = spec;
  if (!cfg.eval_with_dropout) eval_spec.dropout = 0.0;

  TrainResult result;
  result.checkpoint = to_checkpoint(policy);
  LossTotals totals;
  long done = 0;
  std::uint64_t batch_index = 0;
  while (done < cfg.total_episodes) {
    const long to_eval = cfg.eval_every - done % cfg.eval_every;
    const long count = std::min<long>({cfg.episodes_per_batch, cfg.total_episodes - done, to_eval});
    std::vector<std::uint64_t> seeds(count);
    for (long e = 0; e < count; ++e) {
      seeds[e] = derive_seed(opt.seed, {kTrainStream, std::uint64_t(done + e)});
    }
    const RolloutBuffer buffer = collect_rollouts(spec, policy, seeds, cfg.workers);
    done += count;

    const PolicySnapshot last_good = policy;
    auto pools = make_samples(buffer, cfg, policy.nets.size());
    bool finite = true;
    for (std::size_t net = 0; net < policy.nets.size() && finite; ++net) {
      auto& pool = pools[net];
      std::vector<const Sample*> order(pool.size());
      for (std::size_t i = 0; i < pool.size(); ++i) order[i] = &pool[i];
      Rng rng(derive_seed(opt.seed, {kUpdateStream, batch_index, std::uint64_t(net)}));
      nets::NetParams<float> grad;
      for (int epoch = 0; epoch < cfg.epochs && finite; ++epoch) {
        shuffle(order.begin(), order.end(), rng);
        for (std::size_t first = 0; first < order.size(); first += cfg.minibatch_size) {
          const std::size_t last = std::min(order.size(), first + cfg.minibatch_size);
          std::span<const Sample* const> mb(order.data() + first, last - first);
          const LossReport rep = ppo_objective(mb, adjacency, policy.nets[net], cfg, grad);
          if (!std::isfinite(rep.total)) {
            finite = false;
            break;
          }
          clip_grad_norm(grad, cfg.max_grad_norm);
          optimizers[net].step(policy.nets[net], grad);
          totals.add(rep);
        }
      }
      finite = finite && all_finite(policy.nets[net]);
    }
    ++batch_index;
    if (!finite) {
      result.aborted = true;
      result.abort_reason = "non-finite loss or parameters after " + std::to_string(done) +
                            " training episodes; returning the last finite parameters";
      result.checkpoint = to_checkpoint(last_good);
      break;
    }
    result.checkpoint = to_checkpoint(policy);

    if (done % cfg.eval_every == 0) {
      const EvalSummary ev = evaluate(eval_spec, policy, cfg.eval_episodes, opt.seed, cfg.workers);
      EvalRow row;
      row.train_episodes = done;
      row.eval_round = static_cast<int>(result.rows.size()) + 1;
      row.mean_eval_reward = ev.mean;
      row.std_eval_reward = ev.std;
      if (opt.record_wallclock) {
        row.wallclock_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      }
      if (totals.updates > 0) {
        row.loss_policy = totals.policy / totals.updates;
        row.loss_value = totals.value / totals.updates;
        row.entropy = totals.entropy / totals.updates;
      }
      totals = {};
      result.rows.push_back(row);
      result.eval_rewards.push_back(ev.episode_rewards);
      if (opt.on_eval) opt.on_eval(row);
    }
  }

  if (!result.eval_rewards.empty()) {
    std::vector<double> pooled;
    const std::size_t rounds = result.eval_rewards.size();
    const std::size_t first = rounds > std::size_t(cfg.final_metric_rounds)
                                  ? rounds - cfg.final_metric_rounds
                                  : 0;
    for (std::size_t r = first; r < rounds; ++r) {
      pooled.insert(pooled.end(), result.eval_rewards[r].begin(), result.eval_rewards[r].end());
    }
    result.final_metric = mean_of(pooled);
  }
  return result;
}

std::string format_metrics_row(const EvalRow& row) {
  return std::to_string(row.train_episodes) + "," + std::to_string(row.eval_round) + "," +
         fmt_double(row.mean_eval_reward) + "," + fmt_double(row.std_eval_reward) + "," +
         fmt_double(row.wallclock_s) + "," + fmt_double(row.loss_policy) + "," +
         fmt_double(row.loss_value) + "," + fmt_double(row.entropy);
}

void write_metrics_csv(std::ostream& out, const std::vector<EvalRow>& rows) {
  out << kMetricsSchemaLine << '\n' << kMetricsHeader << '\n';
  for (const auto& r : rows) out << format_metrics_row(r) << '\n';
}

}  // namespace tracklets::marl
