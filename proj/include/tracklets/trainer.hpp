#ifndef TRACKLETS_TRAINER_HPP_
#define TRACKLETS_TRAINER_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tracklets/checkpoint.hpp"
#include "tracklets/rollout.hpp"

namespace tracklets::marl {

// One evaluation round; one metrics.csv row.
struct EvalRow {
  long train_episodes = 0;
  int eval_round = 0;
  double mean_eval_reward = 0.0;
  double std_eval_reward = 0.0;
  double wallclock_s = 0.0;
  double loss_policy = 0.0;
  double loss_value = 0.0;
  double entropy = 0.0;
};

struct TrainResult {
  Checkpoint checkpoint;
  std::vector<EvalRow> rows;
  // Episode rewards of every evaluation round, kept for the final metric.
  std::vector<std::vector<double>> eval_rewards;
  std::optional<double> final_metric;
  bool aborted = false;
  std::string abort_reason;
};

struct TrainOptions {
  nets::Representation representation = nets::Representation::kTrackletsGcn;
  nets::NetShape shape_overrides;  // widths and layer count; dims come from EnvSpec
  std::uint64_t seed = 0;
  // Real elapsed seconds in metrics when true; 0 otherwise so that reruns are
  // byte-identical.
  bool record_wallclock = false;
  std::function<void(const EvalRow&)> on_eval;
};

struct EvalSummary {
  std::vector<double> episode_rewards;
  double mean = 0.0;
  double std = 0.0;
};

// Greedy evaluation over `episodes` fixed seeds derived from `seed`.
EvalSummary evaluate(const EnvSpec& spec, const PolicySnapshot& policy, int episodes,
                     std::uint64_t seed, int workers);

// Initial parameters for every agent (one when share_params).
PolicySnapshot initial_policy(const EnvSpec& spec, const TrainerConfig& cfg, const TrainOptions& opt);

// Alternates rollout collection and clipped-surrogate updates. Evaluates
// every cfg.eval_every training episodes; the final metric pools the last
// cfg.final_metric_rounds rounds. A non-finite loss or parameter stops
// training and returns the last finite parameters with aborted=true.
TrainResult train(const EnvSpec& spec, const TrainerConfig& cfg, const TrainOptions& opt);

// Metrics CSV, first line "#tracklets-metrics v1".
inline constexpr const char* kMetricsSchemaLine = "#tracklets-metrics v1";
inline constexpr const char* kMetricsHeader =
    "train_episodes,eval_round,mean_eval_reward,std_eval_reward,wallclock_s,loss_policy,loss_value,"
    "entropy";
void write_metrics_csv(std::ostream& out, const std::vector<EvalRow>& rows);
std::string format_metrics_row(const EvalRow& row);

Checkpoint to_checkpoint(const PolicySnapshot& snapshot);
PolicySnapshot from_checkpoint(const Checkpoint& ckpt);

double mean_of(const std::vector<double>& xs);
double stddev_of(const std::vector<double>& xs);

}  // namespace tracklets::marl

#endif  // TRACKLETS_TRAINER_HPP_
