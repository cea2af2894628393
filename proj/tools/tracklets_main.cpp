#include <CLI11.hpp>

#include <iostream>

#include "tracklets/commands.hpp"

namespace cli = tracklets::cli;

namespace {

void add_run_flags(CLI::App* cmd, cli::RunArgs& args, std::string& seeds) {
  cmd->add_option("-c,--config", args.config, "YAML run config")->required();
  cmd->add_option("-o,--out", args.out, "output directory (default: config output_dir)");
  cmd->add_option("--seeds", seeds, "comma-separated seeds, replacing the config list");
  cmd->add_option("--override", args.overrides, "dotted.key=value, repeatable")->take_all();
  cmd->add_flag("--overwrite", args.overwrite, "reuse a non-empty output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Visual multi-agent RL from pixels: tracklet graphs, GCN policies, MAPPO"};
  app.require_subcommand(1);

  cli::RunArgs train;
  std::string train_seeds;
  auto* train_cmd = app.add_subcommand("train", "train one run per seed");
  add_run_flags(train_cmd, train, train_seeds);

  cli::EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "greedy evaluation of a checkpoint");
  eval_cmd->add_option("--checkpoint", eval.checkpoint, "checkpoint file")->required();
  eval_cmd->add_option("-c,--config", eval.config, "YAML run config")->required();
  eval_cmd->add_option("--episodes", eval.episodes, "evaluation episodes (default: trainer.eval_episodes)");
  eval_cmd->add_option("--seed", eval.seed, "evaluation seed (default: first config seed)");
  eval_cmd->add_option("--csv", eval.csv, "per-episode CSV (default: checkpoint path with extension .eval.csv)");
  eval_cmd->add_option("--override", eval.overrides, "dotted.key=value, repeatable")->take_all();

  cli::SweepArgs sweep;
  std::string sweep_seeds, rates = "0,0.1,0.2,0.4";
  auto* sweep_cmd = app.add_subcommand("sweep-dropout", "train at several detection dropout rates");
  add_run_flags(sweep_cmd, sweep.run, sweep_seeds);
  sweep_cmd->add_option("--rates", rates, "comma-separated rates in [0, 1]")->capture_default_str();

  cli::PlotArgs plot;
  auto* plot_cmd = app.add_subcommand("plot", "learning curve SVG and aggregated CSV");
  plot_cmd->add_option("metrics", plot.metrics, "metrics CSV files")->required();
  plot_cmd->add_option("-o,--out", plot.out, "SVG path")->required();
  plot_cmd->add_option("--title", plot.title, "plot title");

  CLI11_PARSE(app, argc, argv);

  const cli::Streams io{std::cout, std::cerr};
  try {
    if (*train_cmd) {
      if (!train_seeds.empty()) train.seeds = cli::parse_seed_list(train_seeds);
      return cli::train_cmd(train, io);
    }
    if (*eval_cmd) return cli::eval_cmd(eval, io);
    if (*sweep_cmd) {
      if (!sweep_seeds.empty()) sweep.run.seeds = cli::parse_seed_list(sweep_seeds);
      sweep.rates = cli::parse_rate_list(rates);
      return cli::sweep_dropout_cmd(sweep, io);
    }
    if (*plot_cmd) return cli::plot_cmd(plot, io);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kUsageError;
  }
  return cli::kUsageError;
}
