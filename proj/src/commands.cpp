#include "tracklets/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "tracklets/checkpoint.hpp"
#include "tracklets/config.hpp"
#include "tracklets/report.hpp"
#include "tracklets/trainer.hpp"

namespace tracklets::cli {

namespace fs = std::filesystem;

namespace {

// Thrown inside a command to leave with a specific exit code after the
// message has been printed.
struct Exit {
  int code;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

std::string rate_label(double p) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", p);
  return buf;
}

RunConfig load_or_exit(const fs::path& path, const std::vector<std::string>& overrides, Streams io) {
  if (!fs::exists(path)) {
    io.err << "error: config file not found: " << path.string() << '\n';
    throw Exit{kUsageError};
  }
  try {
    return load_run_config(path, overrides);
  } catch (const ConfigError& e) {
    io.err << "error: " << e.what() << '\n';
    throw Exit{kUsageError};
  } catch (const fs::filesystem_error& e) {
    io.err << "error: cannot read config file " << path.string() << ": " << e.code().message() << '\n';
    throw Exit{kUsageError};
  }
}

void apply_seed_flag(RunConfig& cfg, const std::optional<std::vector<std::uint64_t>>& seeds, Streams io) {
  if (!seeds) return;
  if (seeds->empty()) {
    io.err << "error: --seeds needs at least one seed\n";
    throw Exit{kUsageError};
  }
  if (std::set<std::uint64_t>(seeds->begin(), seeds->end()).size() != seeds->size()) {
    io.err << "error: --seeds contains a duplicate seed\n";
    throw Exit{kUsageError};
  }
  cfg.seeds = *seeds;
}

// Creates `dir`, refusing a non-empty one unless `overwrite`.
void prepare_output_dir(const fs::path& dir, bool overwrite, Streams io) {
  if (fs::exists(dir)) {
    if (!fs::is_directory(dir)) {
      io.err << "error: output path " << dir.string() << " exists and is not a directory\n";
      throw Exit{kUsageError};
    }
    if (!fs::is_empty(dir) && !overwrite) {
      io.err << "error: output directory " << dir.string()
             << " is not empty; pass --overwrite to replace its run files\n";
      throw Exit{kRefused};
    }
  }
  fs::create_directories(dir);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

// Final-metric episodes of one run: the pooled rewards of its last rounds.
std::vector<double> final_pool(const marl::TrainResult& r, int rounds) {
  std::vector<double> pooled;
  const std::size_t n = r.eval_rewards.size();
  const std::size_t first = n > std::size_t(rounds) ? n - rounds : 0;
  for (std::size_t i = first; i < n; ++i) {
    pooled.insert(pooled.end(), r.eval_rewards[i].begin(), r.eval_rewards[i].end());
  }
  return pooled;
}

struct SeedOutcome {
  std::uint64_t seed = 0;
  std::optional<double> first_round;
  std::optional<double> final_metric;
  std::vector<double> final_episodes;
  bool aborted = false;
};

SeedOutcome train_one_seed(const RunConfig& cfg, std::uint64_t seed, const fs::path& dir, Streams io,
                           const std::string& label) {
  const marl::EnvSpec spec = cfg.env_spec();
  marl::TrainOptions opt = cfg.train_options(seed);
  opt.on_eval = [&](const marl::EvalRow& row) {
    io.out << label << "seed " << seed << " round " << row.eval_round << " episodes " << row.train_episodes
           << " mean_eval_reward " << fmt(row.mean_eval_reward) << " +- " << fmt(row.std_eval_reward)
           << std::endl;
  };
  const marl::TrainResult res = marl::train(spec, cfg.trainer, opt);

  const std::string suffix = "_seed" + std::to_string(seed);
  std::ostringstream csv;
  marl::write_metrics_csv(csv, res.rows);
  write_text(dir / ("metrics" + suffix + ".csv"), csv.str());
  save_checkpoint(res.checkpoint, dir / ("checkpoint" + suffix + ".bin"));

  SeedOutcome o;
  o.seed = seed;
  if (!res.rows.empty()) o.first_round = res.rows.front().mean_eval_reward;
  o.final_metric = res.final_metric;
  o.final_episodes = final_pool(res, cfg.trainer.final_metric_rounds);
  o.aborted = res.aborted;
  if (res.aborted) io.err << "warning: seed " << seed << ": " << res.abort_reason << '\n';
  return o;
}

std::string opt_num(const std::optional<double>& x) { return x ? fmt(*x) : ""; }

template <class F>
int guarded(Streams io, F&& body) {
  try {
    return body();
  } catch (const Exit& e) {
    return e.code;
  } catch (const ConfigError& e) {
    io.err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    io.err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

// The checkpoint must have been trained for this task and representation.
void check_compatible(const Checkpoint& ckpt, const RunConfig& cfg, const marl::EnvSpec& spec) {
  const std::size_t n = ckpt.agents.size();
  if (n != 1 && n != std::size_t(cfg.task.n_agents)) {
    throw std::invalid_argument("checkpoint holds " + std::to_string(n) + " networks but the task has " +
                                std::to_string(cfg.task.n_agents) + " agents");
  }
  const nets::NetShape shape = spec.net_shape(cfg.net.representation);
  for (const auto& net : ckpt.agents) {
    std::visit(
        [&](const auto& p) {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, nets::GcnParams<float>>) {
            if (cfg.net.representation != nets::Representation::kTrackletsGcn) {
              throw std::invalid_argument("checkpoint holds a tracklets_gcn network, config asks for " +
                                          std::string(nets::representation_name(cfg.net.representation)));
            }
            if (p.layers.empty() || p.layers.front().w_self.rows() != shape.input_dims) {
              throw std::invalid_argument("checkpoint node width does not match the task (expected " +
                                          std::to_string(shape.input_dims) + ")");
            }
          } else {
            if (cfg.net.representation != nets::Representation::kTrackletsMlp) {
              throw std::invalid_argument("checkpoint holds a tracklets_mlp network, config asks for " +
                                          std::string(nets::representation_name(cfg.net.representation)));
            }
            if (p.hidden1.weight.rows() != shape.input_dims * shape.num_nodes) {
              throw std::invalid_argument("checkpoint input width does not match the task and graph.k");
            }
          }
        },
        net);
  }
}

}  // namespace

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      if (part.empty() || part.front() == '-') throw std::invalid_argument("");
      v = std::stoull(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw std::invalid_argument("bad seed '" + part + "'");
    seeds.push_back(v);
  }
  if (seeds.empty()) throw std::invalid_argument("empty seed list");
  return seeds;
}

std::vector<double> parse_rate_list(const std::string& text) {
  std::vector<double> rates;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size()) throw std::invalid_argument("bad dropout rate '" + part + "'");
    rates.push_back(v);
  }
  if (rates.empty()) throw std::invalid_argument("empty rate list");
  return rates;
}

fs::path resolve_output_dir(const std::optional<fs::path>& out, const std::string& config_dir) {
  if (out) return *out;
  const fs::path dir(config_dir);
  const char* root = std::getenv(kOutputRootEnv);
  if (root && *root && dir.is_relative()) return fs::path(root) / dir;
  return dir;
}

int train_cmd(const RunArgs& args, Streams io) {
  return guarded(io, [&] {
    RunConfig cfg = load_or_exit(args.config, args.overrides, io);
    apply_seed_flag(cfg, args.seeds, io);
    const fs::path dir = resolve_output_dir(args.out, cfg.output_dir);
    prepare_output_dir(dir, args.overwrite, io);
    cfg.output_dir = dir.string();
    write_text(dir / "config.resolved.yaml", emit_run_config(cfg));

    std::ostringstream summary;
    summary << "seed,first_round_reward,final_metric,final_metric_std,aborted\n";
    bool any_aborted = false;
    for (const std::uint64_t seed : cfg.seeds) {
      const SeedOutcome o = train_one_seed(cfg, seed, dir, io, "");
      any_aborted = any_aborted || o.aborted;
      summary << seed << ',' << opt_num(o.first_round) << ',' << opt_num(o.final_metric) << ','
              << (o.final_episodes.empty() ? "" : fmt(marl::stddev_of(o.final_episodes))) << ','
              << (o.aborted ? 1 : 0) << '\n';
      io.out << "seed " << seed << " final_metric "
             << (o.final_metric ? fmt(*o.final_metric) : std::string("n/a")) << '\n';
    }
    write_text(dir / "summary.csv", summary.str());
    io.out << "wrote " << dir.string() << '\n';
    return any_aborted ? int(kTrainingAborted) : int(kOk);
  });
}

int eval_cmd(const EvalArgs& args, Streams io) {
  return guarded(io, [&] {
    if (args.episodes && *args.episodes < 1) {
      io.err << "error: evaluation needs at least 1 episode (got " << *args.episodes << ")\n";
      return int(kUsageError);
    }
    const RunConfig cfg = load_or_exit(args.config, args.overrides, io);
    if (!fs::exists(args.checkpoint)) {
      io.err << "error: checkpoint not found: " << args.checkpoint.string() << '\n';
      return int(kUsageError);
    }
    Checkpoint ckpt;
    try {
      ckpt = load_checkpoint(args.checkpoint);
    } catch (const CheckpointVersionError& e) {
      io.err << "error: " << args.checkpoint.string() << ": " << e.what() << '\n';
      return int(kRuntimeError);
    }
    marl::EnvSpec spec = cfg.env_spec();
    check_compatible(ckpt, cfg, spec);
    if (!cfg.trainer.eval_with_dropout) spec.dropout = 0.0;

    const int episodes = args.episodes.value_or(cfg.trainer.eval_episodes);
    const std::uint64_t seed = args.seed.value_or(cfg.seeds.front());
    const marl::EvalSummary s =
        marl::evaluate(spec, marl::from_checkpoint(ckpt), episodes, seed, cfg.trainer.workers);

    const fs::path csv_path = args.csv.value_or(fs::path(args.checkpoint).replace_extension(".eval.csv"));
    std::ostringstream csv;
    csv << "episode,reward\n";
    for (std::size_t i = 0; i < s.episode_rewards.size(); ++i) {
      csv << i << ',' << fmt(s.episode_rewards[i]) << '\n';
    }
    write_text(csv_path, csv.str());
    io.out << "mean_eval_reward " << fmt(s.mean) << " +- " << fmt(s.std) << " over " << episodes
           << " episodes (seed " << seed << ")\n";
    return int(kOk);
  });
}

int sweep_dropout_cmd(const SweepArgs& args, Streams io) {
  return guarded(io, [&] {
    if (args.rates.empty()) {
      io.err << "error: --rates needs at least one rate\n";
      return int(kUsageError);
    }
    std::set<double> seen;
    for (const double p : args.rates) {
      if (!(p >= 0.0 && p <= 1.0)) {
        io.err << "error: dropout rate " << p << " outside [0, 1]\n";
        return int(kUsageError);
      }
      if (!seen.insert(p).second) {
        io.err << "error: duplicate dropout rate " << p << '\n';
        return int(kUsageError);
      }
    }
    RunConfig base = load_or_exit(args.run.config, args.run.overrides, io);
    apply_seed_flag(base, args.run.seeds, io);
    // Robustness is measured under the same dropout the policy trained with.
    base.trainer.eval_with_dropout = true;
    const fs::path dir = resolve_output_dir(args.run.out, base.output_dir);
    prepare_output_dir(dir, args.run.overwrite, io);
    base.output_dir = dir.string();
    write_text(dir / "config.resolved.yaml", emit_run_config(base));

    std::vector<std::vector<SeedOutcome>> table;
    bool any_aborted = false;
    for (const double p : args.rates) {
      RunConfig cfg = base;
      cfg.dropout = p;
      const fs::path sub = dir / ("p" + rate_label(p));
      fs::create_directories(sub);
      cfg.output_dir = sub.string();
      write_text(sub / "config.resolved.yaml", emit_run_config(cfg));
      std::vector<SeedOutcome> row;
      for (const std::uint64_t seed : cfg.seeds) {
        row.push_back(train_one_seed(cfg, seed, sub, io, "p=" + rate_label(p) + " "));
        any_aborted = any_aborted || row.back().aborted;
      }
      table.push_back(std::move(row));
    }

    // One column per rate, like a dropout-rate results table.
    std::vector<double> metric(args.rates.size()), pooled_std(args.rates.size());
    for (std::size_t c = 0; c < table.size(); ++c) {
      std::vector<double> finals, pooled;
      for (const auto& o : table[c]) {
        if (o.final_metric) finals.push_back(*o.final_metric);
        pooled.insert(pooled.end(), o.final_episodes.begin(), o.final_episodes.end());
      }
      metric[c] = marl::mean_of(finals);
      pooled_std[c] = marl::stddev_of(pooled);
    }
    std::ostringstream csv;
    csv << "statistic";
    for (const double p : args.rates) csv << ",p=" << rate_label(p);
    csv << "\nfinal_metric";
    for (const double m : metric) csv << ',' << fmt(m);
    csv << "\npooled_std";
    for (const double s : pooled_std) csv << ',' << fmt(s);
    csv << "\nchange_vs_first_pct";
    for (const double m : metric) {
      csv << ',' << (metric.front() != 0.0 ? fmt(100.0 * (m - metric.front()) / std::abs(metric.front())) : "");
    }
    for (std::size_t s = 0; s < base.seeds.size(); ++s) {
      csv << "\nseed_" << base.seeds[s];
      for (const auto& col : table) csv << ',' << opt_num(col[s].final_metric);
    }
    csv << '\n';
    write_text(dir / "dropout_summary.csv", csv.str());
    io.out << csv.str();
    return any_aborted ? int(kTrainingAborted) : int(kOk);
  });
}

int plot_cmd(const PlotArgs& args, Streams io) {
  return guarded(io, [&] {
    if (args.metrics.empty()) {
      io.err << "error: plot needs at least one metrics file\n";
      return int(kUsageError);
    }
    std::vector<std::vector<marl::EvalRow>> runs;
    for (const auto& path : args.metrics) {
      try {
        runs.push_back(read_metrics_file(path));
      } catch (const MetricsFormatError& e) {
        io.err << "error: " << e.what() << '\n';
        return int(kUsageError);
      }
    }
    const auto curve = aggregate_curves(runs);
    if (args.out.has_parent_path()) fs::create_directories(args.out.parent_path());
    write_text(args.out, curve_svg(curve, args.title));
    std::ostringstream csv;
    write_curve_csv(csv, curve);
    const fs::path csv_path = fs::path(args.out).replace_extension(".csv");
    write_text(csv_path, csv.str());
    io.out << "wrote " << args.out.string() << " and " << csv_path.string() << '\n';
    return int(kOk);
  });
}

}  // namespace tracklets::cli
