#ifndef TRACKLETS_COMMANDS_HPP_
#define TRACKLETS_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace tracklets::cli {

// Exit codes shared by every command.
enum ExitCode : int {
  kOk = 0,
  kRuntimeError = 1,   // I/O, corrupt checkpoint, failed rollout
  kUsageError = 2,     // bad arguments or config
  kRefused = 3,        // non-empty output directory without --overwrite
  kTrainingAborted = 4 // non-finite loss; last finite parameters were saved
};

// Environment variable naming the root under which relative output
// directories are placed.
inline constexpr const char* kOutputRootEnv = "TRACKLETS_OUTPUT_ROOT";

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

struct RunArgs {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;
  std::optional<std::vector<std::uint64_t>> seeds;
  std::vector<std::string> overrides;
  bool overwrite = false;
};

struct EvalArgs {
  std::filesystem::path checkpoint;
  std::filesystem::path config;
  std::optional<int> episodes;          // default: trainer.eval_episodes
  std::optional<std::uint64_t> seed;    // default: first config seed
  std::optional<std::filesystem::path> csv;  // default: checkpoint path with extension .eval.csv
  std::vector<std::string> overrides;
};

struct SweepArgs {
  RunArgs run;
  std::vector<double> rates = {0.0, 0.1, 0.2, 0.4};
};

struct PlotArgs {
  std::vector<std::filesystem::path> metrics;
  std::filesystem::path out;  // SVG path; the aggregated CSV goes next to it
  std::string title = "learning curve";
};

int train_cmd(const RunArgs& args, Streams io);
int eval_cmd(const EvalArgs& args, Streams io);
int sweep_dropout_cmd(const SweepArgs& args, Streams io);
int plot_cmd(const PlotArgs& args, Streams io);

// "1,2,3" -> {1,2,3}; throws std::invalid_argument on junk.
std::vector<std::uint64_t> parse_seed_list(const std::string& text);
std::vector<double> parse_rate_list(const std::string& text);

// Where a run writes: --out if given, else the config's output_dir, placed
// under $TRACKLETS_OUTPUT_ROOT when that is set and the path is relative.
std::filesystem::path resolve_output_dir(const std::optional<std::filesystem::path>& out,
                                         const std::string& config_dir);

}  // namespace tracklets::cli

#endif  // TRACKLETS_COMMANDS_HPP_
