#ifndef TRACKLETS_CONFIG_HPP_
#define TRACKLETS_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracklets/arena.hpp"
#include "tracklets/image.hpp"
#include "tracklets/marl.hpp"
#include "tracklets/nets.hpp"
#include "tracklets/rollout.hpp"
#include "tracklets/trainer.hpp"

namespace tracklets {

// A config problem, already formatted as "<source>:<line>:<col>: <key>: <what>".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  TaskConfig task;
  int color_tolerance = 10;
  std::optional<std::vector<Rgb>> colors;  // default palette when empty
  double dropout = 0.0;
  int min_blob_area = kMinBlobArea;
  double role_penalty = kDefaultRolePenalty;
  int k = -1;
  nets::NetShape net;
  marl::TrainerConfig trainer;
  std::vector<std::uint64_t> seeds = {1};
  std::string output_dir = "runs/default";

  // Builds and validates the environment spec.
  marl::EnvSpec env_spec() const;
  marl::TrainOptions train_options(std::uint64_t seed) const;
  // Throws ConfigError for cross-field problems (K range, dropout, colors).
  void validate() const;
};

// Parses YAML text. `source` names the text in error messages. Each override
// is "dotted.key=value"; the value is parsed as YAML, so lists work
// ("seeds=[1,2,3]"). Unknown keys are errors.
RunConfig parse_run_config(const std::string& text, const std::string& source,
                           const std::vector<std::string>& overrides = {});

// Reads a file; a missing file throws std::filesystem::filesystem_error.
RunConfig load_run_config(const std::filesystem::path& path,
                          const std::vector<std::string>& overrides = {});

// Every field written out explicitly; parsing the result gives back an equal
// config, with doubles round-tripping exactly.
std::string emit_run_config(const RunConfig& cfg);

}  // namespace tracklets

#endif  // TRACKLETS_CONFIG_HPP_
