#ifndef TRACKLETS_ROLLOUT_HPP_
#define TRACKLETS_ROLLOUT_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "tracklets/arena.hpp"
#include "tracklets/marl.hpp"
#include "tracklets/nets.hpp"
#include "tracklets/perception.hpp"
#include "tracklets/tracker.hpp"
#include "tracklets/tracklets.hpp"

namespace tracklets::marl {

// Everything needed to build one environment + perception pipeline.
struct EnvSpec {
  TaskConfig task;
  ColorMap colormap;
  int k = -1;  // neighbors per agent graph; -1 means m-1
  double role_penalty = kDefaultRolePenalty;
  double dropout = 0.0;
  int min_blob_area = kMinBlobArea;

  int num_roles() const { return static_cast<int>(task_roles(task).size()); }
  int num_neighbors() const { return k < 0 ? entity_count(task) - 1 : k; }
  int node_dims() const { return node_embedding_dims(num_roles()); }
  nets::NetShape net_shape(nets::Representation rep) const;
  void validate() const;
};

// Read-only policy parameters for one collection phase. With a single entry
// every agent uses it.
struct PolicySnapshot {
  std::vector<nets::NetParams<float>> nets;

  const nets::NetParams<float>& for_agent(int agent) const {
    return nets.size() == 1 ? nets.front() : nets.at(agent);
  }
};

// One agent's step.
struct Transition {
  nets::Matrix<float> nodes;
  int action = 0;
  double reward = 0.0;
  double value = 0.0;
  double log_prob = 0.0;
  bool done = false;
};

struct EpisodeRecord {
  // [agent][t]
  std::vector<std::vector<Transition>> agents;
  double episode_reward = 0.0;  // sum over steps of the shared reward
};

struct RolloutBuffer {
  std::vector<EpisodeRecord> episodes;

  std::size_t transition_count() const;
};

enum class ActionMode { kSample, kGreedy };

// Per-episode observer: world state, frame, detections after dropout, tracks.
struct StepView {
  const WorldState& world;
  const Image& frame;
  std::span<const Detection> detections;
  std::span<const Track> tracks;
};
using StepObserver = std::function<void(const StepView&)>;

// Perception + tracking state for one episode.
class TrackletPipeline {
 public:
  explicit TrackletPipeline(const EnvSpec& spec);

  // Consumes one frame; returns the current tracks.
  std::span<const Track> observe(const Image& frame, Rng& dropout_rng);
  AgentGraph graph_for_agent(int agent) const;
  std::span<const Detection> last_detections() const { return detections_; }
  std::span<const Track> tracks() const { return tracks_; }

 private:
  const EnvSpec& spec_;
  std::map<int, int> census_;
  TrackSet tracks_;
  TrackletWindows windows_;
  std::vector<Detection> detections_;
  std::vector<int> agent_track_;
  bool started_ = false;
};

// Runs one full episode from `seed`. With record=false no transitions are
// kept (evaluation).
EpisodeRecord run_episode(const EnvSpec& spec, const PolicySnapshot& policy, std::uint64_t seed,
                          ActionMode mode, bool record, const StepObserver& observer = {});

// One episode per seed, split into contiguous blocks over `workers` threads.
// The result is ordered by seed index, so it does not depend on the worker
// count. A failure in any worker is rethrown with the offending seed.
RolloutBuffer collect_rollouts(const EnvSpec& spec, const PolicySnapshot& policy,
                               std::span<const std::uint64_t> seeds, int workers,
                               ActionMode mode = ActionMode::kSample, bool record = true);

int sample_action(const nets::Vector<float>& probs, Rng& rng);
int greedy_action(const nets::Vector<float>& probs);

}  // namespace tracklets::marl

#endif  // TRACKLETS_ROLLOUT_HPP_
