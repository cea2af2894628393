#include "tracklets/rollout.hpp"

#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

namespace tracklets::marl {

namespace {

enum : std::uint64_t { kEnvStream = 1, kDropoutStream = 2, kActionStream = 3 };

}  // namespace

nets::NetShape EnvSpec::net_shape(nets::Representation rep) const {
  nets::NetShape shape;
  shape.representation = rep;
  shape.input_dims = node_dims();
  shape.num_nodes = num_neighbors() + 1;
  shape.num_actions = kNumActions;
  return shape;
}

void EnvSpec::validate() const {
  task.validate();
  const int m = entity_count(task);
  if (num_neighbors() < 0 || num_neighbors() > m - 1) {
    throw std::invalid_argument("graph.k=" + std::to_string(k) + " must lie in [0, m-1=" +
                                std::to_string(m - 1) + "]");
  }
  if (!(dropout >= 0.0 && dropout <= 1.0)) throw std::invalid_argument("dropout must lie in [0, 1]");
  if (colormap.num_roles() != num_roles()) {
    throw std::invalid_argument("color map has " + std::to_string(colormap.num_roles()) +
                                " colors but the task has " + std::to_string(num_roles()) + " roles");
  }
}

std::size_t RolloutBuffer::transition_count() const {
  std::size_t n = 0;
  for (const auto& e : episodes) {
    for (const auto& a : e.agents) n += a.size();
  }
  return n;
}

TrackletPipeline::TrackletPipeline(const EnvSpec& spec)
    : spec_(spec), census_(role_census(spec.task)), windows_(spec.num_roles()) {}

std::span<const Track> TrackletPipeline::observe(const Image& frame, Rng& dropout_rng) {
  detections_ = detect(frame, spec_.colormap, spec_.min_blob_area);
  if (spec_.dropout > 0.0) detections_ = inject_dropout(detections_, spec_.dropout, dropout_rng);
  if (!started_) {
    tracks_ = init_tracks(detections_, census_);
    agent_track_.assign(spec_.task.n_agents, -1);
    for (const auto& t : tracks_) {
      if (t.role < spec_.task.n_agents) agent_track_[t.role] = t.id;
    }
    started_ = true;
  } else {
    tracks_ = advance_tracks(tracks_, detections_, spec_.role_penalty);
  }
  push_frame(windows_, tracks_);
  return tracks_;
}

AgentGraph TrackletPipeline::graph_for_agent(int agent) const {
  return knn_graph(windows_, tracks_, agent_track_.at(agent), spec_.num_neighbors());
}

int sample_action(const nets::Vector<float>& probs, Rng& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  for (Eigen::Index a = 0; a < probs.size(); ++a) {
    acc += probs(a);
    if (u < acc) return static_cast<int>(a);
  }
  return static_cast<int>(probs.size() - 1);
}

int greedy_action(const nets::Vector<float>& probs) {
  Eigen::Index best = 0;
  probs.maxCoeff(&best);
  return static_cast<int>(best);
}

EpisodeRecord run_episode(const EnvSpec& spec, const PolicySnapshot& policy, std::uint64_t seed,
                          ActionMode mode, bool record, const StepObserver& observer) {
  Rng env_rng(derive_seed(seed, {kEnvStream}));
  Rng dropout_rng(derive_seed(seed, {kDropoutStream}));
  Rng action_rng(derive_seed(seed, {kActionStream}));

  const int n_agents = spec.task.n_agents;
  WorldState world = reset(spec.task, env_rng);
  TrackletPipeline pipeline(spec);

  EpisodeRecord rec;
  if (record) rec.agents.resize(n_agents);
  std::vector<Action> actions(n_agents);
  for (int t = 0; t < spec.task.episode_len; ++t) {
    const Image frame = render(world, spec.task, spec.colormap.colors());
    pipeline.observe(frame, dropout_rng);
    if (observer) observer({world, frame, pipeline.last_detections(), pipeline.tracks()});

    for (int i = 0; i < n_agents; ++i) {
      const AgentGraph graph = pipeline.graph_for_agent(i);
      const auto out = nets::forward<float>(graph.features, graph.adjacency, policy.for_agent(i));
      const int a = mode == ActionMode::kSample ? sample_action(out.probs, action_rng)
                                                : greedy_action(out.probs);
      actions[i] = static_cast<Action>(a);
      if (record) {
        Transition tr;
        tr.nodes = graph.features.cast<float>();
        tr.action = a;
        tr.value = out.value;
        tr.log_prob = out.log_prob(a);
        rec.agents[i].push_back(std::move(tr));
      }
    }

    const StepResult res = step(spec.task, world, actions);
    world = res.state;
    const bool done = t + 1 == spec.task.episode_len;
    rec.episode_reward += res.rewards.empty() ? 0.0 : res.rewards.front();
    if (record) {
      for (int i = 0; i < n_agents; ++i) {
        rec.agents[i].back().reward = res.rewards[i];
        rec.agents[i].back().done = done;
      }
    }
  }
  return rec;
}

RolloutBuffer collect_rollouts(const EnvSpec& spec, const PolicySnapshot& policy,
                               std::span<const std::uint64_t> seeds, int workers, ActionMode mode,
                               bool record) {
  RolloutBuffer buffer;
  buffer.episodes.resize(seeds.size());
  const std::size_t n = seeds.size();
  const std::size_t w = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));

  std::vector<std::exception_ptr> errors(w);
  std::vector<std::string> failed_seed(w);
  auto work = [&](std::size_t worker) {
    const std::size_t begin = n * worker / w;
    const std::size_t end = n * (worker + 1) / w;
    for (std::size_t e = begin; e < end; ++e) {
      try {
        buffer.episodes[e] = run_episode(spec, policy, seeds[e], mode, record);
      } catch (...) {
        errors[worker] = std::current_exception();
        failed_seed[worker] = std::to_string(seeds[e]);
        return;
      }
    }
  };

  if (w == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < w; ++i) threads.emplace_back(work, i);
    for (auto& t : threads) t.join();
  }
  for (std::size_t i = 0; i < w; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& ex) {
      throw std::runtime_error("rollout worker " + std::to_string(i) + " failed on episode seed " +
                               failed_seed[i] + ": " + ex.what());
    }
  }
  return buffer;
}

}  // namespace tracklets::marl
