#ifndef TRACKLETS_ARENA_HPP_
#define TRACKLETS_ARENA_HPP_

#include <Eigen/Core>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tracklets/image.hpp"
#include "tracklets/rng.hpp"

namespace tracklets {

enum class Task { kCoopNav, kPreyPredator, kCoopPush };

std::string_view task_name(Task task);
Task parse_task(std::string_view name);

// Discrete action set shared by every controllable agent.
enum class Action : int { kNoop = 0, kUp = 1, kDown = 2, kLeft = 3, kRight = 4 };
inline constexpr int kNumActions = 5;

Eigen::Vector2d action_direction(Action a);

enum class RoleKind { kAgent, kLandmark, kPrey, kBall };

std::string_view role_kind_name(RoleKind kind);

// Static description of one role. Every controllable agent gets its own role
// (and therefore its own color); landmarks of a task share one role.
struct RoleInfo {
  std::string name;
  RoleKind kind = RoleKind::kAgent;
  double radius = 0.0;
  double max_speed = 0.0;
  double mass = 1.0;
  bool collides = false;
  bool controllable = false;
};

struct TaskConfig {
  Task task = Task::kCoopNav;
  int n_agents = 3;
  int episode_len = 25;
  double dt = 0.1;
  double accel_gain = 5.0;
  double damping = 0.5;
  double contact_stiffness = 100.0;
  double arena_half_extent = 1.0;
  double agent_max_speed = 1.0;
  double prey_speed_ratio = 1.3;
  double ball_mass = 4.0;
  // Extra clearance between bodies at reset, world units.
  double spawn_margin = 0.1;
  // Keyed by role kind name: "agent", "landmark", "prey", "ball".
  std::map<std::string, double> entity_radii = {
      {"agent", 0.08}, {"landmark", 0.04}, {"prey", 0.06}, {"ball", 0.2}};
  int image_size = 64;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
  double radius(RoleKind kind) const;
};

// Role table, indexed by role id. Order: agent roles, then scripted, then
// landmark/ball roles.
std::vector<RoleInfo> task_roles(const TaskConfig& cfg);

// role id -> expected entity count.
std::map<int, int> role_census(const TaskConfig& cfg);

// Entity count m.
int entity_count(const TaskConfig& cfg);

struct EntityState {
  int role = 0;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();
  bool controllable = false;
};

struct WorldState {
  int step_index = 0;
  // Agents first, then scripted entities, then landmarks/ball.
  std::vector<EntityState> entities;
};

struct StepResult {
  WorldState state;
  std::vector<double> rewards;  // one per controllable agent
};

WorldState reset(const TaskConfig& cfg, Rng& rng);

// Advances one step. `actions` holds one action per controllable agent in
// entity order. Throws std::invalid_argument on a wrong action count and
// std::logic_error when the episode is already over.
StepResult step(const TaskConfig& cfg, const WorldState& state, std::span<const Action> actions);

// Per-agent reward of `state` (all tasks share the reward across agents).
double task_reward(const TaskConfig& cfg, const WorldState& state);

// Filled circles on black, drawn in entity order.
Image render(const WorldState& state, const TaskConfig& cfg, std::span<const Rgb> role_colors);

}  // namespace tracklets

#endif  // TRACKLETS_ARENA_HPP_
