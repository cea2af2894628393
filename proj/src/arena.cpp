#include "tracklets/arena.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tracklets {

namespace {

using Vec2 = Eigen::Vector2d;

constexpr int kMaxSpawnTries = 100;

Vec2 clamp_to_arena(const Vec2& p, double half_extent) {
  return p.cwiseMax(-half_extent).cwiseMin(half_extent);
}

Vec2 clip_speed(const Vec2& v, double max_speed) {
  const double speed = v.norm();
  if (speed > max_speed && speed > 0.0) return v * (max_speed / speed);
  return v;
}

bool in_contact(const EntityState& a, const EntityState& b, const std::vector<RoleInfo>& roles) {
  const double reach = roles[a.role].radius + roles[b.role].radius;
  return (a.position - b.position).squaredNorm() < reach * reach;
}

}  // namespace

std::string_view task_name(Task task) {
  switch (task) {
    case Task::kCoopNav: return "coop_nav";
    case Task::kPreyPredator: return "prey_predator";
    case Task::kCoopPush: return "coop_push";
  }
  return "unknown";
}

Task parse_task(std::string_view name) {
  if (name == "coop_nav") return Task::kCoopNav;
  if (name == "prey_predator") return Task::kPreyPredator;
  if (name == "coop_push") return Task::kCoopPush;
  throw std::invalid_argument("unknown task '" + std::string(name) +
                              "' (expected coop_nav, prey_predator or coop_push)");
}

std::string_view role_kind_name(RoleKind kind) {
  switch (kind) {
    case RoleKind::kAgent: return "agent";
    case RoleKind::kLandmark: return "landmark";
    case RoleKind::kPrey: return "prey";
    case RoleKind::kBall: return "ball";
  }
  return "unknown";
}

Vec2 action_direction(Action a) {
  switch (a) {
    case Action::kNoop: return {0.0, 0.0};
    case Action::kUp: return {0.0, 1.0};
    case Action::kDown: return {0.0, -1.0};
    case Action::kLeft: return {-1.0, 0.0};
    case Action::kRight: return {1.0, 0.0};
  }
  throw std::invalid_argument("invalid action");
}

double TaskConfig::radius(RoleKind kind) const {
  auto it = entity_radii.find(std::string(role_kind_name(kind)));
  if (it == entity_radii.end()) {
    throw std::invalid_argument("entity_radii has no entry for '" +
                                std::string(role_kind_name(kind)) + "'");
  }
  return it->second;
}

void TaskConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (n_agents < 2) fail("n_agents must be >= 2");
  if (task == Task::kPreyPredator && n_agents % 3 != 0) {
    fail("prey_predator requires n_agents divisible by 3");
  }
  if (episode_len < 1) fail("episode_len must be >= 1");
  if (!(dt > 0.0)) fail("dt must be > 0");
  if (!(damping >= 0.0 && damping < 1.0)) fail("damping must lie in [0, 1)");
  if (!(accel_gain >= 0.0)) fail("accel_gain must be >= 0");
  if (!(contact_stiffness >= 0.0)) fail("contact_stiffness must be >= 0");
  if (!(arena_half_extent > 0.0)) fail("arena_half_extent must be > 0");
  if (!(agent_max_speed > 0.0)) fail("agent_max_speed must be > 0");
  if (!(prey_speed_ratio > 0.0)) fail("prey_speed_ratio must be > 0");
  if (!(ball_mass > 0.0)) fail("ball_mass must be > 0");
  if (image_size < 32) fail("image_size must be >= 32");
  for (const auto& [name, r] : entity_radii) {
    if (!(r > 0.0 && r < arena_half_extent)) {
      fail("entity_radii." + name + " must lie in (0, arena_half_extent)");
    }
  }
  task_roles(*this);  // throws if a needed radius is missing
}

std::vector<RoleInfo> task_roles(const TaskConfig& cfg) {
  std::vector<RoleInfo> roles;
  const double agent_r = cfg.radius(RoleKind::kAgent);
  for (int i = 0; i < cfg.n_agents; ++i) {
    roles.push_back({"agent" + std::to_string(i), RoleKind::kAgent, agent_r, cfg.agent_max_speed,
                     1.0, true, true});
  }
  switch (cfg.task) {
    case Task::kCoopNav:
      roles.push_back({"landmark", RoleKind::kLandmark, cfg.radius(RoleKind::kLandmark), 0.0, 1.0,
                       false, false});
      break;
    case Task::kPreyPredator:
      roles.push_back({"prey", RoleKind::kPrey, cfg.radius(RoleKind::kPrey),
                       cfg.agent_max_speed * cfg.prey_speed_ratio, 1.0, true, false});
      break;
    case Task::kCoopPush:
      roles.push_back({"ball", RoleKind::kBall, cfg.radius(RoleKind::kBall), cfg.agent_max_speed,
                       cfg.ball_mass, true, false});
      roles.push_back({"landmark", RoleKind::kLandmark, cfg.radius(RoleKind::kLandmark), 0.0, 1.0,
                       false, false});
      break;
  }
  return roles;
}

std::map<int, int> role_census(const TaskConfig& cfg) {
  std::map<int, int> census;
  for (int i = 0; i < cfg.n_agents; ++i) census[i] = 1;
  const int extra = cfg.n_agents;
  switch (cfg.task) {
    case Task::kCoopNav: census[extra] = cfg.n_agents; break;
    case Task::kPreyPredator: census[extra] = cfg.n_agents / 3; break;
    case Task::kCoopPush:
      census[extra] = 1;
      census[extra + 1] = 1;
      break;
  }
  return census;
}

int entity_count(const TaskConfig& cfg) {
  int m = 0;
  for (const auto& [role, count] : role_census(cfg)) m += count;
  return m;
}

WorldState reset(const TaskConfig& cfg, Rng& rng) {
  const auto roles = task_roles(cfg);
  WorldState state;
  for (const auto& [role, count] : role_census(cfg)) {
    for (int c = 0; c < count; ++c) {
      EntityState e;
      e.role = role;
      e.controllable = roles[role].controllable;
      state.entities.push_back(e);
    }
  }

  constexpr double kSpawn = 0.9;
  for (std::size_t i = 0; i < state.entities.size(); ++i) {
    auto& e = state.entities[i];
    const double r = roles[e.role].radius;
    bool placed = false;
    for (int attempt = 0; attempt < kMaxSpawnTries && !placed; ++attempt) {
      e.position = {uniform(rng, -kSpawn, kSpawn), uniform(rng, -kSpawn, kSpawn)};
      placed = true;
      for (std::size_t j = 0; j < i; ++j) {
        const auto& other = state.entities[j];
        const double reach = r + roles[other.role].radius + cfg.spawn_margin;
        if ((e.position - other.position).squaredNorm() <= reach * reach) {
          placed = false;
          break;
        }
      }
    }
    if (!placed) {
      spdlog::debug("reset: entity {} placed with overlap after {} tries", i, kMaxSpawnTries);
    }
  }
  return state;
}

double task_reward(const TaskConfig& cfg, const WorldState& state) {
  const auto roles = task_roles(cfg);
  const auto& ents = state.entities;
  switch (cfg.task) {
    case Task::kCoopNav: {
      double total = 0.0;
      for (const auto& lm : ents) {
        if (roles[lm.role].kind != RoleKind::kLandmark) continue;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& a : ents) {
          if (roles[a.role].kind != RoleKind::kAgent) continue;
          best = std::min(best, (a.position - lm.position).norm());
        }
        total += best;
      }
      return -total;
    }
    case Task::kPreyPredator: {
      double total = 0.0;
      for (std::size_t i = 0; i < ents.size(); ++i) {
        for (std::size_t j = i + 1; j < ents.size(); ++j) {
          const RoleKind ki = roles[ents[i].role].kind;
          const RoleKind kj = roles[ents[j].role].kind;
          if (!in_contact(ents[i], ents[j], roles)) continue;
          if (ki == RoleKind::kAgent && kj == RoleKind::kAgent) {
            total -= 5.0;
          } else if ((ki == RoleKind::kAgent && kj == RoleKind::kPrey) ||
                     (ki == RoleKind::kPrey && kj == RoleKind::kAgent)) {
            total += 10.0;
          }
        }
      }
      return total;
    }
    case Task::kCoopPush: {
      const EntityState* ball = nullptr;
      const EntityState* target = nullptr;
      for (const auto& e : ents) {
        if (roles[e.role].kind == RoleKind::kBall) ball = &e;
        if (roles[e.role].kind == RoleKind::kLandmark) target = &e;
      }
      if (ball == nullptr || target == nullptr) return 0.0;
      return -(ball->position - target->position).norm();
    }
  }
  return 0.0;
}

StepResult step(const TaskConfig& cfg, const WorldState& state, std::span<const Action> actions) {
  const auto roles = task_roles(cfg);
  const auto& ents = state.entities;
  const std::size_t m = ents.size();

  std::size_t n_controllable = 0;
  for (const auto& e : ents) n_controllable += e.controllable ? 1 : 0;
  if (actions.size() != n_controllable) {
    throw std::invalid_argument("step: expected " + std::to_string(n_controllable) +
                                " actions, got " + std::to_string(actions.size()));
  }
  if (state.step_index >= cfg.episode_len) {
    throw std::logic_error("step: episode already finished");
  }

  // Soft contact forces between colliding bodies.
  std::vector<Vec2> force(m, Vec2::Zero());
  for (std::size_t i = 0; i < m; ++i) {
    if (!roles[ents[i].role].collides) continue;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (!roles[ents[j].role].collides) continue;
      const Vec2 delta = ents[i].position - ents[j].position;
      const double dist = delta.norm();
      const double overlap = roles[ents[i].role].radius + roles[ents[j].role].radius - dist;
      if (overlap <= 0.0) continue;
      const Vec2 unit = dist > 0.0 ? Vec2(delta / dist) : Vec2(1.0, 0.0);
      const Vec2 f = cfg.contact_stiffness * overlap * unit;
      force[i] += f;
      force[j] -= f;
    }
  }

  StepResult out;
  out.state.step_index = state.step_index + 1;
  out.state.entities = ents;
  std::size_t action_cursor = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const RoleInfo& role = roles[ents[i].role];
    EntityState& e = out.state.entities[i];
    if (role.kind == RoleKind::kLandmark) continue;

    Vec2 drive = Vec2::Zero();
    if (role.kind == RoleKind::kAgent) {
      drive = action_direction(actions[action_cursor++]) * cfg.accel_gain;
    } else if (role.kind == RoleKind::kPrey) {
      // Descend the summed inverse-distance potential of all predators.
      Vec2 flee = Vec2::Zero();
      for (const auto& other : ents) {
        if (roles[other.role].kind != RoleKind::kAgent) continue;
        const Vec2 away = e.position - other.position;
        const double d = std::max(away.norm(), 1e-6);
        flee += away / (d * d * d);
      }
      if (flee.norm() > 0.0) drive = flee.normalized() * cfg.accel_gain * cfg.prey_speed_ratio;
    }

    Vec2 v = e.velocity * (1.0 - cfg.damping) + drive * cfg.dt + force[i] / role.mass * cfg.dt;
    v = clip_speed(v, role.max_speed);
    e.velocity = v;
    e.position = clamp_to_arena(e.position + v * cfg.dt, cfg.arena_half_extent);
  }

  const double r = task_reward(cfg, out.state);
  out.rewards.assign(n_controllable, r);
  return out;
}

Image render(const WorldState& state, const TaskConfig& cfg, std::span<const Rgb> role_colors) {
  const int size = cfg.image_size;
  Image img(size, size);
  const auto roles = task_roles(cfg);
  const double px_per_unit = (size - 1) / 2.0;
  for (const auto& e : state.entities) {
    if (e.role < 0 || static_cast<std::size_t>(e.role) >= role_colors.size()) {
      throw std::invalid_argument("render: no color for role " + std::to_string(e.role));
    }
    const Eigen::Vector2d c = world_to_pixel(e.position, size, size);
    const int ccol = static_cast<int>(std::lround(c.x()));
    const int crow = static_cast<int>(std::lround(c.y()));
    const double rpx = roles[e.role].radius * px_per_unit;
    const int reach = static_cast<int>(std::ceil(rpx));
    const double r2 = rpx * rpx;
    for (int dr = -reach; dr <= reach; ++dr) {
      const int row = crow + dr;
      if (row < 0 || row >= size) continue;
      for (int dc = -reach; dc <= reach; ++dc) {
        const int col = ccol + dc;
        if (col < 0 || col >= size) continue;
        if (dr * dr + dc * dc <= r2) img.set(row, col, role_colors[e.role]);
      }
    }
  }
  return img;
}

}  // namespace tracklets
