#include "tracklets/config.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace tracklets {

namespace {

// Config text name plus the dotted keys set by overrides, whose marks would
// point into the override string rather than the file.
struct Origin {
  std::string source;
  std::map<std::string, std::string> overrides;  // dotted key -> full override text
};

// Reads one mapping, remembering which keys were consumed so that leftovers
// can be reported as unknown.
class Section {
 public:
  Section(YAML::Node node, std::string path, const Origin& origin)
      : node_(std::move(node)), path_(std::move(path)), origin_(origin) {
    if (node_.IsDefined() && !node_.IsNull()) {
      if (!node_.IsMap()) fail_here("expected a mapping");
      map_ = true;
    }
  }

  YAML::Node raw(const std::string& key) {
    seen_.insert(key);
    if (!map_) return YAML::Node(YAML::NodeType::Undefined);
    const YAML::Node& map = node_;  // const lookup does not insert the key
    return map[key];
  }

  template <class T>
  void get(const std::string& key, T& out) {
    const YAML::Node v = raw(key);
    if (!v.IsDefined()) return;
    out = convert<T>(v, key);
  }

  template <class T>
  T convert(const YAML::Node& v, const std::string& key) {
    if (!v.IsScalar()) fail(v, key, "expected a scalar");
    try {
      return v.as<T>();
    } catch (const YAML::Exception&) {
      if constexpr (std::is_same_v<T, bool>) fail(v, key, "expected true or false");
      if constexpr (std::is_floating_point_v<T>) fail(v, key, "expected a number");
      if constexpr (std::is_integral_v<T>) fail(v, key, "expected an integer");
      fail(v, key, "bad value");
    }
  }

  Section child(const std::string& key) { return Section(raw(key), dotted(key), origin_); }

  [[noreturn]] void fail(const YAML::Node& at, const std::string& key, const std::string& what) const {
    throw ConfigError(where(at, dotted(key)) + ": " + dotted(key) + ": " + what);
  }

  void finish() const {
    if (!map_) return;
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!seen_.count(key)) fail(kv.first, key, "unknown key");
    }
  }

 private:
  [[noreturn]] void fail_here(const std::string& what) const {
    const std::string name = path_.empty() ? "<root>" : path_;
    throw ConfigError(where(node_, path_) + ": " + name + ": " + what);
  }

  std::string where(const YAML::Node& node, const std::string& dotted_key) const {
    // A key set by an override, or nested under one.
    for (const auto& [key, text] : origin_.overrides) {
      if (dotted_key == key || dotted_key.rfind(key + ".", 0) == 0) {
        return origin_.source + " (override '" + text + "')";
      }
    }
    const YAML::Mark m = node.Mark();
    if (m.line < 0) return origin_.source;
    return origin_.source + ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1);
  }

  std::string dotted(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  YAML::Node node_;
  std::string path_;
  const Origin& origin_;
  bool map_ = false;
  std::set<std::string> seen_;
};

std::string apply_override(YAML::Node& root, const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override '" + text + "': expected dotted.key=value");
  }
  const std::string path = text.substr(0, eq);
  YAML::Node value;
  try {
    value = YAML::Load(text.substr(eq + 1));
  } catch (const YAML::Exception& e) {
    throw ConfigError("override '" + text + "': " + e.msg);
  }
  std::vector<std::string> keys;
  std::stringstream ss(path);
  for (std::string part; std::getline(ss, part, '.');) {
    if (part.empty()) throw ConfigError("override '" + text + "': empty key segment");
    keys.push_back(part);
  }
  YAML::Node cur = root;
  for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
    YAML::Node next = cur[keys[i]];
    if (!next.IsMap()) {
      if (next.IsDefined() && !next.IsNull()) {
        throw ConfigError("override '" + text + "': " + keys[i] + " is not a mapping");
      }
      cur[keys[i]] = YAML::Node(YAML::NodeType::Map);
      next = cur[keys[i]];
    }
    cur.reset(next);
  }
  cur[keys.back()] = value;
  return path;
}

std::vector<Rgb> read_colors(const YAML::Node& node, Section& sec) {
  if (!node.IsSequence()) sec.fail(node, "colors", "expected a list of [r, g, b]");
  std::vector<Rgb> colors;
  for (const auto& c : node) {
    if (!c.IsSequence() || c.size() != 3) sec.fail(c, "colors", "each color must be [r, g, b]");
    Rgb rgb{};
    for (std::size_t ch = 0; ch < 3; ++ch) {
      const int v = sec.convert<int>(c[ch], "colors");
      if (v < 0 || v > 255) sec.fail(c[ch], "colors", "channel outside [0, 255]");
      rgb[ch] = static_cast<std::uint8_t>(v);
    }
    colors.push_back(rgb);
  }
  return colors;
}

RunConfig from_yaml(const YAML::Node& root, const Origin& origin) {
  const std::string& source = origin.source;
  RunConfig cfg;
  Section top(root, "", origin);

  Section task = top.child("task");
  if (YAML::Node v = task.raw("name")) {
    try {
      cfg.task.task = parse_task(task.convert<std::string>(v, "name"));
    } catch (const std::invalid_argument& e) {
      task.fail(v, "name", e.what());
    }
  }
  task.get("n_agents", cfg.task.n_agents);
  task.get("episode_len", cfg.task.episode_len);
  task.get("image_size", cfg.task.image_size);
  task.get("dt", cfg.task.dt);
  task.get("accel_gain", cfg.task.accel_gain);
  task.get("damping", cfg.task.damping);
  task.get("contact_stiffness", cfg.task.contact_stiffness);
  task.get("arena_half_extent", cfg.task.arena_half_extent);
  task.get("agent_max_speed", cfg.task.agent_max_speed);
  task.get("prey_speed_ratio", cfg.task.prey_speed_ratio);
  task.get("ball_mass", cfg.task.ball_mass);
  task.get("spawn_margin", cfg.task.spawn_margin);
  Section radii = task.child("radii");
  for (auto& [kind, r] : cfg.task.entity_radii) radii.get(kind, r);
  radii.finish();
  task.finish();

  Section perc = top.child("perception");
  perc.get("color_tolerance", cfg.color_tolerance);
  perc.get("dropout", cfg.dropout);
  perc.get("min_blob_area", cfg.min_blob_area);
  if (YAML::Node v = perc.raw("colors"); v && !v.IsNull()) cfg.colors = read_colors(v, perc);
  perc.finish();

  Section tracker = top.child("tracker");
  tracker.get("role_penalty", cfg.role_penalty);
  tracker.finish();

  Section graph = top.child("graph");
  graph.get("k", cfg.k);
  graph.finish();

  Section model = top.child("model");
  if (YAML::Node v = model.raw("representation")) {
    try {
      cfg.net.representation = nets::parse_representation(model.convert<std::string>(v, "representation"));
    } catch (const std::invalid_argument& e) {
      model.fail(v, "representation", e.what());
    }
  }
  model.get("gcn_layers", cfg.net.gcn_layers);
  model.get("gcn_width", cfg.net.gcn_width);
  model.get("head_hidden", cfg.net.head_hidden);
  model.get("mlp_hidden", cfg.net.mlp_hidden);
  model.finish();

  Section tr = top.child("trainer");
  auto& t = cfg.trainer;
  tr.get("gamma", t.gamma);
  tr.get("n_step", t.n_step);
  tr.get("clip_epsilon", t.clip_epsilon);
  tr.get("entropy_coef", t.entropy_coef);
  tr.get("value_coef", t.value_coef);
  tr.get("epochs", t.epochs);
  tr.get("minibatch_size", t.minibatch_size);
  tr.get("learning_rate", t.learning_rate);
  tr.get("adam_beta1", t.adam_beta1);
  tr.get("adam_beta2", t.adam_beta2);
  tr.get("adam_eps", t.adam_eps);
  tr.get("max_grad_norm", t.max_grad_norm);
  tr.get("standardize_advantages", t.standardize_advantages);
  tr.get("reward_scale", t.reward_scale);
  tr.get("workers", t.workers);
  tr.get("total_episodes", t.total_episodes);
  tr.get("episodes_per_batch", t.episodes_per_batch);
  tr.get("eval_every", t.eval_every);
  tr.get("eval_episodes", t.eval_episodes);
  tr.get("final_metric_rounds", t.final_metric_rounds);
  tr.get("eval_with_dropout", t.eval_with_dropout);
  tr.get("share_params", t.share_params);
  tr.finish();

  if (YAML::Node v = top.raw("seeds")) {
    cfg.seeds.clear();
    if (v.IsScalar()) {
      cfg.seeds.push_back(top.convert<std::uint64_t>(v, "seeds"));
    } else if (v.IsSequence()) {
      for (const auto& s : v) cfg.seeds.push_back(top.convert<std::uint64_t>(s, "seeds"));
    } else {
      top.fail(v, "seeds", "expected an integer or a list of integers");
    }
    if (cfg.seeds.empty()) top.fail(v, "seeds", "at least one seed is required");
    std::set<std::uint64_t> uniq(cfg.seeds.begin(), cfg.seeds.end());
    if (uniq.size() != cfg.seeds.size()) top.fail(v, "seeds", "duplicate seed");
  }
  top.get("output_dir", cfg.output_dir);
  top.finish();

  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return cfg;
}

std::string num(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  std::string s(buf, res.ptr);
  // Keep doubles recognizable as floats to a human reader.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string quoted(const std::string& s) {
  YAML::Emitter e;
  e << YAML::DoubleQuoted << s;
  return e.c_str();
}

}  // namespace

marl::EnvSpec RunConfig::env_spec() const {
  marl::EnvSpec spec;
  spec.task = task;
  spec.colormap = colors ? ColorMap(*colors, color_tolerance) : default_colormap(task, color_tolerance);
  spec.k = k;
  spec.role_penalty = role_penalty;
  spec.dropout = dropout;
  spec.min_blob_area = min_blob_area;
  return spec;
}

marl::TrainOptions RunConfig::train_options(std::uint64_t seed) const {
  marl::TrainOptions opt;
  opt.representation = net.representation;
  opt.shape_overrides = net;
  opt.seed = seed;
  return opt;
}

void RunConfig::validate() const {
  try {
    env_spec().validate();
    trainer.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (net.gcn_layers < 1 || net.gcn_width < 1 || net.head_hidden < 1 || net.mlp_hidden < 1) {
    throw ConfigError("model: layer count and widths must be positive");
  }
  if (seeds.empty()) throw ConfigError("seeds: at least one seed is required");
}

RunConfig parse_run_config(const std::string& text, const std::string& source,
                           const std::vector<std::string>& overrides) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ":" +
                      std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  if (!root || root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  if (!root.IsMap()) throw ConfigError(source + ": top level must be a mapping");
  Origin origin{source, {}};
  for (const auto& o : overrides) origin.overrides[apply_override(root, o)] = o;
  return from_yaml(root, origin);
}

RunConfig load_run_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) {
    throw std::filesystem::filesystem_error("cannot read config file", path,
                                            std::make_error_code(std::errc::no_such_file_or_directory));
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path.string(), overrides);
}

std::string emit_run_config(const RunConfig& c) {
  std::ostringstream o;
  const auto& t = c.task;
  o << "task:\n"
    << "  name: " << task_name(t.task) << "\n"
    << "  n_agents: " << t.n_agents << "\n"
    << "  episode_len: " << t.episode_len << "\n"
    << "  image_size: " << t.image_size << "\n"
    << "  dt: " << num(t.dt) << "\n"
    << "  accel_gain: " << num(t.accel_gain) << "\n"
    << "  damping: " << num(t.damping) << "\n"
    << "  contact_stiffness: " << num(t.contact_stiffness) << "\n"
    << "  arena_half_extent: " << num(t.arena_half_extent) << "\n"
    << "  agent_max_speed: " << num(t.agent_max_speed) << "\n"
    << "  prey_speed_ratio: " << num(t.prey_speed_ratio) << "\n"
    << "  ball_mass: " << num(t.ball_mass) << "\n"
    << "  spawn_margin: " << num(t.spawn_margin) << "\n"
    << "  radii:\n";
  for (const auto& [kind, r] : t.entity_radii) o << "    " << kind << ": " << num(r) << "\n";

  o << "perception:\n"
    << "  color_tolerance: " << c.color_tolerance << "\n"
    << "  dropout: " << num(c.dropout) << "\n"
    << "  min_blob_area: " << c.min_blob_area << "\n";
  if (c.colors) {
    o << "  colors:\n";
    for (const auto& rgb : *c.colors) {
      o << "    - [" << int(rgb[0]) << ", " << int(rgb[1]) << ", " << int(rgb[2]) << "]\n";
    }
  }
  o << "tracker:\n"
    << "  role_penalty: " << num(c.role_penalty) << "\n"
    << "graph:\n"
    << "  k: " << c.k << "\n"
    << "model:\n"
    << "  representation: " << nets::representation_name(c.net.representation) << "\n"
    << "  gcn_layers: " << c.net.gcn_layers << "\n"
    << "  gcn_width: " << c.net.gcn_width << "\n"
    << "  head_hidden: " << c.net.head_hidden << "\n"
    << "  mlp_hidden: " << c.net.mlp_hidden << "\n";

  const auto& r = c.trainer;
  auto b = [](bool x) { return x ? "true" : "false"; };
  o << "trainer:\n"
    << "  gamma: " << num(r.gamma) << "\n"
    << "  n_step: " << r.n_step << "\n"
    << "  clip_epsilon: " << num(r.clip_epsilon) << "\n"
    << "  entropy_coef: " << num(r.entropy_coef) << "\n"
    << "  value_coef: " << num(r.value_coef) << "\n"
    << "  epochs: " << r.epochs << "\n"
    << "  minibatch_size: " << r.minibatch_size << "\n"
    << "  learning_rate: " << num(r.learning_rate) << "\n"
    << "  adam_beta1: " << num(r.adam_beta1) << "\n"
    << "  adam_beta2: " << num(r.adam_beta2) << "\n"
    << "  adam_eps: " << num(r.adam_eps) << "\n"
    << "  max_grad_norm: " << num(r.max_grad_norm) << "\n"
    << "  standardize_advantages: " << b(r.standardize_advantages) << "\n"
    << "  reward_scale: " << num(r.reward_scale) << "\n"
    << "  workers: " << r.workers << "\n"
    << "  total_episodes: " << r.total_episodes << "\n"
    << "  episodes_per_batch: " << r.episodes_per_batch << "\n"
    << "  eval_every: " << r.eval_every << "\n"
    << "  eval_episodes: " << r.eval_episodes << "\n"
    << "  final_metric_rounds: " << r.final_metric_rounds << "\n"
    << "  eval_with_dropout: " << b(r.eval_with_dropout) << "\n"
    << "  share_params: " << b(r.share_params) << "\n";

  o << "seeds: [";
  for (std::size_t i = 0; i < c.seeds.size(); ++i) o << (i ? ", " : "") << c.seeds[i];
  o << "]\n"
    << "output_dir: " << quoted(c.output_dir) << "\n";
  return o.str();
}

}  // namespace tracklets
