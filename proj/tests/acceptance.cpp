// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Criteria 7 and 8 train 15 full-length runs and dominate the runtime.
#include <Eigen/Core>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "oracles.hpp"
#include "tracklets/assignment.hpp"
#include "tracklets/commands.hpp"
#include "tracklets/config.hpp"
#include "tracklets/marl.hpp"
#include "tracklets/perception.hpp"
#include "tracklets/tracklets.hpp"
#include "tracklets/trainer.hpp"

#ifndef TRACKLETS_SOURCE_DIR
#error "TRACKLETS_SOURCE_DIR must point at the source tree"
#endif

using namespace tracklets;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c, d);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

// 1. Assignment against the brute-force minimum.
Verdict assignment_oracle() {
  Rng rng(101);
  const auto t0 = std::chrono::steady_clock::now();
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 7));
    Eigen::MatrixXd cost = oracle::random_cost(n, rng);
    // Every other matrix is real-valued, where ties are rare.
    if (i % 2 == 1) {
      for (Eigen::Index k = 0; k < cost.size(); ++k) cost.data()[k] = uniform(rng, 0.0, 10.0);
    }
    const Assignment a = solve_assignment(cost);
    double recomputed = 0.0;
    for (int r = 0; r < n; ++r) recomputed += cost(r, a.column_of_row[r]);
    const double best = oracle::brute_force_assignment(cost);
    mismatches += (recomputed != best || a.total_cost != best);
  }
  const double elapsed = seconds_since(t0);
  return {mismatches == 0 && elapsed < 5.0,
          fmt("%.0f/1000 mismatches, %.2f s including brute force", mismatches, elapsed)};
}

// 2. Analytic gradients against central differences.
Verdict gradient_check() {
  Rng rng(202);
  double worst = 0.0;
  long checked = 0, skipped = 0;
  constexpr int kInstances = 120;
  for (int i = 0; i < kInstances; ++i) {
    const oracle::GradInstance g = oracle::random_grad_instance(nets::Representation::kTrackletsGcn, rng);
    const oracle::GradCheck c = oracle::check_gradients(g);
    worst = std::max(worst, c.max_rel_error);
    checked += c.checked;
    skipped += c.skipped;
  }
  return {worst <= 1e-4 && checked > 0,
          fmt("%.0f instances, %.0f entries checked, %.0f skipped at activation switches, max rel error %.2e",
              kInstances, static_cast<double>(checked), static_cast<double>(skipped), worst)};
}

// 3. Neighbor permutations leave the GCN output unchanged and change the MLP's.
Verdict permutation_invariance() {
  const RunConfig cfg = parse_run_config("{}", "defaults");
  const marl::EnvSpec spec = cfg.env_spec();
  const int nodes = spec.num_neighbors() + 1;
  const Eigen::MatrixXd adj = complete_adjacency(nodes);
  Rng rng(303);

  auto random_params = [&](nets::Representation rep) {
    nets::NetParams<double> p = nets::init_params<double>(spec.net_shape(rep), rng);
    nets::for_each_tensor(p, [&](const std::string& name, nets::Matrix<double>& m) {
      if (name.ends_with("bias")) {
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = uniform(rng, -0.5, 0.5);
      }
    });
    return p;
  };
  auto random_nodes = [&] {
    Eigen::MatrixXd x(nodes, spec.node_dims());
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = uniform(rng, -1.5, 1.5);
    return x;
  };
  auto random_perm = [&] {
    std::vector<int> perm(nodes - 1);
    std::iota(perm.begin(), perm.end(), 0);
    while (std::is_sorted(perm.begin(), perm.end())) shuffle(perm.begin(), perm.end(), rng);
    return perm;
  };
  auto permuted = [](const Eigen::MatrixXd& x, const std::vector<int>& perm) {
    Eigen::MatrixXd y = x;
    for (std::size_t i = 0; i < perm.size(); ++i) y.row(i + 1) = x.row(perm[i] + 1);
    return y;
  };
  auto rel_change = [](const nets::PolicyOutput<double>& a, const nets::PolicyOutput<double>& b) {
    const double dp = (a.probs - b.probs).cwiseAbs().maxCoeff() / a.probs.cwiseAbs().maxCoeff();
    const double dv = std::abs(a.value - b.value) / std::max(std::abs(a.value), 1e-300);
    return std::max(dp, dv);
  };

  double gcn_worst = 0.0;
  int mlp_violations = 0, trials = 0;
  for (int draw = 0; draw < 20; ++draw) {
    const auto gcn = random_params(nets::Representation::kTrackletsGcn);
    const auto mlp = random_params(nets::Representation::kTrackletsMlp);
    const Eigen::MatrixXd x = random_nodes();
    const auto gcn_base = nets::forward<double>(x, adj, gcn);
    const auto mlp_base = nets::forward<double>(x, adj, mlp);
    for (int k = 0; k < 100; ++k) {
      const Eigen::MatrixXd y = permuted(x, random_perm());
      gcn_worst = std::max(gcn_worst, rel_change(gcn_base, nets::forward<double>(y, adj, gcn)));
      mlp_violations += rel_change(mlp_base, nets::forward<double>(y, adj, mlp)) > 1e-6;
      ++trials;
    }
  }
  const double mlp_rate = static_cast<double>(mlp_violations) / trials;
  return {gcn_worst <= 1e-6 && mlp_rate >= 0.95,
          fmt("GCN max relative change %.2e over %.0f trials; MLP changed in %.1f%%", gcn_worst, trials,
              100.0 * mlp_rate)};
}

// 4. Identity through same-role crossings, and exact carry-forward.
Verdict tracking_identity() {
  constexpr double kSigma = 0.01;
  constexpr int kTrials = 1000;
  Rng rng(404);
  int kept = 0;
  for (int i = 0; i < kTrials; ++i) {
    const double approach = uniform(rng, 4 * kSigma, 8 * kSigma);
    const double angle = uniform(rng, 0.5, M_PI - 0.5);
    kept += oracle::identity_kept(oracle::make_crossing(approach, 0.02, angle, 41, rng), kSigma, rng);
  }

  // Full dropout through the whole pipeline: every track stays where the
  // first frame put it, with staleness counting frames since.
  RunConfig cfg = parse_run_config("{}", "defaults");
  cfg.dropout = 1.0;
  const marl::EnvSpec spec = cfg.env_spec();
  marl::PolicySnapshot policy = marl::initial_policy(spec, cfg.trainer, cfg.train_options(1));
  bool exact = true;
  int frames = 0;
  std::vector<Track> first;
  marl::run_episode(spec, policy, 7, marl::ActionMode::kSample, false, [&](const marl::StepView& v) {
    if (frames == 0) first.assign(v.tracks.begin(), v.tracks.end());
    exact = exact && v.detections.empty() && v.tracks.size() == first.size();
    for (std::size_t i = 0; exact && i < v.tracks.size(); ++i) {
      exact = v.tracks[i].coords == first[i].coords && v.tracks[i].role == first[i].role &&
              v.tracks[i].staleness == first[i].staleness + frames;
    }
    ++frames;
  });
  const double rate = static_cast<double>(kept) / kTrials;
  return {rate >= 0.99 && exact && frames > 1,
          fmt("%.1f%% of %.0f crossings kept identity; carry-forward over %.0f frames ", 100 * rate, kTrials,
              frames) +
              (exact ? "exact" : "NOT exact")};
}

// 5. Render then detect on random non-overlapping states.
Verdict render_detect_roundtrip() {
  Rng rng(505);
  int failures = 0;
  double worst_px = 0.0;
  const std::vector<Task> tasks = {Task::kCoopNav, Task::kPreyPredator, Task::kCoopPush};
  for (int i = 0; i < 1000; ++i) {
    TaskConfig cfg;
    cfg.task = tasks[i % tasks.size()];
    cfg.n_agents = 3;
    cfg.image_size = 64;
    const ColorMap cmap = default_colormap(cfg);
    const double px = 2.0 / cfg.image_size;
    const WorldState s = oracle::random_separated_state(cfg, rng);
    const auto dets = detect(render(s, cfg, cmap.colors()), cmap);
    bool ok = dets.size() == s.entities.size();
    for (const auto& e : s.entities) {
      double best = 1e9;
      for (const auto& d : dets) {
        if (d.role == e.role) best = std::min(best, (d.coords - e.position).norm());
      }
      worst_px = std::max(worst_px, best / px);
      ok = ok && best <= 1.5 * px;
    }
    failures += !ok;
  }
  return {failures == 0, fmt("%.0f/1000 states failed; worst error %.2f px", failures, worst_px)};
}

// 6. Clipped surrogate: the worked examples and zero gradient when clipped.
Verdict surrogate_behavior() {
  struct Case {
    double ratio, adv, expected;
  };
  const std::vector<Case> cases = {{1.0, 2.0, 2.0}, {1.5, 1.0, 1.2}, {0.5, -1.0, -0.8}};
  bool ok = true;
  double worst = 0.0;
  for (const Case& c : cases) {
    const marl::SurrogateTerm s = marl::clipped_surrogate(std::log(c.ratio), 0.0, c.adv, 0.2);
    const double direct = std::min(c.ratio * c.adv, std::clamp(c.ratio, 0.8, 1.2) * c.adv);
    worst = std::max({worst, std::abs(s.value - direct), std::abs(s.value - c.expected)});
    if (c.ratio != 1.0) ok = ok && s.d_log_prob == 0.0;
  }
  ok = ok && worst <= 1e-12;

  // A whole batch in the clipped region: with the entropy and value terms
  // switched off every parameter gradient is exactly zero.
  Rng rng(606);
  nets::NetShape shape;
  shape.input_dims = 8;
  shape.num_nodes = 4;
  const nets::NetParams<float> params = nets::init_params<float>(shape, rng);
  const nets::Matrix<float> adj = complete_adjacency(4).cast<float>();
  std::vector<marl::Sample> samples(8);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    auto& s = samples[i];
    s.nodes = nets::Matrix<float>(4, 8);
    for (Eigen::Index k = 0; k < s.nodes.size(); ++k) s.nodes.data()[k] = static_cast<float>(uniform(rng, -1, 1));
    s.action = static_cast<int>(uniform_index(rng, 5));
    const auto out = nets::forward<float>(s.nodes.cast<double>(), adj.cast<double>(), params);
    const double log_prob = out.log_probs(s.action);
    const bool above = i % 2 == 0;  // ratio 1.5 with D > 0, or ratio 0.5 with D < 0
    s.old_log_prob = log_prob - std::log(above ? 1.5 : 0.5);
    s.adv = above ? 1.0 : -1.0;
  }
  std::vector<const marl::Sample*> batch;
  for (const auto& s : samples) batch.push_back(&s);
  marl::TrainerConfig tc;
  tc.entropy_coef = 0.0;
  tc.value_coef = 0.0;
  nets::NetParams<float> grad;
  const marl::LossReport rep = marl::ppo_objective(batch, adj, params, tc, grad);
  double grad_max = 0.0;
  nets::for_each_tensor(grad, [&](const std::string&, const nets::Matrix<float>& m) {
    grad_max = std::max(grad_max, static_cast<double>(m.cwiseAbs().maxCoeff()));
  });
  ok = ok && grad_max == 0.0 && rep.clip_fraction == 1.0;
  return {ok, fmt("max deviation %.1e; clipped-batch max |grad| %.1e, clip fraction %.2f", worst, grad_max,
                  rep.clip_fraction)};
}

// ---------------------------------------------------------------------------
// Learning runs shared by criteria 7 and 8.

struct RunOutcome {
  double first_round = 0.0;
  double final_metric = 0.0;
  std::vector<double> final_episodes;
  bool aborted = false;
};

std::vector<double> final_pool(const marl::TrainResult& r, int rounds) {
  std::vector<double> pooled;
  const std::size_t n = r.eval_rewards.size();
  for (std::size_t i = n > std::size_t(rounds) ? n - rounds : 0; i < n; ++i) {
    pooled.insert(pooled.end(), r.eval_rewards[i].begin(), r.eval_rewards[i].end());
  }
  return pooled;
}

RunOutcome train_run(RunConfig cfg, std::uint64_t seed, const fs::path& dir, const std::string& label) {
  cfg.trainer.workers = worker_count();
  const auto t0 = std::chrono::steady_clock::now();
  marl::TrainOptions opt = cfg.train_options(seed);
  opt.on_eval = [&](const marl::EvalRow& row) {
    std::cerr << label << " seed " << seed << " episodes " << row.train_episodes << " mean_eval_reward "
              << row.mean_eval_reward << std::endl;
  };
  const marl::TrainResult res = marl::train(cfg.env_spec(), cfg.trainer, opt);
  fs::create_directories(dir);
  std::ofstream csv(dir / ("metrics_seed" + std::to_string(seed) + ".csv"), std::ios::binary);
  marl::write_metrics_csv(csv, res.rows);

  RunOutcome o;
  o.aborted = res.aborted || res.rows.empty() || !res.final_metric;
  if (!res.rows.empty()) o.first_round = res.rows.front().mean_eval_reward;
  o.final_metric = res.final_metric.value_or(NAN);
  o.final_episodes = final_pool(res, cfg.trainer.final_metric_rounds);
  std::cerr << label << " seed " << seed << " first " << o.first_round << " final " << o.final_metric << " ("
            << seconds_since(t0) << " s)" << std::endl;
  return o;
}

struct LearningRuns {
  std::vector<RunOutcome> gcn, mlp;
  std::map<double, std::vector<RunOutcome>> gcn_by_rate;  // dropout sweep, rate 0 shared with `gcn`
  std::vector<std::uint64_t> seeds;
};

Verdict learning_trend(const LearningRuns& runs) {
  bool improves = true;
  int gcn_wins = 0;
  std::ostringstream detail;
  for (std::size_t i = 0; i < runs.seeds.size(); ++i) {
    const RunOutcome& g = runs.gcn[i];
    const RunOutcome& m = runs.mlp[i];
    const double gain = (g.final_metric - g.first_round) / std::abs(g.first_round);
    improves = improves && !g.aborted && gain >= 0.30;
    gcn_wins += !g.aborted && !m.aborted && g.final_metric >= m.final_metric;
    detail << "seed " << runs.seeds[i] << ": GCN " << fmt("%.2f -> %.2f (%+.1f%%)", g.first_round, g.final_metric,
                                                             100 * gain)
           << fmt(", MLP %.2f -> %.2f; ", m.first_round, m.final_metric);
  }
  detail << "(a) " << (improves ? "met" : "not met") << ", (b) GCN >= MLP in " << gcn_wins << "/"
         << runs.seeds.size();
  return {improves && gcn_wins >= 2, detail.str()};
}

double variance_of(const std::vector<double>& xs) {
  const double s = marl::stddev_of(xs);
  return s * s;
}

Verdict dropout_robustness(const LearningRuns& runs) {
  std::vector<double> rates, metric, spread;
  for (const auto& [rate, outcomes] : runs.gcn_by_rate) {
    std::vector<double> finals, pooled;
    bool aborted = false;
    for (const auto& o : outcomes) {
      finals.push_back(o.final_metric);
      pooled.insert(pooled.end(), o.final_episodes.begin(), o.final_episodes.end());
      aborted = aborted || o.aborted;
    }
    rates.push_back(rate);
    metric.push_back(aborted ? NAN : marl::mean_of(finals));
    spread.push_back(variance_of(pooled));
  }
  std::ostringstream detail;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    detail << fmt("p=%g: %.2f (std %.2f); ", rates[i], metric[i], std::sqrt(spread[i]));
  }
  const double near = std::abs(metric[1] - metric[0]) / std::abs(metric[0]);
  bool monotone = true;
  for (std::size_t i = 1; i < rates.size(); ++i) {
    const double pooled_std = std::sqrt(0.5 * (spread[i - 1] + spread[i]));
    monotone = monotone && metric[i] <= metric[i - 1] + pooled_std;
  }
  detail << fmt("p=0.1 differs from p=0 by %.1f%%; ", 100 * near) << "non-increasing within one pooled std: "
         << (monotone ? "yes" : "no");
  return {near <= 0.10 && monotone, detail.str()};
}

LearningRuns run_learning(const fs::path& root) {
  const RunConfig base = load_run_config(fs::path(TRACKLETS_SOURCE_DIR) / "configs" / "coop_nav_n3.yaml");
  LearningRuns runs;
  runs.seeds = base.seeds;
  RunConfig mlp = base;
  mlp.net.representation = nets::Representation::kTrackletsMlp;
  for (std::uint64_t seed : runs.seeds) {
    runs.gcn.push_back(train_run(base, seed, root / "gcn", "gcn"));
    runs.mlp.push_back(train_run(mlp, seed, root / "mlp", "mlp"));
  }
  runs.gcn_by_rate[0.0] = runs.gcn;
  for (double rate : {0.1, 0.2, 0.4}) {
    RunConfig cfg = base;
    cfg.dropout = rate;
    cfg.trainer.eval_with_dropout = true;
    const std::string label = fmt("gcn_p%g", rate);
    for (std::uint64_t seed : runs.seeds) {
      runs.gcn_by_rate[rate].push_back(train_run(cfg, seed, root / label, label));
    }
  }
  return runs;
}

// 9. Rerunning train and eval with the same config reproduces their files.
Verdict determinism(const fs::path& root) {
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path cfg = root / "small.yaml";
  std::ofstream(cfg) << "task: {name: coop_nav, n_agents: 3, image_size: 64}\n"
                        "trainer: {total_episodes: 64, episodes_per_batch: 16, eval_every: 32, eval_episodes: 8, "
                        "workers: "
                     << worker_count()
                     << "}\n"
                        "perception: {dropout: 0.2}\n"
                        "seeds: [5, 6]\n";
  std::ostringstream sink;
  cli::Streams io{sink, sink};
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  bool ok = true;
  for (const char* run : {"a", "b"}) {
    cli::RunArgs args;
    args.config = cfg;
    args.out = root / run;
    ok = ok && cli::train_cmd(args, io) == 0;
    cli::EvalArgs ev;
    ev.config = cfg;
    ev.checkpoint = root / run / "checkpoint_seed5.bin";
    ev.episodes = 10;
    ok = ok && cli::eval_cmd(ev, io) == 0;
  }
  int compared = 0;
  for (const char* f : {"metrics_seed5.csv", "metrics_seed6.csv", "checkpoint_seed5.eval.csv", "summary.csv"}) {
    const std::string a = slurp(root / "a" / f);
    ok = ok && !a.empty() && a == slurp(root / "b" / f);
    ++compared;
  }
  return {ok, fmt("%.0f output files compared byte for byte across two runs", compared)};
}

}  // namespace

int main() {
  const fs::path root = fs::current_path() / "acceptance_runs";
  std::vector<std::pair<std::string, std::function<Verdict()>>> checks = {
      {"1 assignment oracle", assignment_oracle},
      {"2 gradient correctness", gradient_check},
      {"3 permutation invariance", permutation_invariance},
      {"4 tracking identity", tracking_identity},
      {"5 render-detect roundtrip", render_detect_roundtrip},
      {"6 clipped surrogate", surrogate_behavior},
  };
  int failed = 0;
  auto report = [&](const std::string& name, const std::function<Verdict()>& check) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << name << ": " << v.detail << std::endl;
    failed += !v.pass;
  };
  for (const auto& [name, check] : checks) report(name, check);

  LearningRuns runs;
  std::string learning_error;
  try {
    runs = run_learning(root);
  } catch (const std::exception& e) {
    learning_error = e.what();
  }
  auto needs_runs = [&](Verdict (*f)(const LearningRuns&)) {
    return [&, f] {
      if (!learning_error.empty()) throw std::runtime_error("training failed: " + learning_error);
      return f(runs);
    };
  };
  report("7 learning trend", needs_runs(learning_trend));
  report("8 dropout robustness", needs_runs(dropout_robustness));
  report("9 determinism", [&] { return determinism(root / "determinism"); });
  return failed == 0 ? 0 : 1;
}
