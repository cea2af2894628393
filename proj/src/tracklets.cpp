#include "tracklets/tracklets.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace tracklets {

Eigen::Vector4d global_info(const Eigen::Vector2d& c) {
  return {c.x() + 1.0, 1.0 - c.x(), c.y() + 1.0, 1.0 - c.y()};
}

Eigen::VectorXd frame_feature(const Track& track, int num_roles) {
  if (track.role < 0 || track.role >= num_roles) {
    throw std::invalid_argument("frame_feature: role " + std::to_string(track.role) +
                                " outside [0, " + std::to_string(num_roles) + ")");
  }
  Eigen::VectorXd f = Eigen::VectorXd::Zero(frame_feature_dims(num_roles));
  f(track.role) = 1.0;
  f.segment<2>(num_roles) = track.coords;
  f.segment<4>(num_roles + 2) = global_info(track.coords);
  return f;
}

void TrackletWindow::push(const Eigen::VectorXd& feature) {
  if (!filled_) {
    frames_.fill(feature);
    head_ = 0;
    filled_ = true;
    return;
  }
  head_ = (head_ + kHistory - 1) % kHistory;
  frames_[head_] = feature;
}

void push_frame(TrackletWindows& windows, std::span<const Track> tracks) {
  if (windows.windows.size() < tracks.size()) windows.windows.resize(tracks.size());
  for (const auto& t : tracks) {
    windows.windows.at(t.id).push(frame_feature(t, windows.num_roles));
  }
}

Eigen::VectorXd build_node_embedding(const TrackletWindow& window) {
  if (!window.initialized()) throw std::logic_error("build_node_embedding: empty window");
  const auto d = window.at(0).size();
  Eigen::VectorXd out(kHistory * d);
  for (int age = 0; age < kHistory; ++age) out.segment(age * d, d) = window.at(age);
  return out;
}

Eigen::MatrixXd complete_adjacency(int num_nodes) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(num_nodes, num_nodes);
  a.diagonal().setZero();
  return a;
}

AgentGraph knn_graph(const TrackletWindows& windows, std::span<const Track> tracks, int agent, int k) {
  const int m = static_cast<int>(tracks.size());
  if (agent < 0 || agent >= m) throw std::invalid_argument("knn_graph: agent id out of range");
  if (k < 0 || k > m - 1) {
    throw std::invalid_argument("knn_graph: K=" + std::to_string(k) + " exceeds m-1=" +
                                std::to_string(m - 1));
  }
  const Eigen::Vector2d center = tracks[agent].coords;
  std::vector<int> others;
  for (int o = 0; o < m; ++o) {
    if (o != agent) others.push_back(o);
  }
  std::vector<double> dist(m, 0.0);
  for (int o : others) dist[o] = (tracks[o].coords - center).squaredNorm();
  std::stable_sort(others.begin(), others.end(), [&](int a, int b) {
    if (dist[a] != dist[b]) return dist[a] < dist[b];
    return a < b;
  });
  others.resize(k);
  std::sort(others.begin(), others.end());

  AgentGraph g;
  g.agent = agent;
  g.neighbors = others;
  const int dims = node_embedding_dims(windows.num_roles);
  g.features.resize(k + 1, dims);
  g.features.row(0) = build_node_embedding(windows.windows.at(agent)).transpose();
  for (int i = 0; i < k; ++i) {
    g.features.row(i + 1) = build_node_embedding(windows.windows.at(others[i])).transpose();
  }
  g.adjacency = complete_adjacency(k + 1);
  return g;
}

}  // namespace tracklets
