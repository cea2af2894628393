#ifndef TRACKLETS_TRACKLETS_HPP_
#define TRACKLETS_TRACKLETS_HPP_

#include <Eigen/Core>

#include <array>
#include <span>
#include <vector>

#include "tracklets/tracker.hpp"

namespace tracklets {

inline constexpr int kHistory = 4;
inline constexpr int kGlobalInfoDims = 4;

// Per-frame feature width for R roles: one-hot role, 2 coordinates, 4 edge
// distances.
constexpr int frame_feature_dims(int num_roles) { return num_roles + 2 + kGlobalInfoDims; }
constexpr int node_embedding_dims(int num_roles) { return kHistory * frame_feature_dims(num_roles); }

// Distances to the left, right, bottom and top arena edges.
Eigen::Vector4d global_info(const Eigen::Vector2d& coords);

Eigen::VectorXd frame_feature(const Track& track, int num_roles);

// Newest-first history of one track's frame features.
class TrackletWindow {
 public:
  bool initialized() const { return filled_; }
  // First push fills all slots with copies of `feature`.
  void push(const Eigen::VectorXd& feature);
  // 0 is the newest frame.
  const Eigen::VectorXd& at(int age) const { return frames_[(head_ + age) % kHistory]; }

 private:
  std::array<Eigen::VectorXd, kHistory> frames_;
  int head_ = 0;
  bool filled_ = false;
};

// One window per track id.
struct TrackletWindows {
  int num_roles = 0;
  std::vector<TrackletWindow> windows;

  explicit TrackletWindows(int roles = 0) : num_roles(roles) {}
};

void push_frame(TrackletWindows& windows, std::span<const Track> tracks);

// [x_t, x_{t-1}, x_{t-2}, x_{t-3}] concatenated.
Eigen::VectorXd build_node_embedding(const TrackletWindow& window);

struct AgentGraph {
  int agent = 0;
  std::vector<int> neighbors;   // ascending track id
  Eigen::MatrixXd features;     // (K+1) x node_embedding_dims, agent row first
  Eigen::MatrixXd adjacency;    // complete graph, zero diagonal

  int num_nodes() const { return static_cast<int>(features.rows()); }
};

Eigen::MatrixXd complete_adjacency(int num_nodes);

// Complete graph over `agent` and its k nearest tracks (ties: smaller id).
// Throws std::invalid_argument when k > m-1.
AgentGraph knn_graph(const TrackletWindows& windows, std::span<const Track> tracks, int agent, int k);

}  // namespace tracklets

#endif  // TRACKLETS_TRACKLETS_HPP_
