#ifndef TRACKLETS_TRACKER_HPP_
#define TRACKLETS_TRACKER_HPP_

#include <Eigen/Core>

#include <map>
#include <span>
#include <vector>

#include "tracklets/assignment.hpp"
#include "tracklets/perception.hpp"

namespace tracklets {

inline constexpr double kDefaultRolePenalty = 1e6;

struct Track {
  int id = 0;
  int role = 0;
  Eigen::Vector2d coords = Eigen::Vector2d::Zero();
  // Frames since the last matched detection. Diagnostic only.
  int staleness = 0;
};

using TrackSet = std::vector<Track>;

// Rows are tracks, columns are detections followed by zero-cost surrogate
// columns up to a square matrix. Entry = squared distance + role penalty.
Eigen::MatrixXd build_cost_matrix(std::span<const Track> tracks, std::span<const Detection> dets,
                                  double role_penalty = kDefaultRolePenalty);

// One tracking step. Tracks matched to a real detection take its coordinates;
// tracks matched to a surrogate keep theirs. Surplus detections are dropped.
TrackSet advance_tracks(std::span<const Track> tracks, std::span<const Detection> dets,
                        double role_penalty = kDefaultRolePenalty);

// First-frame bootstrap. Detections are ordered by (role, x, y) and numbered
// 0..m-1; roles with fewer detections than their census count are padded with
// tracks at the arena center (staleness 1); roles with more keep the largest
// blobs (ties: sort order).
TrackSet init_tracks(std::span<const Detection> dets, const std::map<int, int>& census);

}  // namespace tracklets

#endif  // TRACKLETS_TRACKER_HPP_
