#include "tracklets/tracker.hpp"

#include <algorithm>
#include <stdexcept>

namespace tracklets {

Eigen::MatrixXd build_cost_matrix(std::span<const Track> tracks, std::span<const Detection> dets,
                                  double role_penalty) {
  if (tracks.empty()) throw std::invalid_argument("build_cost_matrix: no tracks");
  const auto m = static_cast<Eigen::Index>(tracks.size());
  const auto k = static_cast<Eigen::Index>(dets.size());
  const Eigen::Index n = std::max(m, k);
  // Square: rows beyond m (more detections than tracks) are all-zero dummies
  // so that the extra detections stay unmatched at no cost.
  Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index o = 0; o < m; ++o) {
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto& t = tracks[o];
      const auto& d = dets[j];
      cost(o, j) = (t.coords - d.coords).squaredNorm() + (t.role == d.role ? 0.0 : role_penalty);
    }
  }
  return cost;
}

TrackSet advance_tracks(std::span<const Track> tracks, std::span<const Detection> dets,
                        double role_penalty) {
  TrackSet next(tracks.begin(), tracks.end());
  if (tracks.empty()) return next;
  const Eigen::MatrixXd cost = build_cost_matrix(tracks, dets, role_penalty);
  const Assignment a = solve_assignment(cost);
  for (std::size_t o = 0; o < tracks.size(); ++o) {
    const int col = a.column_of_row[o];
    auto& t = next[o];
    if (col < static_cast<int>(dets.size())) {
      t.coords = dets[col].coords;
      t.staleness = 0;
    } else {
      ++t.staleness;
    }
  }
  return next;
}

TrackSet init_tracks(std::span<const Detection> dets, const std::map<int, int>& census) {
  std::vector<Detection> sorted(dets.begin(), dets.end());
  auto by_position = [](const Detection& a, const Detection& b) {
    if (a.role != b.role) return a.role < b.role;
    if (a.coords.x() != b.coords.x()) return a.coords.x() < b.coords.x();
    return a.coords.y() < b.coords.y();
  };
  std::sort(sorted.begin(), sorted.end(), by_position);

  TrackSet tracks;
  for (const auto& [role, count] : census) {
    std::vector<Detection> mine;
    for (const auto& d : sorted) {
      if (d.role == role) mine.push_back(d);
    }
    if (static_cast<int>(mine.size()) > count) {
      std::stable_sort(mine.begin(), mine.end(),
                       [](const Detection& a, const Detection& b) { return a.area > b.area; });
      mine.resize(count);
      std::sort(mine.begin(), mine.end(), by_position);
    }
    for (const auto& d : mine) {
      tracks.push_back({static_cast<int>(tracks.size()), role, d.coords, 0});
    }
    for (int f = static_cast<int>(mine.size()); f < count; ++f) {
      tracks.push_back({static_cast<int>(tracks.size()), role, Eigen::Vector2d::Zero(), 1});
    }
  }
  return tracks;
}

}  // namespace tracklets
