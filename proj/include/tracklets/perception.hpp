#ifndef TRACKLETS_PERCEPTION_HPP_
#define TRACKLETS_PERCEPTION_HPP_

#include <Eigen/Core>

#include <span>
#include <vector>

#include "tracklets/arena.hpp"
#include "tracklets/image.hpp"
#include "tracklets/rng.hpp"

namespace tracklets {

// One thresholded blob: role and world-space centroid. Not aligned across
// frames.
struct Detection {
  int role = 0;
  Eigen::Vector2d coords = Eigen::Vector2d::Zero();
  int area = 0;  // pixel count, used as a size hint when bootstrapping tracks
};

class ColorMap {
 public:
  ColorMap() = default;
  // Throws std::invalid_argument unless every pair of colors is separated by
  // more than 2*tolerance in L-infinity and every color is distinguishable
  // from the black background.
  ColorMap(std::vector<Rgb> colors, int tolerance = 10);

  const std::vector<Rgb>& colors() const { return colors_; }
  int tolerance() const { return tolerance_; }
  int num_roles() const { return static_cast<int>(colors_.size()); }

 private:
  std::vector<Rgb> colors_;
  int tolerance_ = 10;
};

// Default palette for a task: one distinct color per role.
ColorMap default_colormap(const TaskConfig& cfg, int tolerance = 10);

inline constexpr int kMinBlobArea = 3;

// Per-role color threshold followed by 4-connected components. Components of
// at least `min_area` pixels yield one detection at their centroid.
std::vector<Detection> detect(const Image& frame, const ColorMap& colormap,
                              int min_area = kMinBlobArea);

// Drops each detection independently with probability `rate`.
std::vector<Detection> inject_dropout(std::span<const Detection> dets, double rate, Rng& rng);

}  // namespace tracklets

#endif  // TRACKLETS_PERCEPTION_HPP_
