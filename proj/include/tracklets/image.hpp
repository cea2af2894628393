#ifndef TRACKLETS_IMAGE_HPP_
#define TRACKLETS_IMAGE_HPP_

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace tracklets {

using Rgb = std::array<std::uint8_t, 3>;

// Interleaved 8-bit RGB, row-major, row 0 at the top.
struct Image {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> data;

  Image() = default;
  Image(int h, int w) : height(h), width(w), data(static_cast<std::size_t>(h) * w * 3, 0) {}

  std::uint8_t* pixel(int row, int col) {
    return data.data() + (static_cast<std::size_t>(row) * width + col) * 3;
  }
  const std::uint8_t* pixel(int row, int col) const {
    return data.data() + (static_cast<std::size_t>(row) * width + col) * 3;
  }
  void set(int row, int col, const Rgb& c) {
    auto* p = pixel(row, col);
    p[0] = c[0];
    p[1] = c[1];
    p[2] = c[2];
  }
};

// World [-1,1]^2 to continuous pixel coordinates. x grows to the right, y
// grows upward, so the row index is flipped.
inline Eigen::Vector2d world_to_pixel(const Eigen::Vector2d& p, int height, int width) {
  return {(p.x() + 1.0) / 2.0 * (width - 1), (1.0 - p.y()) / 2.0 * (height - 1)};
}

// Inverse of world_to_pixel; input is (col, row).
inline Eigen::Vector2d pixel_to_world(const Eigen::Vector2d& px, int height, int width) {
  return {px.x() / (width - 1) * 2.0 - 1.0, 1.0 - px.y() / (height - 1) * 2.0};
}

// Binary PPM (P6).
void write_ppm(const Image& image, const std::filesystem::path& path);

}  // namespace tracklets

#endif  // TRACKLETS_IMAGE_HPP_
