#include "tracklets/perception.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace tracklets {

namespace {

// Distinct, saturated colors; consecutive agents get visually distant hues.
constexpr Rgb kPalette[] = {
    {230, 25, 75},   {60, 180, 75},  {255, 225, 25}, {0, 130, 200},  {245, 130, 48},
    {145, 30, 180},  {70, 240, 240}, {240, 50, 230}, {170, 110, 40}, {128, 128, 0},
    {0, 0, 128},     {255, 255, 255}};

int linf(const Rgb& a, const Rgb& b) {
  int d = 0;
  for (int c = 0; c < 3; ++c) d = std::max(d, std::abs(int(a[c]) - int(b[c])));
  return d;
}

}  // namespace

ColorMap::ColorMap(std::vector<Rgb> colors, int tolerance)
    : colors_(std::move(colors)), tolerance_(tolerance) {
  if (tolerance_ < 0) throw std::invalid_argument("color tolerance must be >= 0");
  const Rgb black{0, 0, 0};
  for (std::size_t i = 0; i < colors_.size(); ++i) {
    if (linf(colors_[i], black) <= tolerance_) {
      throw std::invalid_argument("color of role " + std::to_string(i) +
                                  " is within tolerance of the background");
    }
    for (std::size_t j = i + 1; j < colors_.size(); ++j) {
      if (linf(colors_[i], colors_[j]) <= 2 * tolerance_) {
        throw std::invalid_argument("colors of roles " + std::to_string(i) + " and " +
                                    std::to_string(j) + " are not separated by 2*tolerance");
      }
    }
  }
}

ColorMap default_colormap(const TaskConfig& cfg, int tolerance) {
  const auto roles = task_roles(cfg);
  constexpr std::size_t kAgentColors = std::size(kPalette) - 1;
  std::vector<Rgb> colors;
  std::size_t next = 0;
  for (const auto& role : roles) {
    if (role.kind == RoleKind::kLandmark) {
      colors.push_back(kPalette[std::size(kPalette) - 1]);
      continue;
    }
    if (next >= kAgentColors) throw std::invalid_argument("default palette exhausted");
    colors.push_back(kPalette[next++]);
  }
  return ColorMap(std::move(colors), tolerance);
}

std::vector<Detection> detect(const Image& frame, const ColorMap& colormap, int min_area) {
  const int h = frame.height;
  const int w = frame.width;
  const int n = h * w;
  const int tol = colormap.tolerance();
  const auto& colors = colormap.colors();

  // Label each pixel with its role, or -1. Colors are separated by more than
  // 2*tolerance, so at most one role matches.
  std::vector<int> label(n, -1);
  for (int i = 0; i < n; ++i) {
    const std::uint8_t* p = frame.data.data() + 3 * static_cast<std::size_t>(i);
    for (std::size_t r = 0; r < colors.size(); ++r) {
      const Rgb& c = colors[r];
      if (std::abs(p[0] - c[0]) <= tol && std::abs(p[1] - c[1]) <= tol &&
          std::abs(p[2] - c[2]) <= tol) {
        label[i] = static_cast<int>(r);
        break;
      }
    }
  }

  std::vector<Detection> out;
  std::vector<char> seen(n, 0);
  std::vector<int> stack;
  for (int start = 0; start < n; ++start) {
    if (label[start] < 0 || seen[start]) continue;
    const int role = label[start];
    long sum_row = 0;
    long sum_col = 0;
    int area = 0;
    stack.assign(1, start);
    seen[start] = 1;
    while (!stack.empty()) {
      const int idx = stack.back();
      stack.pop_back();
      const int row = idx / w;
      const int col = idx % w;
      sum_row += row;
      sum_col += col;
      ++area;
      const int nbr[4][2] = {{row - 1, col}, {row + 1, col}, {row, col - 1}, {row, col + 1}};
      for (const auto& rc : nbr) {
        if (rc[0] < 0 || rc[0] >= h || rc[1] < 0 || rc[1] >= w) continue;
        const int j = rc[0] * w + rc[1];
        if (!seen[j] && label[j] == role) {
          seen[j] = 1;
          stack.push_back(j);
        }
      }
    }
    if (area < min_area) continue;
    const Eigen::Vector2d centroid(static_cast<double>(sum_col) / area,
                                   static_cast<double>(sum_row) / area);
    Detection d;
    d.role = role;
    d.coords = pixel_to_world(centroid, h, w).cwiseMax(-1.0).cwiseMin(1.0);
    d.area = area;
    out.push_back(d);
  }
  return out;
}

std::vector<Detection> inject_dropout(std::span<const Detection> dets, double rate, Rng& rng) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("dropout rate must lie in [0, 1]");
  std::vector<Detection> kept;
  kept.reserve(dets.size());
  for (const auto& d : dets) {
    if (!bernoulli(rng, rate)) kept.push_back(d);
  }
  return kept;
}

}  // namespace tracklets
