#include <doctest.h>

#include "oracles.hpp"
#include "tracklets/tracker.hpp"

using namespace tracklets;

namespace {

Detection det(int role, double x, double y, int area = 5) {
  Detection d;
  d.role = role;
  d.coords = {x, y};
  d.area = area;
  return d;
}

}  // namespace

TEST_CASE("cost matrix example") {
  // Tracks A@(0,0), B@(1,1); detections B@(1.1,1.0), A@(0.1,0).
  const TrackSet tracks = {{0, 0, {0, 0}, 0}, {1, 1, {1, 1}, 0}};
  const std::vector<Detection> dets = {det(1, 1.1, 1.0), det(0, 0.1, 0.0)};
  const Eigen::MatrixXd c = build_cost_matrix(tracks, dets);
  REQUIRE(c.rows() == 2);
  REQUIRE(c.cols() == 2);
  CHECK(c(0, 0) == doctest::Approx(1e6 + 2.21));
  CHECK(c(0, 1) == doctest::Approx(0.01));
  CHECK(c(1, 0) == doctest::Approx(0.01));
  CHECK(c(1, 1) == doctest::Approx(1e6 + 1.81));
}

TEST_CASE("cost matrix padding") {
  const TrackSet tracks = {{0, 0, {0, 0}, 0}, {1, 0, {0.5, 0}, 0}, {2, 1, {1, 1}, 0}};
  SUBCASE("fewer detections: zero-cost surrogate columns") {
    const std::vector<Detection> dets = {det(0, 0.1, 0)};
    const Eigen::MatrixXd c = build_cost_matrix(tracks, dets);
    CHECK(c.rows() == 3);
    CHECK(c.cols() == 3);
    CHECK(c.rightCols(2).isZero());
  }
  SUBCASE("more detections: zero dummy rows") {
    std::vector<Detection> dets = {det(0, 0, 0), det(0, 0.5, 0), det(1, 1, 1), det(1, -1, -1)};
    const Eigen::MatrixXd c = build_cost_matrix(tracks, dets);
    CHECK(c.rows() == 4);
    CHECK(c.bottomRows(1).isZero());
  }
  SUBCASE("no tracks is an error") {
    CHECK_THROWS_AS(build_cost_matrix({}, std::vector<Detection>{}), std::invalid_argument);
  }
}

TEST_CASE("advance_tracks follows swapped detections") {
  const TrackSet tracks = {{0, 0, {0, 0}, 0}, {1, 1, {1, 1}, 0}};
  const std::vector<Detection> dets = {det(1, 1.1, 1.0), det(0, 0.1, 0.0)};
  const TrackSet next = advance_tracks(tracks, dets);
  CHECK(next[0].coords.isApprox(Eigen::Vector2d(0.1, 0.0)));
  CHECK(next[1].coords.isApprox(Eigen::Vector2d(1.1, 1.0)));
  CHECK(next[0].id == 0);
  CHECK(next[1].role == 1);
}

TEST_CASE("a missing detection carries the previous position forward") {
  const TrackSet tracks = {{0, 0, {0, 0}, 0}, {1, 0, {0.5, 0.5}, 0}};
  const TrackSet next = advance_tracks(tracks, std::vector<Detection>{det(0, 0.52, 0.5)});
  CHECK(next[0].coords == tracks[0].coords);
  CHECK(next[0].staleness == 1);
  CHECK(next[1].coords.isApprox(Eigen::Vector2d(0.52, 0.5)));
  CHECK(next[1].staleness == 0);
}

TEST_CASE("full dropout carries every track forward exactly, frame after frame") {
  TrackSet tracks = {{0, 0, {0.1, -0.2}, 0}, {1, 1, {0.7, 0.3}, 0}, {2, 2, {-0.4, 0.9}, 0}};
  const TrackSet start = tracks;
  for (int t = 1; t <= 10; ++t) {
    tracks = advance_tracks(tracks, std::vector<Detection>{});
    for (std::size_t i = 0; i < tracks.size(); ++i) {
      CHECK(tracks[i].coords == start[i].coords);
      CHECK(tracks[i].role == start[i].role);
      CHECK(tracks[i].staleness == t);
    }
  }
}

TEST_CASE("surplus detections are discarded") {
  const TrackSet tracks = {{0, 0, {0, 0}, 0}};
  const std::vector<Detection> dets = {det(0, 0.9, 0.9), det(0, 0.02, 0.0), det(1, 0, 0)};
  const TrackSet next = advance_tracks(tracks, dets);
  REQUIRE(next.size() == 1);
  CHECK(next[0].coords.isApprox(Eigen::Vector2d(0.02, 0.0)));
}

TEST_CASE("role penalty dominates distance") {
  const TrackSet tracks = {{0, 0, {0, 0}, 0}, {1, 1, {0.9, 0.9}, 0}};
  // The role-1 detection sits on track 0; it still goes to track 1.
  const std::vector<Detection> dets = {det(1, 0.0, 0.0), det(0, 0.9, 0.9)};
  const TrackSet next = advance_tracks(tracks, dets);
  CHECK(next[0].coords.isApprox(Eigen::Vector2d(0.9, 0.9)));
  CHECK(next[1].coords.isApprox(Eigen::Vector2d(0.0, 0.0)));
}

TEST_CASE("init_tracks") {
  SUBCASE("ids follow role order") {
    const std::vector<Detection> dets = {det(1, 1, 1), det(0, 0, 0)};
    const TrackSet t = init_tracks(dets, {{0, 1}, {1, 1}});
    REQUIRE(t.size() == 2);
    CHECK(t[0].id == 0);
    CHECK(t[0].role == 0);
    CHECK(t[1].role == 1);
    CHECK(t[1].coords == Eigen::Vector2d(1, 1));
  }
  SUBCASE("within a role, ordered by x then y") {
    const std::vector<Detection> dets = {det(2, 0.5, 0.1), det(2, -0.5, 0.3), det(2, 0.5, -0.2)};
    const TrackSet t = init_tracks(dets, {{2, 3}});
    CHECK(t[0].coords == Eigen::Vector2d(-0.5, 0.3));
    CHECK(t[1].coords == Eigen::Vector2d(0.5, -0.2));
    CHECK(t[2].coords == Eigen::Vector2d(0.5, 0.1));
  }
  SUBCASE("no detections: every track at the center, staleness 1") {
    const TrackSet t = init_tracks(std::vector<Detection>{}, {{0, 2}, {3, 1}});
    REQUIRE(t.size() == 3);
    for (const auto& tr : t) {
      CHECK(tr.coords.isZero());
      CHECK(tr.staleness == 1);
    }
    CHECK(t[2].role == 3);
  }
  SUBCASE("extra blobs: the largest survive") {
    const std::vector<Detection> dets = {det(0, 0.1, 0, 2), det(0, 0.5, 0, 9), det(0, 0.9, 0, 6)};
    const TrackSet t = init_tracks(dets, {{0, 2}});
    REQUIRE(t.size() == 2);
    CHECK(t[0].coords.x() == 0.5);
    CHECK(t[1].coords.x() == 0.9);
  }
}

TEST_CASE("same-role crossings keep identity") {
  constexpr double kSigma = 0.01;
  Rng rng(31);
  int kept = 0;
  constexpr int kTrials = 300;
  for (int i = 0; i < kTrials; ++i) {
    const double approach = uniform(rng, 4 * kSigma, 8 * kSigma);
    const double angle = uniform(rng, 0.5, 3.14159 - 0.5);
    const auto c = oracle::make_crossing(approach, 0.02, angle, 41, rng);
    kept += oracle::identity_kept(c, kSigma, rng);
  }
  CHECK(kept >= 0.99 * kTrials);
}
