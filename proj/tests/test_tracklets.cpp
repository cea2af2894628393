#include <doctest.h>

#include "tracklets/tracklets.hpp"

using namespace tracklets;

namespace {

TrackletWindows windows_for(const TrackSet& tracks, int roles) {
  TrackletWindows w(roles);
  push_frame(w, tracks);
  return w;
}

}  // namespace

TEST_CASE("global info is the distance to each arena edge") {
  const Eigen::Vector4d g = global_info({0.2, -0.3});
  CHECK(g(0) == doctest::Approx(1.2));
  CHECK(g(1) == doctest::Approx(0.8));
  CHECK(g(2) == doctest::Approx(0.7));
  CHECK(g(3) == doctest::Approx(1.3));
  CHECK(global_info({-1, 1}).minCoeff() == 0.0);
}

TEST_CASE("frame feature layout") {
  const Track t{0, 2, {0.2, -0.3}, 0};
  const Eigen::VectorXd f = frame_feature(t, 4);
  REQUIRE(f.size() == frame_feature_dims(4));
  CHECK(f.head(4) == Eigen::Vector4d(0, 0, 1, 0));
  CHECK(f.head(4).sum() == 1.0);
  CHECK(f.segment<2>(4) == Eigen::Vector2d(0.2, -0.3));
  CHECK(f.tail<4>().isApprox(Eigen::Vector4d(1.2, 0.8, 0.7, 1.3)));
  CHECK_THROWS_AS(frame_feature(Track{0, 4, {0, 0}, 0}, 4), std::invalid_argument);
}

TEST_CASE("embedding widths") {
  CHECK(node_embedding_dims(3) == 36);
  CHECK(node_embedding_dims(4) == 40);
}

TEST_CASE("window padding and ring order") {
  Eigen::VectorXd f1 = Eigen::VectorXd::Constant(3, 1.0), f2 = Eigen::VectorXd::Constant(3, 2.0),
                  f3 = Eigen::VectorXd::Constant(3, 3.0), f4 = Eigen::VectorXd::Constant(3, 4.0),
                  f5 = Eigen::VectorXd::Constant(3, 5.0);
  TrackletWindow w;
  CHECK_FALSE(w.initialized());
  CHECK_THROWS_AS(build_node_embedding(w), std::logic_error);
  w.push(f1);
  for (int a = 0; a < kHistory; ++a) CHECK(w.at(a) == f1);
  w.push(f2);
  CHECK(w.at(0) == f2);
  CHECK(w.at(1) == f1);
  CHECK(w.at(2) == f1);
  CHECK(w.at(3) == f1);
  w.push(f3);
  w.push(f4);
  w.push(f5);
  CHECK(w.at(0) == f5);
  CHECK(w.at(3) == f2);
}

TEST_CASE("a static object yields four identical blocks") {
  TrackletWindows w(3);
  const TrackSet tracks = {{0, 1, {0.4, 0.4}, 0}};
  for (int t = 0; t < 6; ++t) push_frame(w, tracks);
  const Eigen::VectorXd e = build_node_embedding(w.windows[0]);
  const int d = frame_feature_dims(3);
  for (int a = 1; a < kHistory; ++a) CHECK(e.segment(a * d, d) == e.head(d));
}

TEST_CASE("a straight-line track gives an arithmetic sequence, newest first") {
  TrackletWindows w(3);
  for (int t = 0; t < 4; ++t) push_frame(w, TrackSet{{0, 0, {-0.5 + 0.05 * t, 0.1}, 0}});
  const Eigen::VectorXd e = build_node_embedding(w.windows[0]);
  const int d = frame_feature_dims(3);
  for (int a = 0; a < kHistory; ++a) {
    CHECK(e(a * d + 3) == doctest::Approx(-0.5 + 0.05 * (3 - a)));
    CHECK(e(a * d + 4) == doctest::Approx(0.1));
  }
}

TEST_CASE("complete adjacency") {
  const Eigen::MatrixXd a = complete_adjacency(4);
  CHECK(a.diagonal().isZero());
  CHECK(a.sum() == 12);
  CHECK(a == a.transpose());
}

TEST_CASE("knn graph") {
  const TrackSet tracks = {{0, 0, {0, 0}, 0}, {1, 1, {1, 0}, 0}, {2, 1, {2, 0}, 0}, {3, 1, {3, 0}, 0}};
  const TrackletWindows w = windows_for(tracks, 2);

  SUBCASE("nearest two") {
    const AgentGraph g = knn_graph(w, tracks, 0, 2);
    CHECK(g.neighbors == std::vector<int>{1, 2});
    CHECK(g.num_nodes() == 3);
    CHECK(g.features.row(0).transpose() == build_node_embedding(w.windows[0]));
    CHECK(g.features.row(2).transpose() == build_node_embedding(w.windows[2]));
    CHECK(g.adjacency == complete_adjacency(3));
  }
  SUBCASE("rows are ascending track id, not distance order") {
    const AgentGraph g = knn_graph(w, tracks, 3, 2);
    CHECK(g.neighbors == std::vector<int>{1, 2});
    CHECK(g.features.row(1).transpose() == build_node_embedding(w.windows[1]));
  }
  SUBCASE("K = 0 is the agent alone") {
    const AgentGraph g = knn_graph(w, tracks, 1, 0);
    CHECK(g.num_nodes() == 1);
    CHECK(g.adjacency.isZero());
  }
  SUBCASE("K beyond m-1 is rejected") {
    CHECK_THROWS_AS(knn_graph(w, tracks, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(knn_graph(w, tracks, 4, 1), std::invalid_argument);
  }
}

TEST_CASE("equidistant neighbors: the smaller track id wins") {
  const TrackSet tracks = {{0, 1, {1, 0}, 0}, {1, 1, {-1, 0}, 0}, {2, 0, {0, 0}, 0}, {3, 1, {0, 1}, 0}};
  const TrackletWindows w = windows_for(tracks, 2);
  CHECK(knn_graph(w, tracks, 2, 1).neighbors == std::vector<int>{0});
  CHECK(knn_graph(w, tracks, 2, 2).neighbors == std::vector<int>{0, 1});
}
