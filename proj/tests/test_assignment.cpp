#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "tracklets/assignment.hpp"

using namespace tracklets;

namespace {

bool is_permutation(const std::vector<int>& cols) {
  std::set<int> seen(cols.begin(), cols.end());
  return seen.size() == cols.size() && (cols.empty() || (*seen.begin() == 0 &&
                                                         *seen.rbegin() == static_cast<int>(cols.size()) - 1));
}

}  // namespace

TEST_CASE("hand examples") {
  Eigen::MatrixXd a(2, 2);
  a << 1, 2, 2, 1;
  Assignment r = solve_assignment(a);
  CHECK(r.column_of_row == std::vector<int>{0, 1});
  CHECK(r.total_cost == 2.0);

  // Both optimal; the lexicographically smaller matching wins.
  Eigen::MatrixXd b(2, 2);
  b << 0, 1, 0, 1;
  r = solve_assignment(b);
  CHECK(r.column_of_row == std::vector<int>{0, 1});
  CHECK(r.total_cost == 1.0);

  Eigen::MatrixXd c(3, 3);
  c << 4, 1, 3, 2, 0, 5, 3, 2, 2;
  r = solve_assignment(c);
  CHECK(r.column_of_row == std::vector<int>{1, 0, 2});
  CHECK(r.total_cost == 5.0);
}

TEST_CASE("degenerate sizes") {
  CHECK(solve_assignment(Eigen::MatrixXd(0, 0)).column_of_row.empty());
  Eigen::MatrixXd one(1, 1);
  one << 3.5;
  const Assignment r = solve_assignment(one);
  CHECK(r.column_of_row == std::vector<int>{0});
  CHECK(r.total_cost == 3.5);
}

TEST_CASE("all-equal matrix returns the identity") {
  const Assignment r = solve_assignment(Eigen::MatrixXd::Constant(5, 5, 2.0));
  CHECK(r.column_of_row == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(r.total_cost == 10.0);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(solve_assignment(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
  Eigen::MatrixXd neg = Eigen::MatrixXd::Zero(2, 2);
  neg(1, 0) = -1;
  CHECK_THROWS_AS(solve_assignment(neg), std::invalid_argument);
  Eigen::MatrixXd inf = Eigen::MatrixXd::Zero(2, 2);
  inf(0, 1) = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(solve_assignment(inf), std::invalid_argument);
  Eigen::MatrixXd nan = Eigen::MatrixXd::Zero(2, 2);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(solve_assignment(nan), std::invalid_argument);
}

TEST_CASE("matches brute force on random integer matrices") {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(uniform_index(rng, 6));
    const Eigen::MatrixXd c = oracle::random_cost(n, rng, trial % 2 ? 3 : 50);
    const Assignment r = solve_assignment(c);
    REQUIRE(is_permutation(r.column_of_row));
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += c(i, r.column_of_row[i]);
    CHECK(sum == r.total_cost);
    CHECK(r.total_cost == oracle::brute_force_assignment(c));
  }
}

TEST_CASE("matches brute force on real-valued matrices with huge penalties") {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(uniform_index(rng, 5));
    Eigen::MatrixXd c(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) c(i, j) = uniform(rng, 0, 4) + (bernoulli(rng, 0.3) ? 1e6 : 0.0);
    }
    const Assignment r = solve_assignment(c);
    CHECK(r.total_cost == doctest::Approx(oracle::brute_force_assignment(c)).epsilon(1e-12));
  }
}

TEST_CASE("optimal under row and column shifts") {
  // Adding a constant to a row or column shifts every matching's cost equally.
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::MatrixXd c = oracle::random_cost(5, rng);
    Eigen::MatrixXd shifted = c;
    shifted.row(2).array() += 7;
    shifted.col(4).array() += 3;
    CHECK(solve_assignment(shifted).total_cost == solve_assignment(c).total_cost + 10);
  }
}
