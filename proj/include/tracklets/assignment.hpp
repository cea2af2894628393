#ifndef TRACKLETS_ASSIGNMENT_HPP_
#define TRACKLETS_ASSIGNMENT_HPP_

#include <Eigen/Core>

#include <vector>

namespace tracklets {

struct Assignment {
  std::vector<int> column_of_row;
  double total_cost = 0.0;
};

// Minimum-cost perfect matching of a square, nonnegative cost matrix
// (Hungarian method with row/column potentials).
//
// Among optimal matchings the lexicographically smallest column_of_row is
// returned: every optimal matching lives on the zero-reduced-cost subgraph of
// the final potentials, so rows are fixed greedily to their smallest column
// that still admits a perfect matching there.
//
// total_cost is summed in row order. Throws std::invalid_argument for a
// non-square matrix or a negative / non-finite entry.
Assignment solve_assignment(const Eigen::MatrixXd& cost);

}  // namespace tracklets

#endif  // TRACKLETS_ASSIGNMENT_HPP_
