#include "tracklets/assignment.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tracklets {

namespace {

struct Potentials {
  std::vector<double> row;
  std::vector<double> col;
  std::vector<int> column_of_row;
};

// Shortest augmenting path Hungarian method, O(n^3).
Potentials hungarian(const Eigen::MatrixXd& c) {
  const int n = static_cast<int>(c.rows());
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based with a virtual column 0 holding the row being inserted.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> row_of_col(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    row_of_col[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = row_of_col[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = c(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const int j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  Potentials p;
  p.row.assign(u.begin() + 1, u.end());
  p.col.assign(v.begin() + 1, v.end());
  p.column_of_row.assign(n, -1);
  for (int j = 1; j <= n; ++j) p.column_of_row[row_of_col[j] - 1] = j - 1;
  return p;
}

// Bipartite matching on the tight subgraph restricted to rows >= first_row and
// columns not yet taken.
class TightMatcher {
 public:
  TightMatcher(const std::vector<std::vector<char>>& tight, const std::vector<char>& taken)
      : tight_(tight), taken_(taken), n_(static_cast<int>(tight.size())) {}

  bool perfect_from(int first_row) {
    match_.assign(n_, -1);
    for (int i = first_row; i < n_; ++i) {
      visited_.assign(n_, 0);
      if (!augment(i)) return false;
    }
    return true;
  }

 private:
  bool augment(int row) {
    for (int j = 0; j < n_; ++j) {
      if (!tight_[row][j] || taken_[j] || visited_[j]) continue;
      visited_[j] = 1;
      if (match_[j] < 0 || augment(match_[j])) {
        match_[j] = row;
        return true;
      }
    }
    return false;
  }

  const std::vector<std::vector<char>>& tight_;
  const std::vector<char>& taken_;
  int n_;
  std::vector<int> match_;
  std::vector<char> visited_;
};

}  // namespace

Assignment solve_assignment(const Eigen::MatrixXd& cost) {
  if (cost.rows() != cost.cols()) {
    throw std::invalid_argument("solve_assignment: cost matrix must be square, got " +
                                std::to_string(cost.rows()) + "x" + std::to_string(cost.cols()));
  }
  const int n = static_cast<int>(cost.rows());
  double max_abs = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = cost(i, j);
      if (!std::isfinite(x) || x < 0.0) {
        throw std::invalid_argument("solve_assignment: entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") is negative or not finite");
      }
      max_abs = std::max(max_abs, x);
    }
  }
  Assignment out;
  if (n == 0) return out;

  const Potentials pot = hungarian(cost);

  // Round-off in the potentials scales with the magnitude of the entries.
  const double tol = 64.0 * n * std::numeric_limits<double>::epsilon() * std::max(1.0, max_abs);
  std::vector<std::vector<char>> tight(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      tight[i][j] = cost(i, j) - pot.row[i] - pot.col[j] <= tol;
    }
    tight[i][pot.column_of_row[i]] = 1;
  }

  std::vector<char> taken(n, 0);
  std::vector<int> chosen(n, -1);
  bool ok = true;
  for (int i = 0; i < n && ok; ++i) {
    ok = false;
    for (int j = 0; j < n; ++j) {
      if (!tight[i][j] || taken[j]) continue;
      taken[j] = 1;
      if (TightMatcher(tight, taken).perfect_from(i + 1)) {
        chosen[i] = j;
        ok = true;
        break;
      }
      taken[j] = 0;
    }
  }
  out.column_of_row = ok ? chosen : pot.column_of_row;

  for (int i = 0; i < n; ++i) out.total_cost += cost(i, out.column_of_row[i]);
  return out;
}

}  // namespace tracklets
