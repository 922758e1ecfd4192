#include "enex/assignment.hpp"

#include <algorithm>
#include <limits>

namespace enex {

namespace {

// Shortest-augmenting-path Hungarian with row/column potentials.
// Requires rows <= cols; returns col index per row.
std::vector<int> solve(const CostMatrix& a) {
  const int n = a.rows();
  const int m = a.cols();
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> match_of_col(m + 1, 0);  // row matched to column, 1-based; 0 = free
  std::vector<int> way(m + 1, 0);

  for (int i = 1; i <= n; ++i) {
    match_of_col[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match_of_col[j0];
      double delta = inf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a.at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match_of_col[j0] != 0);
    do {
      const int j1 = way[j0];
      match_of_col[j0] = match_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> col_of_row(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (match_of_col[j] > 0) col_of_row[match_of_col[j] - 1] = j - 1;
  }
  return col_of_row;
}

}  // namespace

std::vector<MatchPair> assign(const CostMatrix& cost, double gate) {
  if (cost.rows() == 0 || cost.cols() == 0) return {};

  std::vector<MatchPair> pairs;
  if (cost.rows() <= cost.cols()) {
    const auto cols = solve(cost);
    for (int r = 0; r < cost.rows(); ++r) {
      if (cols[r] >= 0) pairs.push_back({r, cols[r]});
    }
  } else {
    CostMatrix t(cost.cols(), cost.rows());
    for (int r = 0; r < cost.rows(); ++r)
      for (int c = 0; c < cost.cols(); ++c) t.at(c, r) = cost.at(r, c);
    const auto rows = solve(t);
    for (int c = 0; c < cost.cols(); ++c) {
      if (rows[c] >= 0) pairs.push_back({rows[c], c});
    }
  }

  std::erase_if(pairs, [&](const MatchPair& p) { return cost.at(p.row, p.col) > gate; });
  std::sort(pairs.begin(), pairs.end(),
            [](const MatchPair& a, const MatchPair& b) { return a.row < b.row; });
  return pairs;
}

}  // namespace enex
