#include "stallwatch/assignment.hpp"

#include <limits>

namespace stallwatch {
namespace {

// Shortest augmenting path solver for rows <= cols (1-based internal arrays).
std::vector<int> solve_wide(const Matrix& cost) {
  const std::size_t n = cost.rows();
  const std::size_t m = cost.cols();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = static_cast<int>(j - 1);
  }
  return row_to_col;
}

}  // namespace

std::vector<int> solve_min_cost_assignment(const Matrix& cost) {
  if (cost.rows() == 0 || cost.cols() == 0) return std::vector<int>(cost.rows(), -1);
  if (cost.rows() <= cost.cols()) return solve_wide(cost);

  Matrix transposed(cost.cols(), cost.rows());
  for (std::size_t r = 0; r < cost.rows(); ++r)
    for (std::size_t c = 0; c < cost.cols(); ++c) transposed(c, r) = cost(r, c);
  const std::vector<int> col_to_row = solve_wide(transposed);
  std::vector<int> row_to_col(cost.rows(), -1);
  for (std::size_t c = 0; c < col_to_row.size(); ++c) {
    if (col_to_row[c] >= 0) row_to_col[col_to_row[c]] = static_cast<int>(c);
  }
  return row_to_col;
}

Matching max_score_matching(const Matrix& score, double gate) {
  const std::size_t rows = score.rows();
  const std::size_t cols = score.cols();
  auto allowed = [&](std::size_t r, std::size_t c) {
    return score(r, c) >= gate && score(r, c) > 0.0;
  };

  // Forbidden pairs cost 0, the same as leaving both sides unmatched, so the
  // full assignment optimum equals the best partial matching over allowed pairs.
  Matrix cost(rows, cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (allowed(r, c)) cost(r, c) = -score(r, c);

  const std::vector<int> row_to_col = solve_min_cost_assignment(cost);
  Matching out;
  std::vector<char> col_used(cols, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    const int c = row_to_col[r];
    if (c >= 0 && allowed(r, static_cast<std::size_t>(c))) {
      out.matches.emplace_back(static_cast<int>(r), c);
      col_used[c] = 1;
    } else {
      out.unmatched_rows.push_back(static_cast<int>(r));
    }
  }
  for (std::size_t c = 0; c < cols; ++c)
    if (!col_used[c]) out.unmatched_cols.push_back(static_cast<int>(c));
  return out;
}

}  // namespace stallwatch
