#ifndef STALLWATCH_ASSIGNMENT_HPP
#define STALLWATCH_ASSIGNMENT_HPP

#include <cstddef>
#include <utility>
#include <vector>

namespace stallwatch {

// Dense row-major matrix of doubles, used for cost and score tables.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Minimum-cost rectangular assignment (shortest augmenting paths with
// potentials). Every row is assigned when rows <= cols, otherwise every
// column. Returns row -> column, -1 for unassigned rows.
std::vector<int> solve_min_cost_assignment(const Matrix& cost);

struct Matching {
  std::vector<std::pair<int, int>> matches;  // (row, col), ascending by row
  std::vector<int> unmatched_rows;
  std::vector<int> unmatched_cols;
};

// One-to-one matching maximizing the total score over pairs whose score is
// >= gate (and > 0). Pairs below the gate are never matched.
Matching max_score_matching(const Matrix& score, double gate);

}  // namespace stallwatch

#endif  // STALLWATCH_ASSIGNMENT_HPP
