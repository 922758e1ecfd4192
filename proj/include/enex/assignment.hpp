#pragma once

#include <vector>

namespace enex {

/// Dense row-major cost matrix (rows = tracks, cols = detections).
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

  double& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

struct MatchPair {
  int row = 0;
  int col = 0;
  bool operator==(const MatchPair&) const = default;
};

/// Globally optimal min-cost matching of cardinality min(rows, cols)
/// (Hungarian algorithm, O(n^3)). Pairs whose cost exceeds `gate` are
/// dropped after matching. Result is sorted by row index; empty inputs
/// produce an empty matching.
std::vector<MatchPair> assign(const CostMatrix& cost, double gate);

}  // namespace enex
