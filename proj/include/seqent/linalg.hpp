#pragma once

#include <cstddef>
#include <vector>

namespace seqent {

// Row-major dense matrix, just big enough for chains over alphabets of at
// most 256 states.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), a(r * c, fill) {}

  double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

// Solve A v = b by Gaussian elimination with partial pivoting. Throws on a
// numerically singular system.
std::vector<double> solve_dense(Mat A, std::vector<double> b);

}  // namespace seqent
