#include "seqent/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace seqent {

std::vector<double> solve_dense(Mat A, std::vector<double> b) {
  const std::size_t n = A.rows;
  if (A.cols != n || b.size() != n)
    throw std::invalid_argument("solve_dense: shape mismatch");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(A.at(r, col)) > std::abs(A.at(piv, col))) piv = r;
    if (std::abs(A.at(piv, col)) < 1e-300)
      throw std::runtime_error("solve_dense: singular system");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(A.at(piv, j), A.at(col, j));
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = A.at(r, col) / A.at(col, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) A.at(r, j) -= f * A.at(col, j);
      b[r] -= f * b[col];
    }
  }
  std::vector<double> v(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= A.at(i, j) * v[j];
    v[i] = s / A.at(i, i);
  }
  return v;
}

}  // namespace seqent
