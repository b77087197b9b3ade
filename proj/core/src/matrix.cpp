#include "tsppsd/matrix.hpp"

#include <cmath>

namespace tsppsd {

RealMatrix to_real(const RationalMatrix& m) {
  RealMatrix out(m.dim(), 0.0);
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) out(r, c) = m(r, c).get_d();
  }
  return out;
}

RationalMatrix affine_combination(const Rational& a, const RationalMatrix& A, const Rational& b,
                                  const RationalMatrix& B) {
  if (A.dim() != B.dim()) throw std::invalid_argument("dimension mismatch in affine_combination");
  RationalMatrix out(A.dim());
  for (std::size_t r = 0; r < A.dim(); ++r) {
    for (std::size_t c = 0; c < A.dim(); ++c) out(r, c) = a * A(r, c) + b * B(r, c);
  }
  return out;
}

std::size_t exact_rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && sgn(rows[pivot][c]) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Rational inv = 1 / rows[rank][c];
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (sgn(rows[r][c]) == 0) continue;
      const Rational factor = rows[r][c] * inv;
      for (std::size_t j = c; j < cols; ++j) {
        if (sgn(rows[rank][j]) != 0) rows[r][j] -= factor * rows[rank][j];
      }
    }
    ++rank;
  }
  return rank;
}

double infinity_norm(const RealMatrix& m) {
  double best = 0.0;
  for (std::size_t r = 0; r < m.dim(); ++r) {
    double s = 0.0;
    for (double x : m.row(r)) s += std::abs(x);
    best = std::max(best, s);
  }
  return best;
}

}  // namespace tsppsd
