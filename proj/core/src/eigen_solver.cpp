#include "tsppsd/eigen_solver.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tsppsd {

namespace {

SymmetricEigen sorted(std::vector<double> values, std::vector<std::vector<double>> columns) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  SymmetricEigen out;
  for (std::size_t i : idx) {
    out.values.push_back(values[i]);
    if (!columns.empty()) out.vectors.push_back(std::move(columns[i]));
  }
  return out;
}

}  // namespace

SymmetricEigen jacobi_eigen(const RealMatrix& m, bool want_vectors, int max_sweeps) {
  const std::size_t n = m.dim();
  RealMatrix a = m;
  RealMatrix v(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  }
  const double tiny = std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    if (std::sqrt(off) <= tiny) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= tiny * 1e-3) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v(k, p);
            const double vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
  std::vector<std::vector<double>> columns;
  if (want_vectors) {
    columns.assign(n, std::vector<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) columns[j][k] = v(k, j);
    }
  }
  return sorted(std::move(values), std::move(columns));
}

SymmetricEigen symmetric_eigen(const RealMatrix& m, bool want_vectors) {
  if (m.dim() <= kJacobiMaxDim) return jacobi_eigen(m, want_vectors);
  const auto n = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXd dense(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      dense(r, c) = m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      dense, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  SymmetricEigen out;
  out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  if (want_vectors) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto col = solver.eigenvectors().col(j);
      out.vectors.emplace_back(col.data(), col.data() + n);
    }
  }
  return out;
}

}  // namespace tsppsd
