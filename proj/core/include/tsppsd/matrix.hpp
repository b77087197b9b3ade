#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "tsppsd/numbers.hpp"

namespace tsppsd {

/// Dense row-major square matrix.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t dim, const T& fill = T(0)) : dim_(dim), data_(dim * dim, fill) {}

  std::size_t dim() const { return dim_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * dim_, dim_}; }

  void set_symmetric(std::size_t r, std::size_t c, const T& value) {
    (*this)(r, c) = value;
    (*this)(c, r) = value;
  }

  bool is_symmetric() const {
    for (std::size_t r = 0; r < dim_; ++r) {
      for (std::size_t c = r + 1; c < dim_; ++c) {
        if (!((*this)(r, c) == (*this)(c, r))) return false;
      }
    }
    return true;
  }

  T trace() const {
    T t(0);
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  std::vector<T> multiply(std::span<const T> v) const {
    if (v.size() != dim_) throw std::invalid_argument("dimension mismatch in matrix-vector product");
    std::vector<T> out(dim_, T(0));
    for (std::size_t r = 0; r < dim_; ++r) {
      T acc(0);
      for (std::size_t c = 0; c < dim_; ++c) acc += (*this)(r, c) * v[c];
      out[r] = acc;
    }
    return out;
  }

  T quadratic_form(std::span<const T> v) const {
    auto mv = multiply(v);
    T acc(0);
    for (std::size_t i = 0; i < dim_; ++i) acc += v[i] * mv[i];
    return acc;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = SquareMatrix<Rational>;
using RealMatrix = SquareMatrix<double>;

RealMatrix to_real(const RationalMatrix& m);

/// a*A + b*B, entrywise.
RationalMatrix affine_combination(const Rational& a, const RationalMatrix& A, const Rational& b,
                                  const RationalMatrix& B);

/// Exact rank of a list of equal-length rational vectors.
std::size_t exact_rank(std::vector<std::vector<Rational>> vectors);

/// Max absolute row sum.
double infinity_norm(const RealMatrix& m);

}  // namespace tsppsd
