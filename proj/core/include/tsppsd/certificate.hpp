#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tsppsd/cycles.hpp"
#include "tsppsd/numbers.hpp"

namespace tsppsd {

/// Product of coordinate variables and complemented variables,
///   p(x) = prod_{i in positive} x_i * prod_{j in complemented} (1 - x_j),
/// which takes only the values 0 and 1 on 0/1 points. For tours the
/// coordinates are edge indices of K_n.
struct CertificatePolynomial {
  enum class Kind { MonomialProduct, OneMinusEdgeProduct, ZeroOneProduct };

  Kind kind = Kind::MonomialProduct;
  std::vector<int> positive;
  std::vector<int> complemented;

  int degree() const { return static_cast<int>(positive.size() + complemented.size()); }

  /// Value at a 0/1 point described by a coordinate predicate.
  bool value_at(const std::function<bool(int)>& coordinate_is_one) const;
  bool value_at(const HamiltonianCycle& cycle) const;
  /// Value at a general rational point.
  Rational value_at(std::span<const Rational> point) const;

  /// Multilinear expansion as (sorted coordinate set, coefficient) pairs.
  std::vector<std::pair<std::vector<int>, Rational>> expand() const;

  /// Edge-labelled rendering such as "x1-4*x2-5*(1-x1-2)".
  std::string to_string_edges(int n) const;
  /// Coordinate-labelled rendering such as "x1*(1-x2)", 1-based.
  std::string to_string_coords() const;
};

/// Product of the listed edge variables.
CertificatePolynomial edge_monomial(int n, std::span<const Edge> edges);
/// Product of (1 - x_e) over the listed edges.
CertificatePolynomial edge_complement_product(int n, std::span<const Edge> edges);

std::string to_string(CertificatePolynomial::Kind kind);

}  // namespace tsppsd
