#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsppsd/cycles.hpp"
#include "tsppsd/numbers.hpp"

namespace tsppsd {

/// Affine function on the tours of K_n: constant + sum of per-edge coefficients.
class LinearFunctional {
 public:
  LinearFunctional() = default;
  explicit LinearFunctional(int n);

  int n() const { return n_; }
  const Rational& constant() const { return constant_; }
  void set_constant(Rational c) {
    c.canonicalize();
    constant_ = std::move(c);
  }

  const Rational& coeff(const Edge& e) const;
  const Rational& coeff(int edge_index) const { return coeffs_[static_cast<std::size_t>(edge_index)]; }
  void set_coeff(const Edge& e, Rational value);
  /// Dense coefficients in edge_index order.
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Rational evaluate(const HamiltonianCycle& cycle) const;
  /// Value on an arbitrary edge set (sum of its coefficients plus the constant).
  Rational evaluate(std::span<const Edge> edges) const;

  /// Same function on tours with the constant folded into the edges (constant / n each).
  LinearFunctional linearized() const;

  LinearFunctional scaled(const Rational& s) const;

  friend bool operator==(const LinearFunctional&, const LinearFunctional&) = default;

 private:
  int n_ = 0;
  Rational constant_ = 0;
  std::vector<Rational> coeffs_;
};

enum class EdgeSide { Upper, Lower };

/// Exact mean over all tours: constant + (2/(n-1)) * sum of coefficients.
Rational average_on_X(const LinearFunctional& f);

/// Cut constraint for U, normalized to average 1. Requires 2 <= |U| <= n-2.
LinearFunctional make_subtour(int n, const std::vector<int>& U);

/// The all-ones function as a linear form (1/n on every edge).
LinearFunctional make_ones(int n);

/// Upper: ((n-1)/(n-3)) (1 - x_e). Lower: ((n-1)/2) x_e. Both average 1.
LinearFunctional make_edge_bound(int n, const Edge& e, EdgeSide side);

/// 2-matching constraint for (U, F), normalized to average 1.
LinearFunctional make_two_matching(int n, const std::vector<int>& U, const std::vector<Edge>& F);

/// a f + b g.
LinearFunctional combine(const Rational& a, const LinearFunctional& f, const Rational& b,
                         const LinearFunctional& g);

/// Declarative description of a functional, as read from spec files.
struct FacetSpec {
  enum class Kind { Subtour, EdgeUpper, EdgeLower, TwoMatching, Ones, Explicit, Combination };

  struct Term;

  Kind kind = Kind::Ones;
  int n = 0;
  std::vector<int> U;
  std::optional<Edge> edge;
  std::vector<Edge> F;
  Rational constant = 0;
  std::vector<std::pair<Edge, Rational>> coeffs;
  std::vector<Term> terms;

  /// Throws InvalidArgument when the kind's invariants fail.
  void validate() const;
  LinearFunctional build() const;
  /// n of the functional; combinations take it from their terms.
  int resolved_n() const;
};

struct FacetSpec::Term {
  Rational scale;
  FacetSpec func;
};

std::string to_string(FacetSpec::Kind kind);
FacetSpec::Kind facet_kind_from_string(const std::string& name);

/// Sorted, duplicate-free vertex set; throws on ids outside 1..n.
std::vector<int> normalize_vertex_set(int n, const std::vector<int>& U);

}  // namespace tsppsd
