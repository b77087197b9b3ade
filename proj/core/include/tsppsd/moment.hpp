#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "tsppsd/certificate.hpp"
#include "tsppsd/cycles.hpp"
#include "tsppsd/functionals.hpp"
#include "tsppsd/matrix.hpp"

namespace tsppsd {

/// Multiset of coordinates (edge indices for tours), sorted nondecreasing.
/// The empty multiset is the constant monomial 1.
using Monomial = std::vector<int>;

/// All monomials of degree <= k in `coords` variables, ordered by degree and
/// then lexicographically; the degree-1 block follows coordinate order.
class MonomialBasis {
 public:
  MonomialBasis() = default;
  MonomialBasis(int coords, int k, std::size_t max_size = Limits{}.max_basis);

  int coords() const { return coords_; }
  int k() const { return k_; }
  std::size_t size() const { return monomials_.size(); }
  const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
  const std::vector<Monomial>& monomials() const { return monomials_; }
  /// Index of a monomial; throws if absent.
  std::size_t index_of(const Monomial& m) const;
  bool contains(const Monomial& m) const { return lookup_.count(m) != 0; }

  /// C(coords + k, k) without materializing.
  static BigInt size_for(int coords, int k);

 private:
  int coords_ = 0;
  int k_ = 0;
  std::vector<Monomial> monomials_;
  std::map<Monomial, std::size_t> lookup_;
};

/// Finite point set in Q^d.
struct GroundSet {
  int d = 0;
  std::vector<std::vector<Rational>> points;

  /// Nonempty, consistent dimension, duplicate-free.
  void validate() const;
  bool is_zero_one() const;
  std::size_t size() const { return points.size(); }
};

/// Affine function on Q^d.
struct AffineFunction {
  Rational constant = 0;
  std::vector<Rational> coeffs;

  Rational evaluate(std::span<const Rational> x) const;
};

/// Matrix of q_f(h) = (1/|X|) sum_x f(x) h(x)^2 in a monomial basis.
struct MomentMatrix {
  int n = 0;  // cities; 0 for a generic ground set
  int k = 0;
  MonomialBasis basis;
  RationalMatrix entries;

  std::size_t dim() const { return entries.dim(); }
  bool over_tours() const { return n > 0; }
  std::string label(std::size_t i) const;
  std::vector<std::string> labels() const;
};

/// Coefficients of the polynomial in `basis`, or throws when a term is outside it.
std::vector<Rational> coefficients_in_basis(const CertificatePolynomial& p, const MonomialBasis& basis);

/// Enumerated moment matrix over all tours of K_n.
MomentMatrix moment_matrix_enumerated(const LinearFunctional& f, int k, const Limits& limits = {});
/// Same, with arbitrary function values supplied per tour in enumeration order.
MomentMatrix moment_matrix_enumerated(int n, std::span<const Rational> values_per_cycle, int k,
                                      const Limits& limits = {});
/// Enumerated moment matrix over a generic finite ground set.
MomentMatrix moment_matrix_enumerated(const GroundSet& X, std::span<const Rational> f_values, int k,
                                      const Limits& limits = {});

/// Closed-form moment matrix from tour-containment counts; no enumeration.
/// Exact for every k; `k = 1` is the default and the common case.
MomentMatrix moment_matrix_closed_form(const LinearFunctional& f, int k = 1, const Limits& limits = {});
MomentMatrix moment_matrix_closed_form_k1(const LinearFunctional& f);

/// Double-precision closed form for k = 1; used by spectral cross-checks at large n.
RealMatrix moment_matrix_closed_form_k1_real(const LinearFunctional& f);

/// Probability that a random tour contains every edge in E, as a rational.
Rational containment_probability(int n, std::span<const Edge> edges);

Rational trace_of(const MomentMatrix& M);
/// C(n + k, k): number of edge multisets of size <= k inside one tour.
BigInt trace_multiset_count(int n, int k);
/// trace(M) == C(n+k, k) * average.
bool trace_identity_holds(const MomentMatrix& M, const Rational& average);

/// (1/|X|) sum_x f(x) p(x)^2 over all tours, by enumeration.
Rational quadratic_form_value(const LinearFunctional& f, const CertificatePolynomial& p,
                              const Limits& limits = {});
/// Generic ground-set version.
Rational quadratic_form_value(const GroundSet& X, std::span<const Rational> f_values,
                              const CertificatePolynomial& p);

/// p_y: 1 at y, 0 on every other point of a 0/1 ground set.
CertificatePolynomial zero_one_certificate(std::span<const Rational> y, const GroundSet& X);

}  // namespace tsppsd
