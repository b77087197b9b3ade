#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsppsd/certificate.hpp"
#include "tsppsd/functionals.hpp"
#include "tsppsd/matrix.hpp"
#include "tsppsd/moment.hpp"

namespace tsppsd {

enum class PsdStatus { PSD, NOT_PSD };

enum class PsdMethod { Exact, Float };

inline constexpr double kDefaultFloatTolerance = 1e-10;

struct PsdVerdict {
  PsdStatus status = PsdStatus::PSD;
  PsdMethod method = PsdMethod::Exact;
  /// v with v^T M v < 0, verified in rational arithmetic. May be empty on the
  /// float path when rounding the eigenvector did not yield a certificate.
  std::vector<Rational> witness;
  /// v^T M v for the witness.
  std::optional<Rational> witness_value;
  std::optional<double> min_eigenvalue_estimate;
  std::optional<double> tolerance;
  /// Exact: number of positive pivots before termination. Float: eigenvalues above tolerance.
  std::size_t rank = 0;

  bool is_psd() const { return status == PsdStatus::PSD; }
};

/// Symmetric pivoted LDL^T in rational arithmetic.
PsdVerdict is_psd_exact(const RationalMatrix& M);

/// Eigenvalue test: PSD iff lambda_min >= -tol * max(1, ||M||_inf).
PsdVerdict is_psd_float(const RealMatrix& M, double tol = kDefaultFloatTolerance);
/// Same, but a NOT_PSD verdict carries a rounded eigenvector re-verified against the exact matrix.
PsdVerdict is_psd_float(const RationalMatrix& M, double tol = kDefaultFloatTolerance);

/// P_1 membership from the closed-form k = 1 matrix. Requires average exactly 1
/// and n <= limits.exact_max_n.
PsdVerdict membership_P1(const LinearFunctional& f, PsdMethod method = PsdMethod::Exact,
                         const Limits& limits = {}, double tol = kDefaultFloatTolerance);

/// P_k membership from the enumerated degree-<=k moment matrix.
PsdVerdict membership_Pk_enumerated(const LinearFunctional& f, int k, PsdMethod method = PsdMethod::Exact,
                                    const Limits& limits = {}, double tol = kDefaultFloatTolerance);

/// Zero-pattern polynomial putting a facet functional on the boundary of P_k.
///   edge-upper: x_e        edge-lower: 1 - x_e
///   subtour:    path through U in sorted order, degree |U| - 1
///   two-matching: F edges, pairs of F-endpoints, then a path through the rest of U; degree s + |U|
CertificatePolynomial boundary_certificate(const FacetSpec& spec);

/// q_f(p) == 0 by enumeration.
bool verify_certificate(const LinearFunctional& f, const CertificatePolynomial& p, const Limits& limits = {});

struct CollapseResult {
  bool in_Q = true;
  Rational f_min;
  std::size_t argmin = 0;
  /// Present when f_min < 0.
  std::optional<CertificatePolynomial> certificate;
  std::optional<Rational> q_value;
  /// q_value == f(y)/|X|.
  bool identity_holds = true;
};

/// On a 0/1 ground set, a negative value at y is exposed by p_y with q_f(p_y) = f(y)/|X|.
CollapseResult zero_one_collapse_check(const GroundSet& X, std::span<const Rational> f_values);
CollapseResult zero_one_collapse_check(const GroundSet& X, const AffineFunction& f);

std::string to_string(PsdStatus status);
std::string to_string(PsdMethod method);

}  // namespace tsppsd
