#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tsppsd/numbers.hpp"

namespace tsppsd {

/// Mixing weight a in f = a h_U + (1 - a) 1: a rational, or the irrational sqrt(n).
struct AValue {
  enum class Kind { Rational, SqrtN };
  Kind kind = Kind::Rational;
  Rational value = 1;  // used when kind == Rational

  static AValue rational(Rational q) { return {Kind::Rational, std::move(q)}; }
  static AValue sqrt_n() { return {Kind::SqrtN, Rational(0)}; }

  bool is_rational() const { return kind == Kind::Rational; }
  double to_double(int n) const;
  /// "p/q" or "sqrt-n".
  std::string label() const;
};

/// Accepts a rational string or the literal "sqrt-n".
AValue parse_a_value(const std::string& text);

struct EigenFamily {
  std::string label;
  long multiplicity = 0;
  /// Eigenvalue of A_U alone (a = 1).
  Rational lambda_U;
  /// Eigenvalue of a A_U + (1 - a) A_1; exact when a is rational.
  std::optional<Rational> eigenvalue;
  double eigenvalue_float = 0.0;
};

/// The two eigenvalues not covered by the tabled families, (c +- sqrt d) / denominator.
/// c and d are polynomials in a: c = c0 + c1 a, d = d0 + d1 a + d2 a^2.
struct ResidualPair {
  BigInt c0, c1;
  BigInt d0, d1, d2;
  BigInt denominator;
  /// Exact c and d for rational a.
  std::optional<Rational> c;
  std::optional<Rational> d;
  double c_float = 0.0;
  double d_float = 0.0;
  /// Exact sign of d (computed in Q(sqrt n) when a = sqrt n).
  int d_sign = 0;
  bool complex = false;
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  /// Exact sign of lambda_minus; meaningless when complex.
  int lambda_minus_sign = 0;
};

struct SpectrumReport {
  int n = 0;
  int m = 0;
  AValue a;
  /// Star vectors first, then the five a-dependent families.
  std::vector<EigenFamily> families;
  ResidualPair residual;
  long multiplicity_sum = 0;  // all families, residual pair excluded
  bool multiplicity_ok = false;
  bool mixed_forms_agree = false;
};

/// Requires n >= 6 and 3 <= m <= n/2.
void check_spectrum_range(int n, int m);

SpectrumReport closed_form_spectrum(int n, int m, const AValue& a);
ResidualPair residual_pair(int n, int m, const AValue& a);

/// Mixed-family eigenvalue of A_U in factored and expanded form; equal as rationals.
Rational mixed_family_factored(int n, int m);
Rational mixed_family_expanded(int n, int m);

/// Explicit spanning vectors per family, in the k = 1 basis {1, x_12, x_13, ...}.
/// U is {1, ..., m}.
struct FamilyVectors {
  std::string label;
  std::vector<std::vector<Rational>> vectors;
};
std::vector<FamilyVectors> eigenvector_families(int n, int m);

/// All 4-cycle vectors x_ab - x_bc + x_cd - x_da inside the given vertex set.
std::vector<std::vector<Rational>> four_cycle_vectors(int n, const std::vector<int>& vertices);
/// 2 - sum_j x_ij for each vertex i.
std::vector<std::vector<Rational>> star_vectors(int n);

struct FamilyCheck {
  std::string label;
  std::size_t vectors = 0;
  std::size_t rank = 0;
  long multiplicity = 0;
  Rational eigenvalue;
  bool eigen_identity = false;  // A v == lambda v for every generated vector
  bool rank_matches = false;
};

struct EigenpairReport {
  int n = 0;
  int m = 0;
  Rational a;
  std::vector<FamilyCheck> families;
  Rational trace;
  Rational trace_expected;  // n + 1 for average-1 functionals
  /// trace(A) == sum of family eigenvalues + lambda_+ + lambda_- (from c/den).
  bool trace_accounting = false;
  /// trace(A^2) == sum of squared family eigenvalues + lambda_+^2 + lambda_-^2 (from c, d, den).
  bool square_trace_accounting = false;
  /// Largest |numeric - predicted| over the sorted spectrum; empty when skipped.
  std::optional<double> numeric_max_delta;
  bool ok() const;
};

/// Exact eigenpair verification on a A_U + (1 - a) A_1 built in closed form. The numeric
/// spectrum comparison runs when n <= numeric_max_n.
EigenpairReport verify_eigenpairs_exact(int n, int m, const Rational& a, int numeric_max_n = 14);

struct SqrtNEntry {
  int m = 0;
  double lambda_minus = 0.0;
  int lambda_minus_sign = 0;  // exact
  bool complex = false;
  double numeric_min = 0.0;
  double predicted_min = 0.0;
  double scale = 1.0;
  bool nonpositive = false;       // lambda_minus <= 1e-12 * scale, and exact sign <= 0
  bool numeric_agrees = false;    // |numeric_min - predicted_min| <= 1e-9 * scale
};

struct SqrtNReport {
  int n = 0;
  std::vector<SqrtNEntry> entries;
  bool ok() const;
};

/// For each 3 <= m <= n/2 (or just `only_m` when nonzero), the residual lambda_- at a = sqrt(n),
/// plus a numerical cross-check when `numeric` is set.
SqrtNReport sqrt_n_nonpositivity(int n, bool numeric = true, int only_m = 0);

struct OnesReport {
  int n = 0;
  Rational trace;
  bool stars_in_kernel = false;
  std::size_t four_cycle_rank = 0;
  bool four_cycle_identity = false;  // A v == 2/(n-1) v
  /// trace - (2/(n-1)) * rank: the one eigenvalue the table leaves out.
  Rational residual_eigenvalue;
  /// Numeric eigenvalues not within 1e-9 of 0 or 2/(n-1).
  std::vector<double> untabled_numeric;
  bool residual_matches_numeric = false;
  bool ok() const;
};

/// Requires 5 <= n <= 16 (all 4-cycles are generated for the rank measurement).
OnesReport ones_spectrum(int n);

struct SubtourPairReport {
  int n = 0;
  bool row_vanishes = false;          // row and column of x_12 are zero for U = {1, 2}
  std::optional<std::size_t> kernel_dim;  // dim - rank, when the exact rank was computed
  bool ok() const;
};

/// U = {1, 2}: the x_12 coordinate is an extra kernel vector beyond the n stars.
/// The exact rank is computed when n <= exact_rank_max_n.
SubtourPairReport subtour_pair_kernel(int n, int exact_rank_max_n = 14);

/// n + m(m-3)/2 + (n-m)(n-m-3)/2 + (n-m-1)(m-1) + (m-1) + (n-m-1).
long tabled_multiplicity_sum(int n, int m);

}  // namespace tsppsd
