#include "tsppsd/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "tsppsd/eigen_solver.hpp"
#include "tsppsd/errors.hpp"
#include "tsppsd/functionals.hpp"
#include "tsppsd/moment.hpp"
#include "tsppsd/psd.hpp"

namespace tsppsd {

// ---------------------------------------------------------------------------
// a values

double AValue::to_double(int n) const {
  return kind == Kind::SqrtN ? std::sqrt(static_cast<double>(n)) : value.get_d();
}

std::string AValue::label() const { return kind == Kind::SqrtN ? "sqrt-n" : to_pq_string(value); }

AValue parse_a_value(const std::string& text) {
  if (text == "sqrt-n") return AValue::sqrt_n();
  return AValue::rational(parse_rational(text));
}

// ---------------------------------------------------------------------------
// Residual polynomials, one term per printed monomial: coefficient * a^i m^j n^k.

namespace {

struct Term {
  int coeff;
  int a, m, n;
};

// c
constexpr Term kC[] = {
    {-8, 1, 2, 1}, {16, 1, 2, 0}, {8, 1, 1, 2}, {-16, 1, 1, 1}, {-2, 1, 0, 3}, {4, 1, 0, 2},
    {2, 1, 0, 1},  {-4, 1, 0, 0}, {-3, 0, 2, 3}, {14, 0, 2, 2}, {-13, 0, 2, 1}, {-6, 0, 2, 0},
    {3, 0, 1, 4},  {-14, 0, 1, 3}, {13, 0, 1, 2}, {6, 0, 1, 1}, {-3, 0, 0, 4}, {17, 0, 0, 3},
    {-27, 0, 0, 2}, {7, 0, 0, 1}, {6, 0, 0, 0},
};

// d / (n^2 - 3n + 2)
constexpr Term kD[] = {
    {24, 2, 4, 2},   {-128, 2, 4, 1}, {200, 2, 4, 0},  {-48, 2, 3, 3},  {256, 2, 3, 2},  {-400, 2, 3, 1},
    {24, 2, 2, 4},   {-104, 2, 2, 3}, {80, 2, 2, 2},   {232, 2, 2, 1},  {-136, 2, 2, 0}, {-24, 2, 1, 4},
    {120, 2, 1, 3},  {-232, 2, 1, 2}, {136, 2, 1, 1},  {4, 2, 0, 4},    {-4, 2, 0, 3},   {-12, 2, 0, 2},
    {4, 2, 0, 1},    {8, 2, 0, 0},    {-48, 1, 4, 2},  {240, 1, 4, 1},  {-288, 1, 4, 0}, {96, 1, 3, 3},
    {-480, 1, 3, 2}, {576, 1, 3, 1},  {-60, 1, 2, 4},  {252, 1, 2, 3},  {-60, 1, 2, 2},  {-588, 1, 2, 1},
    {360, 1, 2, 0},  {12, 1, 1, 5},   {-12, 1, 1, 4},  {-228, 1, 1, 3}, {588, 1, 1, 2},  {-360, 1, 1, 1},
    {-12, 1, 0, 5},  {72, 1, 0, 4},   {-120, 1, 0, 3}, {132, 1, 0, 1},  {-72, 1, 0, 0},  {9, 0, 4, 4},
    {-81, 0, 4, 3},  {261, 0, 4, 2},  {-351, 0, 4, 1}, {162, 0, 4, 0},  {-18, 0, 3, 5},  {162, 0, 3, 4},
    {-522, 0, 3, 3}, {702, 0, 3, 2},  {-324, 0, 3, 1}, {9, 0, 2, 6},    {-63, 0, 2, 5},  {81, 0, 2, 4},
    {333, 0, 2, 3},  {-1062, 0, 2, 2}, {1026, 0, 2, 1}, {-324, 0, 2, 0}, {-18, 0, 1, 6},  {180, 0, 1, 5},
    {-684, 0, 1, 4}, {1224, 0, 1, 3}, {-1026, 0, 1, 2}, {324, 0, 1, 1},  {9, 0, 0, 6},    {-99, 0, 0, 5},
    {432, 0, 0, 4},  {-954, 0, 0, 3}, {1125, 0, 0, 2}, {-675, 0, 0, 1}, {162, 0, 0, 0},
};

template <std::size_t N>
BigInt coefficient_of_a(const Term (&terms)[N], int power, int m, int n) {
  BigInt sum = 0;
  for (const auto& t : terms) {
    if (t.a != power) continue;
    BigInt mm, nn;
    mpz_ui_pow_ui(mm.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(t.m));
    mpz_ui_pow_ui(nn.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(t.n));
    sum += t.coeff * mm * nn;
  }
  return sum;
}

/// Sign of A + B sqrt(n).
int sign_surd(const Rational& A, const Rational& B, int n) {
  const int sa = sgn(A), sb = sgn(B);
  if (sa >= 0 && sb >= 0) return (sa > 0 || sb > 0) ? 1 : 0;
  if (sa <= 0 && sb <= 0) return -1;
  const int cmp = sgn(Rational(A * A - n * B * B));
  return sa > 0 ? cmp : -cmp;
}

Rational two_over(int n) { return ratio(2, n - 1); }

}  // namespace

void check_spectrum_range(int n, int m) {
  if (n < 6) throw InvalidArgument("closed-form spectrum needs n >= 6");
  if (m < 3 || 2 * m > n) throw InvalidArgument("closed-form spectrum needs 3 <= m <= n/2");
}

ResidualPair residual_pair(int n, int m, const AValue& a) {
  ResidualPair r;
  r.c0 = coefficient_of_a(kC, 0, m, n);
  r.c1 = coefficient_of_a(kC, 1, m, n);
  const BigInt factor = BigInt(n) * n - 3 * n + 2;
  r.d0 = factor * coefficient_of_a(kD, 0, m, n);
  r.d1 = factor * coefficient_of_a(kD, 1, m, n);
  r.d2 = factor * coefficient_of_a(kD, 2, m, n);
  r.denominator = 2 * (BigInt(m) * n * n * n - BigInt(n) * n * n - 5 * BigInt(m) * n * n + 6 * BigInt(n) * n -
                       BigInt(m) * m * n * n - 11 * n + 5 * BigInt(m) * m * n + 6 * m * n + 6 - 6 * m * m) *
                  (n - 1);
  if (r.denominator == 0) throw InvalidArgument("residual-pair denominator vanishes");

  int c_sign = 0;
  // Q(sqrt n) coordinates: c = C0 + C1 s, d = D0 + D1 s with s = a when a = sqrt n.
  Rational C0, C1, D0, D1;
  if (a.is_rational()) {
    const Rational& q = a.value;
    r.c = Rational(r.c0) + Rational(r.c1) * q;
    r.d = Rational(r.d0) + Rational(r.d1) * q + Rational(r.d2) * q * q;
    C0 = *r.c;
    C1 = 0;
    D0 = *r.d;
    D1 = 0;
    r.c_float = r.c->get_d();
    r.d_float = r.d->get_d();
  } else {
    C0 = r.c0;
    C1 = r.c1;
    D0 = Rational(r.d0) + Rational(r.d2) * n;
    D1 = r.d1;
    const double s = std::sqrt(static_cast<double>(n));
    r.c_float = r.c0.get_d() + r.c1.get_d() * s;
    r.d_float = D0.get_d() + D1.get_d() * s;
  }
  c_sign = sign_surd(C0, C1, n);
  r.d_sign = sign_surd(D0, D1, n);
  r.complex = r.d_sign < 0;
  const double den = r.denominator.get_d();
  const double root = r.complex ? 0.0 : std::sqrt(std::max(0.0, r.d_float));
  r.lambda_plus = (r.c_float + root) / den;
  r.lambda_minus = (r.c_float - root) / den;
  if (!r.complex) {
    // sign(c - sqrt d): nonpositive when c <= 0, otherwise sign(c^2 - d).
    int num_sign;
    if (c_sign < 0) num_sign = -1;
    else if (c_sign == 0) num_sign = r.d_sign == 0 ? 0 : -1;
    else num_sign = sign_surd(C0 * C0 + n * C1 * C1 - D0, 2 * C0 * C1 - D1, n);
    r.lambda_minus_sign = num_sign * sgn(r.denominator);
  }
  return r;
}

Rational mixed_family_factored(int n, int m) {
  return ratio(BigInt(2) * (BigInt(m) * (n - 3) * (n - m) - BigInt(n - 2) * (n - 2)),
               BigInt(n - 2) * (n - 3) * (m - 1) * (n - m - 1));
}

Rational mixed_family_expanded(int n, int m) {
  const BigInt N = n, M = m;
  return ratio(2 * (M * N * N - N * M * M - N * N + 4 * N - 3 * M * N + 3 * M * M - 4),
               (N - 2) * (N - 3) * (M * N - M * M - N + 1));
}

long tabled_multiplicity_sum(int n, int m) {
  return n + static_cast<long>(m) * (m - 3) / 2 + static_cast<long>(n - m) * (n - m - 3) / 2 +
         static_cast<long>(n - m - 1) * (m - 1) + (m - 1) + (n - m - 1);
}

SpectrumReport closed_form_spectrum(int n, int m, const AValue& a) {
  check_spectrum_range(n, m);
  SpectrumReport rep;
  rep.n = n;
  rep.m = m;
  rep.a = a;
  const Rational base = two_over(n);
  auto family = [&](std::string label, long mult, Rational lambda_U) {
    EigenFamily f;
    f.label = std::move(label);
    f.multiplicity = mult;
    f.lambda_U = lambda_U;
    if (f.label == "star") {
      f.eigenvalue = a.is_rational() ? std::optional<Rational>(Rational(0)) : std::nullopt;
      f.eigenvalue_float = 0.0;
    } else {
      if (a.is_rational()) f.eigenvalue = a.value * lambda_U + (1 - a.value) * base;
      const double ad = a.to_double(n);
      f.eigenvalue_float = ad * lambda_U.get_d() + (1 - ad) * base.get_d();
    }
    rep.families.push_back(std::move(f));
  };
  family("star", n, 0);
  family("four-cycle-in-U", static_cast<long>(m) * (m - 3) / 2, ratio(2 * (m - 2), (n - 2) * (m - 1)));
  family("four-cycle-outside-U", static_cast<long>(n - m) * (n - m - 3) / 2,
         ratio(2 * (n - m - 2), (n - 2) * (n - m - 1)));
  family("mixed-four-cycle", static_cast<long>(n - m - 1) * (m - 1), mixed_family_factored(n, m));
  family("pair-difference-in-U", m - 1, ratio(2 * (m - 2), (n - 3) * (m - 1)));
  family("pair-difference-outside-U", n - m - 1, ratio(2 * (n - m - 2), (n - 3) * (n - m - 1)));
  for (const auto& f : rep.families) rep.multiplicity_sum += f.multiplicity;
  rep.multiplicity_ok = rep.multiplicity_sum == static_cast<long>(n) * (n - 1) / 2 - 1 &&
                        rep.multiplicity_sum == tabled_multiplicity_sum(n, m);
  rep.mixed_forms_agree = mixed_family_factored(n, m) == mixed_family_expanded(n, m);
  rep.residual = residual_pair(n, m, a);
  return rep;
}

// ---------------------------------------------------------------------------
// Eigenvector generators

namespace {

std::size_t basis_dim(int n) { return static_cast<std::size_t>(num_edges(n)) + 1; }

void add_edge(std::vector<Rational>& v, int n, int a, int b, const Rational& coeff) {
  v[1 + static_cast<std::size_t>(edge_index(n, Edge(a, b)))] += coeff;
}

}  // namespace

std::vector<std::vector<Rational>> star_vectors(int n) {
  std::vector<std::vector<Rational>> out;
  for (int i = 1; i <= n; ++i) {
    std::vector<Rational> v(basis_dim(n), Rational(0));
    v[0] = 2;
    for (int j = 1; j <= n; ++j) {
      if (j != i) add_edge(v, n, i, j, -1);
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<Rational>> four_cycle_vectors(int n, const std::vector<int>& vertices) {
  std::vector<std::vector<Rational>> out;
  const std::size_t s = vertices.size();
  auto cycle = [&](int a, int b, int c, int d) {
    std::vector<Rational> v(basis_dim(n), Rational(0));
    add_edge(v, n, a, b, 1);
    add_edge(v, n, b, c, -1);
    add_edge(v, n, c, d, 1);
    add_edge(v, n, d, a, -1);
    out.push_back(std::move(v));
  };
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = i + 1; j < s; ++j) {
      for (std::size_t k = j + 1; k < s; ++k) {
        for (std::size_t l = k + 1; l < s; ++l) {
          const int a = vertices[i], b = vertices[j], c = vertices[k], d = vertices[l];
          cycle(a, b, c, d);
          cycle(a, b, d, c);
          cycle(a, c, b, d);
        }
      }
    }
  }
  return out;
}

std::vector<FamilyVectors> eigenvector_families(int n, int m) {
  check_spectrum_range(n, m);
  std::vector<int> U, W;
  for (int v = 1; v <= n; ++v) (v <= m ? U : W).push_back(v);
  std::vector<FamilyVectors> out;
  out.push_back({"star", star_vectors(n)});
  out.push_back({"four-cycle-in-U", four_cycle_vectors(n, U)});
  out.push_back({"four-cycle-outside-U", four_cycle_vectors(n, W)});

  FamilyVectors mixed{"mixed-four-cycle", {}};
  const int i = U.front(), p = W.front();
  for (std::size_t a = 1; a < U.size(); ++a) {
    for (std::size_t b = 1; b < W.size(); ++b) {
      const int j = U[a], q = W[b];
      std::vector<Rational> v(basis_dim(n), Rational(0));
      add_edge(v, n, i, p, 1);
      add_edge(v, n, i, q, -1);
      add_edge(v, n, j, q, 1);
      add_edge(v, n, j, p, -1);
      mixed.vectors.push_back(std::move(v));
    }
  }
  out.push_back(std::move(mixed));

  // Differences of two vertices on the same side, weighted so the vector is orthogonal to the stars.
  auto pair_family = [&](std::string label, const std::vector<int>& side, const std::vector<int>& other,
                         const Rational& weight) {
    FamilyVectors fam{std::move(label), {}};
    const int x = side.front();
    for (std::size_t t = 1; t < side.size(); ++t) {
      const int y = side[t];
      std::vector<Rational> v(basis_dim(n), Rational(0));
      for (int l : side) {
        if (l == x || l == y) continue;
        add_edge(v, n, x, l, weight);
        add_edge(v, n, y, l, -weight);
      }
      for (int o : other) {
        add_edge(v, n, x, o, -1);
        add_edge(v, n, y, o, 1);
      }
      fam.vectors.push_back(std::move(v));
    }
    out.push_back(std::move(fam));
  };
  pair_family("pair-difference-in-U", U, W, ratio(n - m, m - 2));
  pair_family("pair-difference-outside-U", W, U, ratio(m, n - m - 2));
  return out;
}

// ---------------------------------------------------------------------------
// Exact eigenpair verification

bool EigenpairReport::ok() const {
  for (const auto& f : families) {
    if (!f.eigen_identity || !f.rank_matches) return false;
  }
  if (numeric_max_delta && *numeric_max_delta > 1e-9) return false;
  return trace_accounting && square_trace_accounting && trace == trace_expected;
}

EigenpairReport verify_eigenpairs_exact(int n, int m, const Rational& a, int numeric_max_n) {
  check_spectrum_range(n, m);
  std::vector<int> U;
  for (int v = 1; v <= m; ++v) U.push_back(v);
  const LinearFunctional f = combine(a, make_subtour(n, U), 1 - a, make_ones(n));
  const RationalMatrix A = moment_matrix_closed_form_k1(f).entries;
  const SpectrumReport spec = closed_form_spectrum(n, m, AValue::rational(a));
  const auto generators = eigenvector_families(n, m);

  EigenpairReport rep;
  rep.n = n;
  rep.m = m;
  rep.a = a;
  Rational sum = 0, sum_sq = 0;
  for (std::size_t idx = 0; idx < spec.families.size(); ++idx) {
    const auto& fam = spec.families[idx];
    const auto& gen = generators[idx];
    FamilyCheck chk;
    chk.label = fam.label;
    chk.vectors = gen.vectors.size();
    chk.multiplicity = fam.multiplicity;
    chk.eigenvalue = *fam.eigenvalue;
    chk.eigen_identity = true;
    for (const auto& v : gen.vectors) {
      const auto Av = A.multiply(v);
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (Av[i] != chk.eigenvalue * v[i]) {
          chk.eigen_identity = false;
          break;
        }
      }
      if (!chk.eigen_identity) break;
    }
    chk.rank = exact_rank(gen.vectors);
    chk.rank_matches = static_cast<long>(chk.rank) == chk.multiplicity;
    sum += chk.eigenvalue * fam.multiplicity;
    sum_sq += chk.eigenvalue * chk.eigenvalue * fam.multiplicity;
    rep.families.push_back(std::move(chk));
  }

  const auto& r = spec.residual;
  const Rational den(r.denominator);
  rep.trace = A.trace();
  rep.trace_expected = n + 1;
  rep.trace_accounting = rep.trace == sum + 2 * *r.c / den;
  Rational frob = 0;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    for (std::size_t j = 0; j < A.dim(); ++j) frob += A(i, j) * A(i, j);
  }
  rep.square_trace_accounting = frob == sum_sq + 2 * (*r.c * *r.c + *r.d) / (den * den);

  if (n <= numeric_max_n) {
    const auto eig = symmetric_eigen(to_real(A), false);
    std::vector<double> predicted;
    for (const auto& fam : spec.families) predicted.insert(predicted.end(), fam.multiplicity, fam.eigenvalue_float);
    if (!r.complex) {
      predicted.push_back(r.lambda_plus);
      predicted.push_back(r.lambda_minus);
    }
    std::sort(predicted.begin(), predicted.end());
    double delta = predicted.size() == eig.values.size() ? 0.0 : INFINITY;
    for (std::size_t i = 0; i < std::min(predicted.size(), eig.values.size()); ++i) {
      delta = std::max(delta, std::abs(predicted[i] - eig.values[i]));
    }
    rep.numeric_max_delta = delta;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// a = sqrt(n)

bool SqrtNReport::ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const SqrtNEntry& e) { return e.nonpositive && e.numeric_agrees; });
}

SqrtNReport sqrt_n_nonpositivity(int n, bool numeric, int only_m) {
  if (n < 6) throw InvalidArgument("sqrt-n check needs n >= 6");
  if (only_m != 0) check_spectrum_range(n, only_m);
  SqrtNReport rep;
  rep.n = n;
  const double a = std::sqrt(static_cast<double>(n));
  RealMatrix ones;
  if (numeric) ones = moment_matrix_closed_form_k1_real(make_ones(n));
  for (int m = 3; 2 * m <= n; ++m) {
    if (only_m != 0 && m != only_m) continue;
    const SpectrumReport spec = closed_form_spectrum(n, m, AValue::sqrt_n());
    SqrtNEntry e;
    e.m = m;
    e.complex = spec.residual.complex;
    e.lambda_minus = spec.residual.lambda_minus;
    e.lambda_minus_sign = spec.residual.lambda_minus_sign;
    e.scale = std::max({1.0, std::abs(spec.residual.lambda_plus), std::abs(spec.residual.lambda_minus)});
    e.nonpositive = !e.complex && e.lambda_minus <= 1e-12 * e.scale && e.lambda_minus_sign <= 0;
    e.predicted_min = std::min(0.0, e.complex ? 0.0 : e.lambda_minus);
    for (const auto& fam : spec.families) e.predicted_min = std::min(e.predicted_min, fam.eigenvalue_float);
    if (numeric) {
      std::vector<int> U;
      for (int v = 1; v <= m; ++v) U.push_back(v);
      RealMatrix A = moment_matrix_closed_form_k1_real(make_subtour(n, U));
      for (std::size_t i = 0; i < A.dim(); ++i) {
        for (std::size_t j = 0; j < A.dim(); ++j) A(i, j) = a * A(i, j) + (1 - a) * ones(i, j);
      }
      e.numeric_min = symmetric_eigen(A, false).values.front();
      e.numeric_agrees = std::abs(e.numeric_min - e.predicted_min) <= 1e-9 * std::max(1.0, infinity_norm(A));
    } else {
      e.numeric_min = e.predicted_min;
      e.numeric_agrees = true;
    }
    rep.entries.push_back(e);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// All-ones functional

bool OnesReport::ok() const {
  return stars_in_kernel && four_cycle_identity && residual_matches_numeric &&
         four_cycle_rank == static_cast<std::size_t>(n * (n - 3) / 2) && trace == n + 1;
}

OnesReport ones_spectrum(int n) {
  if (n < 5 || n > 16) throw InvalidArgument("ones spectrum is implemented for 5 <= n <= 16");
  OnesReport rep;
  rep.n = n;
  const RationalMatrix A = moment_matrix_closed_form_k1(make_ones(n)).entries;
  rep.trace = A.trace();
  rep.stars_in_kernel = true;
  for (const auto& s : star_vectors(n)) {
    for (const auto& x : A.multiply(s)) {
      if (sgn(x) != 0) rep.stars_in_kernel = false;
    }
  }
  std::vector<int> all;
  for (int v = 1; v <= n; ++v) all.push_back(v);
  const auto cycles = four_cycle_vectors(n, all);
  const Rational lambda = two_over(n);
  rep.four_cycle_identity = true;
  for (const auto& v : cycles) {
    const auto Av = A.multiply(v);
    for (std::size_t i = 0; i < v.size() && rep.four_cycle_identity; ++i) {
      if (Av[i] != lambda * v[i]) rep.four_cycle_identity = false;
    }
  }
  rep.four_cycle_rank = exact_rank(cycles);
  rep.residual_eigenvalue = rep.trace - lambda * static_cast<long>(rep.four_cycle_rank);

  const auto eig = symmetric_eigen(to_real(A), false);
  for (double v : eig.values) {
    if (std::abs(v) > 1e-9 && std::abs(v - lambda.get_d()) > 1e-9) rep.untabled_numeric.push_back(v);
  }
  rep.residual_matches_numeric =
      rep.untabled_numeric.size() == 1 && std::abs(rep.untabled_numeric[0] - rep.residual_eigenvalue.get_d()) <= 1e-9;
  return rep;
}

// ---------------------------------------------------------------------------
// |U| = 2

bool SubtourPairReport::ok() const {
  return row_vanishes && (!kernel_dim || *kernel_dim == static_cast<std::size_t>(n) + 1);
}

SubtourPairReport subtour_pair_kernel(int n, int exact_rank_max_n) {
  if (n < 5) throw InvalidArgument("subtour with |U| = 2 needs n >= 5");
  SubtourPairReport rep;
  rep.n = n;
  const RationalMatrix A = moment_matrix_closed_form_k1(make_subtour(n, {1, 2})).entries;
  const std::size_t idx = 1 + static_cast<std::size_t>(edge_index(n, Edge(1, 2)));
  rep.row_vanishes = true;
  for (std::size_t j = 0; j < A.dim(); ++j) {
    if (sgn(A(idx, j)) != 0) rep.row_vanishes = false;
  }
  if (n <= exact_rank_max_n) {
    const PsdVerdict v = is_psd_exact(A);
    if (v.is_psd()) rep.kernel_dim = A.dim() - v.rank;
  }
  return rep;
}

}  // namespace tsppsd
