#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "oracle.hpp"
#include "tsppsd/errors.hpp"
#include "tsppsd/spectra.hpp"

using namespace tsppsd;

namespace {

std::vector<int> first(int m) {
  std::vector<int> U;
  for (int v = 1; v <= m; ++v) U.push_back(v);
  return U;
}

/// a A_U + (1 - a) A_1 from brute-force tour sums.
RationalMatrix mixed_matrix(int n, int m, const Rational& a) {
  const auto all = oracle::tours(n);
  return affine_combination(a, oracle::moment_k1(make_subtour(n, first(m)), all), 1 - a,
                            oracle::moment_k1(make_ones(n), all));
}

std::vector<double> eigenvalues(const RationalMatrix& M) {
  Eigen::MatrixXd A(M.dim(), M.dim());
  for (std::size_t i = 0; i < M.dim(); ++i) {
    for (std::size_t j = 0; j < M.dim(); ++j) A(i, j) = M(i, j).get_d();
  }
  Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(A).eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace

TEST_CASE("multiplicities fill the space minus the residual pair") {
  for (int n = 6; n <= 60; ++n) {
    for (int m = 3; 2 * m <= n; ++m) {
      CHECK(tabled_multiplicity_sum(n, m) == n * (n - 1) / 2 - 1);
      CHECK(mixed_family_factored(n, m) == mixed_family_expanded(n, m));
    }
  }
  CHECK_THROWS_AS(check_spectrum_range(7, 4), InvalidArgument);
  CHECK_THROWS_AS(check_spectrum_range(5, 2), InvalidArgument);
}

TEST_CASE("tabled eigenpairs on the brute-force matrix") {
  for (int n : {6, 7, 8}) {
    for (int m = 3; 2 * m <= n; ++m) {
      for (long a : {0L, 1L, 5L}) {
        const RationalMatrix A = mixed_matrix(n, m, a);
        const SpectrumReport rep = closed_form_spectrum(n, m, AValue::rational(a));
        for (const auto& fam : eigenvector_families(n, m)) {
          const auto it = std::find_if(rep.families.begin(), rep.families.end(),
                                       [&](const EigenFamily& f) { return f.label == fam.label; });
          REQUIRE(it != rep.families.end());
          for (const auto& v : fam.vectors) {
            const auto Av = A.multiply(v);
            for (std::size_t i = 0; i < v.size(); ++i) CHECK(Av[i] == *it->eigenvalue * v[i]);
          }
          if (!fam.vectors.empty()) CHECK(exact_rank(fam.vectors) == static_cast<std::size_t>(it->multiplicity));
        }
      }
    }
  }
}

TEST_CASE("residual pair matches what the numerical spectrum leaves over") {
  for (int n : {7, 8}) {
    const int m = 3;
    for (long a : {0L, 1L, 5L}) {
      auto numeric = eigenvalues(mixed_matrix(n, m, a));
      const SpectrumReport rep = closed_form_spectrum(n, m, AValue::rational(a));
      std::vector<double> predicted{rep.residual.lambda_plus, rep.residual.lambda_minus};
      for (const auto& f : rep.families) {
        for (long t = 0; t < f.multiplicity; ++t) predicted.push_back(f.eigenvalue->get_d());
      }
      REQUIRE(predicted.size() == numeric.size());
      std::sort(predicted.begin(), predicted.end());
      for (std::size_t i = 0; i < numeric.size(); ++i) CHECK(numeric[i] == doctest::Approx(predicted[i]).epsilon(1e-9));
    }
  }
}

TEST_CASE("library eigenpair report") {
  const EigenpairReport r = verify_eigenpairs_exact(9, 4, 5);
  CHECK(r.ok());
  CHECK(r.trace == r.trace_expected);
  REQUIRE(r.numeric_max_delta.has_value());
  CHECK(*r.numeric_max_delta < 1e-9);
}

TEST_CASE("sqrt-n residual is nonpositive") {
  const SpectrumReport rep = closed_form_spectrum(12, 4, AValue::sqrt_n());
  CHECK_FALSE(rep.residual.complex);
  CHECK(rep.residual.lambda_minus < 0);
  CHECK(rep.residual.lambda_minus_sign == -1);
  const SqrtNReport r = sqrt_n_nonpositivity(12);
  CHECK(r.ok());
  CHECK(r.entries.size() == 4);
  CHECK(sqrt_n_nonpositivity(14, true, 5).entries.size() == 1);
}

TEST_CASE("a values") {
  CHECK(parse_a_value("sqrt-n").kind == AValue::Kind::SqrtN);
  CHECK(parse_a_value("3/2").value == Rational(3, 2));
  CHECK(parse_a_value("sqrt-n").to_double(16) == doctest::Approx(4.0));
  CHECK_THROWS_AS(parse_a_value("pi"), InvalidArgument);
}

TEST_CASE("ones spectrum: one eigenvalue beyond the table") {
  const int n = 6;
  const auto numeric = eigenvalues(oracle::moment_k1(make_ones(n), oracle::tours(n)));
  const double base = 2.0 / (n - 1);
  std::vector<double> other;
  for (double x : numeric) {
    if (std::abs(x) > 1e-9 && std::abs(x - base) > 1e-9) other.push_back(x);
  }
  REQUIRE(other.size() == 1);
  const OnesReport r = ones_spectrum(n);
  CHECK(r.ok());
  CHECK(r.residual_eigenvalue.get_d() == doctest::Approx(other[0]));
  CHECK(r.residual_eigenvalue == Rational(17, 5));
}

TEST_CASE("two-vertex subtour has one extra kernel vector") {
  for (int n = 6; n <= 8; ++n) {
    const RationalMatrix A = oracle::moment_k1(make_subtour(n, {1, 2}), oracle::tours(n));
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < A.dim(); ++i) rows.emplace_back(A.row(i).begin(), A.row(i).end());
    CHECK(A.dim() - exact_rank(rows) == static_cast<std::size_t>(n + 1));
    const SubtourPairReport r = subtour_pair_kernel(n);
    CHECK(r.ok());
    CHECK(*r.kernel_dim == static_cast<std::size_t>(n + 1));
  }
}
