#include <doctest.h>

#include <Eigen/Dense>

#include <random>

#include "oracle.hpp"
#include "tsppsd/errors.hpp"
#include "tsppsd/psd.hpp"

using namespace tsppsd;

namespace {

RationalMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  RationalMatrix M(rows.size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (long x : row) M(r, c++) = x;
    ++r;
  }
  return M;
}

Rational form(const RationalMatrix& M, const std::vector<Rational>& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < M.dim(); ++i) {
    for (std::size_t j = 0; j < M.dim(); ++j) s += v[i] * M(i, j) * v[j];
  }
  return s;
}

double eigen_min(const RationalMatrix& M) {
  Eigen::MatrixXd A(M.dim(), M.dim());
  for (std::size_t i = 0; i < M.dim(); ++i) {
    for (std::size_t j = 0; j < M.dim(); ++j) A(i, j) = M(i, j).get_d();
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(A).eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("small exact verdicts") {
  auto v = is_psd_exact(from_rows({{1, 0, 0}, {0, 0, 0}, {0, 0, 2}}));
  CHECK(v.is_psd());
  CHECK(v.rank == 2);
  CHECK(is_psd_exact(from_rows({{1, 1}, {1, 1}})).rank == 1);

  for (auto M : {from_rows({{1, 2}, {2, 1}}), from_rows({{0, 1}, {1, 0}}), from_rows({{2, 0}, {0, -1}}),
                 from_rows({{4, 2, 2}, {2, 1, 1}, {2, 1, 0}})}) {
    const PsdVerdict w = is_psd_exact(M);
    REQUIRE_FALSE(w.is_psd());
    REQUIRE(w.witness.size() == M.dim());
    CHECK(form(M, w.witness) < 0);
    CHECK(*w.witness_value == form(M, w.witness));
  }
  CHECK_THROWS_AS(is_psd_exact(from_rows({{1, 2}, {3, 1}})), InvalidArgument);
}

TEST_CASE("exact and float agree away from the threshold") {
  std::mt19937_64 rng(0);
  std::uniform_int_distribution<int> d(-3, 3);
  int compared = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t dim = 2 + trial % 7;
    const std::size_t rank = 1 + static_cast<std::size_t>(trial) % dim;
    RationalMatrix B(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < rank; ++j) B(i, j) = d(rng);
    }
    RationalMatrix M(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t t = 0; t < dim; ++t) M(i, j) += B(i, t) * B(j, t);
      }
    }
    if (trial % 2) {
      for (std::size_t i = 0; i < dim; ++i) M(i, i) -= 1;
    }
    const double lmin = eigen_min(M);
    const double norm = infinity_norm(to_real(M));
    const PsdVerdict e = is_psd_exact(M);
    if (std::abs(lmin) > 10 * kDefaultFloatTolerance * std::max(1.0, norm)) {
      CHECK(e.is_psd() == (lmin > 0));
      CHECK(is_psd_float(M).is_psd() == e.is_psd());
      ++compared;
    }
    if (!e.is_psd()) CHECK(form(M, e.witness) < 0);
  }
  CHECK(compared > 30);
}

TEST_CASE("float witnesses are exact certificates when present") {
  const RationalMatrix M = from_rows({{2, 3, 0}, {3, 2, 0}, {0, 0, 5}});
  const PsdVerdict v = is_psd_float(M);
  CHECK_FALSE(v.is_psd());
  CHECK(v.tolerance.has_value());
  REQUIRE_FALSE(v.witness.empty());
  CHECK(form(M, v.witness) < 0);
}

TEST_CASE("facet functionals are in P_1") {
  for (int n = 5; n <= 12; ++n) {
    CHECK(membership_P1(make_ones(n)).is_psd());
    CHECK(membership_P1(make_edge_bound(n, Edge(1, 2), EdgeSide::Upper)).is_psd());
    CHECK(membership_P1(make_edge_bound(n, Edge(1, 2), EdgeSide::Lower)).is_psd());
    for (int m = 2; 2 * m <= n; ++m) {
      std::vector<int> U;
      for (int v = 1; v <= m; ++v) U.push_back(v);
      CHECK(membership_P1(make_subtour(n, U)).is_psd());
      CHECK(membership_P1(make_subtour(n, U), PsdMethod::Float).is_psd());
    }
  }
}

TEST_CASE("an exterior functional is rejected with a checkable witness") {
  const int n = 6;
  // Put all the weight on one edge: 1 - 5/2 x_12 + ... has negative values but average 1.
  LinearFunctional f(n);
  f.set_constant(6);
  f.set_coeff(Edge(1, 2), Rational(-25, 2));
  REQUIRE(average_on_X(f) == 1);
  const PsdVerdict v = membership_P1(f);
  REQUIRE_FALSE(v.is_psd());
  const RationalMatrix M = oracle::moment_k1(f, oracle::tours(n));
  CHECK(form(M, v.witness) < 0);
  // rejected at k = 1, so rejected at k = 2
  CHECK_FALSE(membership_Pk_enumerated(f, 2).is_psd());
}

TEST_CASE("nonnegative functionals pass at k = 2") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> w(0, 5);
  for (int n = 5; n <= 6; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      FacetSpec c;
      c.kind = FacetSpec::Kind::Combination;
      std::vector<int> weights{1 + w(rng), w(rng), w(rng)};
      const int total = weights[0] + weights[1] + weights[2];
      FacetSpec a, b, o;
      a.kind = FacetSpec::Kind::Subtour;
      a.n = n;
      a.U = {1, 2};
      b.kind = FacetSpec::Kind::EdgeLower;
      b.n = n;
      b.edge = Edge(2, 3);
      o.kind = FacetSpec::Kind::Ones;
      o.n = n;
      c.terms = {{ratio(weights[0], total), a}, {ratio(weights[1], total), b}, {ratio(weights[2], total), o}};
      const LinearFunctional f = c.build();
      CHECK(membership_Pk_enumerated(f, 2).is_psd());
      CHECK(membership_P1(f).is_psd());
    }
  }
}

TEST_CASE("membership preconditions") {
  CHECK_THROWS_AS(membership_P1(make_ones(6).scaled(2)), InvalidArgument);
  Limits small;
  small.exact_max_n = 8;
  CHECK_THROWS_AS(membership_P1(make_ones(9), PsdMethod::Exact, small), ResourceLimit);
}

TEST_CASE("boundary certificates vanish against brute force") {
  for (int n = 6; n <= 7; ++n) {
    const auto all = oracle::tours(n);
    auto q = [&](const FacetSpec& spec) {
      const LinearFunctional f = spec.build();
      const CertificatePolynomial p = boundary_certificate(spec);
      Rational s = 0;
      for (const auto& t : all) {
        bool one = true;
        for (int c : p.positive) one = one && t.has(edge_at(n, c).u, edge_at(n, c).v);
        for (int c : p.complemented) one = one && !t.has(edge_at(n, c).u, edge_at(n, c).v);
        if (one) s += oracle::value(f, t);
      }
      return s;
    };
    FacetSpec s;
    s.kind = FacetSpec::Kind::Subtour;
    s.n = n;
    s.U = {2, 4, 5};
    CHECK(q(s) == 0);
    CHECK(boundary_certificate(s).degree() == 2);
    FacetSpec e;
    e.kind = FacetSpec::Kind::EdgeUpper;
    e.n = n;
    e.edge = Edge(3, 5);
    CHECK(q(e) == 0);
    e.kind = FacetSpec::Kind::EdgeLower;
    CHECK(q(e) == 0);
    FacetSpec m;
    m.kind = FacetSpec::Kind::TwoMatching;
    m.n = n;
    m.U = {1, 2, 3};
    m.F = {Edge(3, 6), Edge(1, 4), Edge(2, 5)};
    CHECK(q(m) == 0);
    CHECK(boundary_certificate(m).degree() == 4);
    CHECK(verify_certificate(m.build(), boundary_certificate(m)));
  }
  FacetSpec o;
  o.kind = FacetSpec::Kind::Ones;
  o.n = 6;
  CHECK_THROWS_AS(boundary_certificate(o), InvalidArgument);
}

TEST_CASE("0/1 collapse") {
  GroundSet X;
  X.d = 3;
  X.points = {{0, 0, 0}, {1, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 1, 1}};
  AffineFunction f;
  f.constant = -1;
  f.coeffs = {1, 1, 1};
  const CollapseResult r = zero_one_collapse_check(X, f);
  CHECK_FALSE(r.in_Q);
  CHECK(r.argmin == 0);
  CHECK(r.f_min == -1);
  CHECK(*r.q_value == Rational(-1, 5));
  CHECK(r.identity_holds);
  f.constant = 0;
  CHECK(zero_one_collapse_check(X, f).in_Q);
}
