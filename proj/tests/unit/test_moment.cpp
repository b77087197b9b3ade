#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "tsppsd/errors.hpp"
#include "tsppsd/moment.hpp"

using namespace tsppsd;

namespace {

LinearFunctional random_functional(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-7, 7), den(1, 5);
  LinearFunctional f(n);
  f.set_constant(ratio(num(rng), den(rng)));
  for (int i = 0; i < num_edges(n); ++i) f.set_coeff(edge_at(n, i), ratio(num(rng), den(rng)));
  return f;
}

}  // namespace

TEST_CASE("basis order and size") {
  const MonomialBasis b(6, 2);
  CHECK(b.size() == 28);
  CHECK(MonomialBasis::size_for(6, 2) == 28);
  CHECK(b[0].empty());
  CHECK(b[1] == Monomial{0});
  CHECK(b[6] == Monomial{5});
  CHECK(b[7] == Monomial{0, 0});
  CHECK(b[8] == Monomial{0, 1});
  CHECK(b.index_of(Monomial{1, 3}) > b.index_of(Monomial{1, 2}));
  CHECK_THROWS_AS(MonomialBasis(100, 3, 500), ResourceLimit);
}

TEST_CASE("k = 1 closed form equals the brute-force moment matrix") {
  std::mt19937_64 rng(0);
  for (int n = 5; n <= 7; ++n) {
    const auto all = oracle::tours(n);
    std::vector<LinearFunctional> fs{make_ones(n), make_subtour(n, {1, 2}), random_functional(n, rng),
                                     make_edge_bound(n, Edge(1, n), EdgeSide::Upper)};
    for (const auto& f : fs) {
      const MomentMatrix M = moment_matrix_closed_form_k1(f);
      CHECK(M.entries == oracle::moment_k1(f, all));
      CHECK(moment_matrix_enumerated(f, 1).entries == M.entries);
      CHECK(M.labels()[1] == "1-2");
    }
  }
}

TEST_CASE("k = 2 closed form spot entries against brute force") {
  const int n = 6;
  const auto all = oracle::tours(n);
  std::mt19937_64 rng(1);
  const LinearFunctional f = random_functional(n, rng);
  const MomentMatrix C = moment_matrix_closed_form(f, 2);
  CHECK(C.entries == moment_matrix_enumerated(f, 2).entries);
  // (x12 x34, x12 x56): tours containing 12, 34 and 56, weighted by f.
  Rational want = 0;
  for (const auto& t : all) {
    if (t.has(1, 2) && t.has(3, 4) && t.has(5, 6)) want += oracle::value(f, t);
  }
  want /= static_cast<long>(all.size());
  const auto i = C.basis.index_of(Monomial{edge_index(n, Edge(1, 2)), edge_index(n, Edge(3, 4))});
  const auto j = C.basis.index_of(Monomial{edge_index(n, Edge(1, 2)), edge_index(n, Edge(5, 6))});
  CHECK(C.entries(i, j) == want);
  // x12^2 collapses to x12 on tours
  const auto sq = C.basis.index_of(Monomial{0, 0});
  CHECK(C.entries(sq, 0) == C.entries(1, 0));
}

TEST_CASE("containment probabilities") {
  const std::vector<Edge> one{Edge(1, 2)};
  CHECK(containment_probability(6, one) == Rational(2, 5));
  const std::vector<Edge> pair{Edge(1, 2), Edge(3, 4)};
  CHECK(containment_probability(6, pair) == ratio(oracle::count_containing(oracle::tours(6), {{1, 2}, {3, 4}}), 60));
}

TEST_CASE("trace equals multiset count times average") {
  std::mt19937_64 rng(2);
  for (int n = 5; n <= 7; ++n) {
    for (int k = 1; k <= 2; ++k) {
      const LinearFunctional h = make_subtour(n, {1, 2});
      CHECK(trace_of(moment_matrix_enumerated(h, k)) == trace_multiset_count(n, k));
      const LinearFunctional f = random_functional(n, rng);
      const Rational avg = oracle::average(f, oracle::tours(n));
      CHECK(trace_of(moment_matrix_enumerated(f, k)) == avg * trace_multiset_count(n, k));
      CHECK(trace_identity_holds(moment_matrix_closed_form(f, k), avg));
    }
  }
  CHECK(trace_multiset_count(8, 2) == 45);
}

TEST_CASE("star vectors lie in the kernel") {
  for (int n : {6, 11, 17}) {
    const MomentMatrix M = moment_matrix_closed_form_k1(make_subtour(n, {1, 2, 3}));
    for (int i = 1; i <= n; ++i) {
      std::vector<Rational> s(M.dim(), Rational(0));
      s[0] = 2;
      for (int j = 1; j <= n; ++j) {
        if (j != i) s[static_cast<std::size_t>(edge_index(n, Edge(i, j)) + 1)] = -1;
      }
      for (const auto& x : M.entries.multiply(s)) CHECK(x == 0);
    }
  }
}

TEST_CASE("generic ground set: the square") {
  GroundSet X;
  X.d = 2;
  X.points = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  AffineFunction f;
  f.constant = Rational(-1, 2);
  f.coeffs = {1, 1};
  std::vector<Rational> values;
  for (const auto& x : X.points) values.push_back(f.evaluate(x));
  const CertificatePolynomial p = zero_one_certificate(X.points[0], X);
  // Oracle: (1/4) sum f(x) p(x)^2 with p = (1 - x1)(1 - x2).
  Rational want = 0;
  for (const auto& x : X.points) {
    const Rational px = (1 - x[0]) * (1 - x[1]);
    want += f.evaluate(x) * px * px;
  }
  want /= 4;
  CHECK(want == Rational(-1, 8));
  CHECK(quadratic_form_value(X, values, p) == want);
  const MomentMatrix M = moment_matrix_enumerated(X, values, 2);
  CHECK(M.dim() == 6);

  GroundSet dup = X;
  dup.points.push_back({0, 0});
  CHECK_THROWS_AS(dup.validate(), InvalidArgument);
}

TEST_CASE("caps") {
  Limits tight;
  tight.max_basis = 10;
  CHECK_THROWS_AS(moment_matrix_closed_form(make_ones(6), 1, tight), ResourceLimit);
}
