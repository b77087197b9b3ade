#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "tsppsd/bounds.hpp"
#include "tsppsd/errors.hpp"
#include "tsppsd/psd.hpp"

using namespace tsppsd;

namespace {

oracle::Tour ref_tour(const std::vector<oracle::Tour>& all) { return all.front(); }  // 1-2-...-n

}  // namespace

TEST_CASE("EO subsets") {
  const HamiltonianCycle y = identity_cycle(6);
  const auto even = eo_subsets(y);
  CHECK(even.size() == 2);
  CHECK(even[0].edges == std::vector<Edge>{Edge(1, 2), Edge(3, 4), Edge(5, 6)});
  const auto odd = eo_subsets(identity_cycle(7));
  CHECK(odd.size() == 7);
  CHECK(odd[0].omitted_vertex == 1);
  CHECK(odd[0].edges == std::vector<Edge>{Edge(2, 3), Edge(4, 5), Edge(6, 7)});
  // the brute-force search finds the same number of maximal disjoint sets
  for (int n = 4; n <= 9; ++n) {
    const auto all = oracle::tours(n);
    CHECK(oracle::disjoint_edge_sets(ref_tour(all)).size() == eo_subsets(identity_cycle(n)).size());
  }
}

TEST_CASE("closed-form counts equal the brute-force sum") {
  for (int n = 4; n <= 9; ++n) {
    const auto all = oracle::tours(n);
    const auto y = ref_tour(all);
    for (int k = 1; 2 * k <= n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      const CountPair c = eo_counts(n, k);
      CHECK(c.on_tour == oracle::eo_sum(all, y, k, 1, 2));
      CHECK(c.off_tour == oracle::eo_sum(all, y, k, 1, 3));
      if (n >= 5) CHECK(c.off_tour == oracle::eo_sum(all, y, k, 2, 5));
      const OracleSummary s = bound_oracle_summary(n, k, identity_cycle(n));
      CHECK(s.two_valued);
      CHECK(s.on_tour == c.on_tour);
    }
  }
  CHECK(eo_counts(6, 1).off_tour == 48);
  CHECK(eo_counts(6, 1).on_tour == 72);
}

TEST_CASE("two values regardless of the reference tour") {
  std::mt19937_64 rng(0);
  const CountPair c = eo_counts(7, 2);
  for (int t = 0; t < 5; ++t) {
    std::vector<int> order{1, 2, 3, 4, 5, 6, 7};
    std::shuffle(order.begin(), order.end(), rng);
    const OracleSummary s = bound_oracle_summary(7, 2, HamiltonianCycle(7, order));
    CHECK(s.two_valued);
    CHECK(s.off_tour == c.off_tour);
    CHECK(s.on_tour == c.on_tour);
  }
}

TEST_CASE("bounds and constants") {
  // -b(n-1) / (2(c - b)) from the brute-force counts
  for (int n = 5; n <= 8; ++n) {
    const auto all = oracle::tours(n);
    for (int k = 1; 2 * k <= n; ++k) {
      const BigInt b = oracle::eo_sum(all, ref_tour(all), k, 1, 3);
      const BigInt c = oracle::eo_sum(all, ref_tour(all), k, 1, 2);
      CHECK(proposition_bound(n, k) == ratio(-b * (n - 1), 2 * (c - b)));
    }
    CHECK(proposition_bound(n, 1) == 1 - n);
  }
  CHECK(proposition_bound(9, 2) == Rational(-127, 35));
  const BoundReport r = bound_report(10, 2);
  CHECK(r.a_k == Rational(56, 11));
  CHECK(r.alpha_k == Rational(1, 11));
  CHECK(r.alpha_within);
  CHECK_THROWS_AS(theorem1_constants(8, 2), InvalidArgument);
  CHECK_THROWS_AS(bound_report(10, 6), InvalidArgument);
  CHECK_THROWS_AS(bound_report(10, 0), InvalidArgument);
  for (int n = 6; n <= 60; ++n) {
    for (int k = 1; 2 * k <= n; ++k) CHECK(bound_report(n, k).bound_matches_closed_form);
  }
}

TEST_CASE("alpha stays within 10/n") {
  for (int n = 9; n <= 200; ++n) {
    for (int k = 1; 2 * k <= n; ++k) {
      const BoundReport r = theorem1_constants(n, k);
      CHECK(abs(r.alpha_k) <= ratio(10, n));
    }
  }
}

TEST_CASE("edge-sum identity for average-one functionals") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int n = 5; n <= 8; ++n) {
    const auto all = oracle::tours(n);
    LinearFunctional f(n);
    f.set_constant(d(rng));
    for (int i = 0; i < num_edges(n); ++i) f.set_coeff(edge_at(n, i), ratio(d(rng), 3));
    const Rational avg = oracle::average(f, all);
    if (avg == 0) continue;
    f = f.scaled(Rational(1 / avg));
    for (std::size_t t = 0; t < all.size(); t += 17) {
      // oracle: sum of linearized coefficients off the tour
      const LinearFunctional g = f.linearized();
      Rational off = 0;
      for (int i = 0; i < num_edges(n); ++i) {
        const Edge e = edge_at(n, i);
        if (!all[t].has(e.u, e.v)) off += g.coeff(i);
      }
      CHECK(ratio(n - 1, 2) - oracle::value(f, all[t]) == off);
      CHECK(edge_sum_identity(f, HamiltonianCycle(n, all[t].order)));
    }
  }
}

TEST_CASE("functionals accepted into P_1 respect the k = 1 bound") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int n = 5; n <= 7; ++n) {
    const auto all = oracle::tours(n);
    for (int trial = 0; trial < 3; ++trial) {
      LinearFunctional g(n);
      for (int i = 0; i < num_edges(n); ++i) g.set_coeff(edge_at(n, i), d(rng));
      g.set_constant(-average_on_X(g));
      for (Rational t = ratio(1, 16); t < 64; t *= 2) {
        const LinearFunctional f = combine(1, make_ones(n), t, g);
        if (!membership_P1(f).is_psd()) break;
        for (const auto& x : all) CHECK(oracle::value(f, x) >= 1 - n);
      }
    }
  }
}
