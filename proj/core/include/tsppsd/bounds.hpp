#pragma once

#include <string>
#include <vector>

#include "tsppsd/cycles.hpp"
#include "tsppsd/functionals.hpp"
#include "tsppsd/numbers.hpp"

namespace tsppsd {

/// floor(n/2) pairwise disjoint edges of a tour, taking every other edge.
struct EOSubset {
  std::vector<Edge> edges;
  /// For odd n the vertex with no edge in the subset; 0 for even n.
  int omitted_vertex = 0;
};

/// Even n: the two alternating classes, starting with {order[0], order[1]}.
/// Odd n: one subset per vertex i, ordered by i, omitting i and starting right after it.
std::vector<EOSubset> eo_subsets(const HamiltonianCycle& y);

/// Off-tour and on-tour values of the EO-subset sum for one edge.
struct CountPair {
  BigInt off_tour;  // edge not in y: f1 or g1
  BigInt on_tour;   // edge in y: f2 or g2
};

/// Even n >= 4, 1 <= k <= n/2.
CountPair f_counts(int n, int k);
/// Odd n >= 5, 1 <= k <= (n-1)/2.
CountPair g_counts(int n, int k);
/// f_counts or g_counts by parity.
CountPair eo_counts(int n, int k);

/// -b(n-1) / (2(c-b)); requires 0 < b < c.
Rational lemma_bound(const BigInt& b, const BigInt& c, int n);

/// Closed-form lower bound on f(y) for f in P_k, by parity of n.
Rational proposition_bound(int n, int k);

struct BoundReport {
  int n = 0;
  int k = 0;
  bool even = true;
  BigInt b_k;
  BigInt c_k;
  Rational bound;        // lemma_bound(b_k, c_k, n)
  Rational closed_form;  // proposition_bound(n, k)
  Rational a_k;          // 1 - bound
  Rational alpha_k;      // a_k - n/k
  Rational ten_over_n;
  bool bound_matches_closed_form = false;
  bool alpha_within = false;  // |alpha_k| <= 10/n
};

/// Counts, both bound forms and the a_k / alpha_k constants for 4 <= n, 1 <= k <= n/2.
BoundReport bound_report(int n, int k);
/// Same, restricted to n >= 9.
BoundReport theorem1_constants(int n, int k);

/// The tour 1-2-...-n.
HamiltonianCycle identity_cycle(int n);

/// Brute-force EO-subset sum for one edge: over EO subsets G of y and k-subsets I of G,
/// the number of tours containing I and the edge.
BigInt bound_oracle(int n, int k, const HamiltonianCycle& y, const Edge& edge, const Limits& limits = {});
/// The same sum for every edge at once, indexed by edge_index.
std::vector<BigInt> bound_oracle_all_edges(int n, int k, const HamiltonianCycle& y, const Limits& limits = {});

struct OracleSummary {
  bool two_valued = false;  // one value off y, one value on y
  BigInt off_tour;
  BigInt on_tour;
};
OracleSummary bound_oracle_summary(int n, int k, const HamiltonianCycle& y, const Limits& limits = {});

/// (n-1)/2 - f(y) == sum_{e not in y} f(e) for f with average 1, evaluated on the linearized form.
bool edge_sum_identity(const LinearFunctional& f, const HamiltonianCycle& y);

}  // namespace tsppsd
