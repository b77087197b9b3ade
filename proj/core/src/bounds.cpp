#include "tsppsd/bounds.hpp"

#include <algorithm>
#include <numeric>

#include "tsppsd/errors.hpp"

namespace tsppsd {

std::vector<EOSubset> eo_subsets(const HamiltonianCycle& y) {
  const int n = y.n();
  const auto edges = y.edges_in_order();  // edges[t] = {order[t], order[t+1]}
  std::vector<EOSubset> out;
  if (n % 2 == 0) {
    for (int start = 0; start < 2; ++start) {
      EOSubset g;
      for (int t = start; t < n; t += 2) g.edges.push_back(edges[static_cast<std::size_t>(t)]);
      out.push_back(std::move(g));
    }
    return out;
  }
  const auto order = y.order();
  for (int v = 1; v <= n; ++v) {
    const int pos = static_cast<int>(std::find(order.begin(), order.end(), v) - order.begin());
    EOSubset g;
    g.omitted_vertex = v;
    // Edge t joins order[t] and order[t+1]; start with the edge leaving the successor of v.
    for (int step = 0; step < (n - 1) / 2; ++step) {
      g.edges.push_back(edges[static_cast<std::size_t>((pos + 1 + 2 * step) % n)]);
    }
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

void check_k(int n, int k) {
  if (k < 1 || k > n / 2) {
    throw InvalidArgument("k must satisfy 1 <= k <= floor(n/2); got k = " + std::to_string(k) +
                          " for n = " + std::to_string(n));
  }
}

/// Sum over subsets I of one EO subset whose two edges at i and j are distinct:
/// both chosen (one path of length 3), one chosen (a path of length 2), neither.
BigInt distinct_block(long h, int n, int k) {
  const BigInt tail = factorial(n - k - 2);
  BigInt s = binomial(h - 2, k - 2) * (k >= 2 ? pow2(k - 2) : BigInt(0)) * tail;
  s += 2 * binomial(h - 2, k - 1) * pow2(k - 1) * tail;
  s += binomial(h - 2, k) * pow2(k) * tail;
  return s;
}

/// EO subset containing the edge {i,j} itself.
BigInt containing_block(long h, int n, int k) {
  return binomial(h - 1, k - 1) * pow2(k - 1) * factorial(n - k - 1) + binomial(h - 1, k) * pow2(k) * factorial(n - k - 2);
}

/// EO subset touching only one of i, j (odd n, the subset omitting the other endpoint).
BigInt one_sided_block(long h, int n, int k) {
  return binomial(h - 1, k - 1) * pow2(k - 1) * factorial(n - k - 2) + binomial(h - 1, k) * pow2(k) * factorial(n - k - 2);
}

}  // namespace

CountPair f_counts(int n, int k) {
  if (n < 4 || n % 2 != 0) throw InvalidArgument("f counts need even n >= 4");
  check_k(n, k);
  const long h = n / 2;
  CountPair out;
  out.off_tour = 2 * distinct_block(h, n, k);
  out.on_tour = containing_block(h, n, k) + distinct_block(h, n, k);
  return out;
}

CountPair g_counts(int n, int k) {
  if (n < 5 || n % 2 == 0) throw InvalidArgument("g counts need odd n >= 5");
  check_k(n, k);
  const long h = (n - 1) / 2;
  CountPair out;
  out.off_tour = (n - 2) * distinct_block(h, n, k) + 2 * one_sided_block(h, n, k);
  out.on_tour = h * containing_block(h, n, k) + (h - 1) * distinct_block(h, n, k) + 2 * one_sided_block(h, n, k);
  return out;
}

CountPair eo_counts(int n, int k) { return n % 2 == 0 ? f_counts(n, k) : g_counts(n, k); }

Rational lemma_bound(const BigInt& b, const BigInt& c, int n) {
  if (b <= 0 || c <= b) throw InvalidArgument("bound needs constants 0 < b < c");
  return ratio(-b * (n - 1), 2 * (c - b));
}

Rational proposition_bound(int n, int k) {
  if (n < 4) throw InvalidArgument("bound needs n >= 4");
  check_k(n, k);
  const BigInt N = n, K = k;
  const BigInt q = n % 2 == 0 ? BigInt(N * N - K * N - 3 * N + K + 3) : BigInt(N * N - N * K - 4 * N + 4 + 2 * K);
  return ratio(-N, K) + 1 - ratio(N * (K - 1), K * q);
}

BoundReport bound_report(int n, int k) {
  BoundReport r;
  r.n = n;
  r.k = k;
  r.even = n % 2 == 0;
  const CountPair counts = eo_counts(n, k);
  r.b_k = counts.off_tour;
  r.c_k = counts.on_tour;
  r.bound = lemma_bound(r.b_k, r.c_k, n);
  r.closed_form = proposition_bound(n, k);
  r.bound_matches_closed_form = r.bound == r.closed_form;
  r.a_k = 1 - r.bound;
  r.alpha_k = r.a_k - ratio(n, k);
  r.ten_over_n = ratio(10, n);
  r.alpha_within = abs(r.alpha_k) <= r.ten_over_n;
  return r;
}

BoundReport theorem1_constants(int n, int k) {
  if (n < 9) throw InvalidArgument("the a_k constants are stated for n >= 9");
  return bound_report(n, k);
}

HamiltonianCycle identity_cycle(int n) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 1);
  return HamiltonianCycle(n, order);
}

std::vector<BigInt> bound_oracle_all_edges(int n, int k, const HamiltonianCycle& y, const Limits& limits) {
  if (y.n() != n) throw InvalidArgument("reference tour has the wrong n");
  check_k(n, k);
  std::vector<EdgeMask> gammas;
  for (const auto& g : eo_subsets(y)) gammas.push_back(mask_of(n, g.edges));
  // weight(x) = sum over G of C(|G cap x|, k); small enough for machine integers at enumerable n.
  std::vector<std::uint64_t> choose(static_cast<std::size_t>(n) + 1);
  for (int s = 0; s <= n; ++s) choose[static_cast<std::size_t>(s)] = binomial(s, k).get_ui();
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(num_edges(n)), 0);
  for_each_cycle(
      n,
      [&](const HamiltonianCycle& x) {
        std::uint64_t w = 0;
        for (const auto& g : gammas) {
          EdgeMask both{g.lo & x.mask().lo, g.hi & x.mask().hi};
          w += choose[static_cast<std::size_t>(both.count())];
        }
        if (w == 0) return;
        for (int i = 0; i < num_edges(n); ++i) {
          if (x.mask().test(i)) acc[static_cast<std::size_t>(i)] += w;
        }
      },
      limits);
  std::vector<BigInt> out;
  out.reserve(acc.size());
  for (auto v : acc) out.emplace_back(std::to_string(v));
  return out;
}

BigInt bound_oracle(int n, int k, const HamiltonianCycle& y, const Edge& edge, const Limits& limits) {
  check_edge(n, edge);
  return bound_oracle_all_edges(n, k, y, limits)[static_cast<std::size_t>(edge_index(n, edge))];
}

OracleSummary bound_oracle_summary(int n, int k, const HamiltonianCycle& y, const Limits& limits) {
  const auto values = bound_oracle_all_edges(n, k, y, limits);
  OracleSummary s;
  bool have_off = false, have_on = false;
  s.two_valued = true;
  for (int i = 0; i < num_edges(n); ++i) {
    const BigInt& v = values[static_cast<std::size_t>(i)];
    const bool on = y.mask().test(i);
    BigInt& slot = on ? s.on_tour : s.off_tour;
    bool& have = on ? have_on : have_off;
    if (!have) {
      slot = v;
      have = true;
    } else if (slot != v) {
      s.two_valued = false;
    }
  }
  return s;
}

bool edge_sum_identity(const LinearFunctional& f, const HamiltonianCycle& y) {
  const LinearFunctional g = f.linearized();
  Rational off = 0;
  for (int i = 0; i < num_edges(g.n()); ++i) {
    if (!y.mask().test(i)) off += g.coeff(i);
  }
  return ratio(g.n() - 1, 2) - g.evaluate(y) == off;
}

}  // namespace tsppsd
