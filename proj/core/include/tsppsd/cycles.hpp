#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tsppsd/numbers.hpp"

namespace tsppsd {

/// Largest city count the bit-mask cycle representation supports.
inline constexpr int kMaxEnumerationN = 16;

/// Size caps shared by every enumeration-backed operation.
struct Limits {
  std::uint64_t max_cycles = 19'958'400;  // (12 - 1)! / 2
  std::size_t max_basis = 4096;           // moment-matrix dimension
  int exact_max_n = 60;                   // closed-form exact membership
};

/// Unordered pair {u, v} of distinct 1-based vertices, stored with u < v.
struct Edge {
  int u = 1;
  int v = 2;

  Edge() = default;
  Edge(int a, int b);

  bool touches(int w) const { return u == w || v == w; }
  int other(int w) const { return w == u ? v : u; }
  std::string label() const;  // "u-v"

  friend auto operator<=>(const Edge&, const Edge&) = default;
  friend bool operator==(const Edge&, const Edge&) = default;
};

inline int num_edges(int n) { return n * (n - 1) / 2; }

/// Position of e in the lexicographic order {1,2},{1,3},...,{1,n},{2,3},...
int edge_index(int n, const Edge& e);
Edge edge_at(int n, int index);
void check_edge(int n, const Edge& e);

/// Parses "u-v".
Edge parse_edge(const std::string& text);
/// Parses a comma-separated list "1-2,3-4".
std::vector<Edge> parse_edge_list(const std::string& text);

/// 128-bit edge-incidence set, enough for K_16.
struct EdgeMask {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;

  void set(int index) {
    if (index < 64) lo |= std::uint64_t{1} << index;
    else hi |= std::uint64_t{1} << (index - 64);
  }
  bool test(int index) const {
    return index < 64 ? (lo >> index) & 1U : (hi >> (index - 64)) & 1U;
  }
  bool contains(const EdgeMask& other) const {
    return (lo & other.lo) == other.lo && (hi & other.hi) == other.hi;
  }
  int count() const { return __builtin_popcountll(lo) + __builtin_popcountll(hi); }
  friend bool operator==(const EdgeMask&, const EdgeMask&) = default;
};

EdgeMask mask_of(int n, std::span<const Edge> edges);

/// A tour of K_n in canonical form: starts at 1 and order[1] < order[n-1].
class HamiltonianCycle {
 public:
  HamiltonianCycle() = default;
  /// Accepts any vertex order describing a tour and canonicalizes it.
  HamiltonianCycle(int n, std::span<const int> order);

  int n() const { return n_; }
  std::vector<int> order() const;
  int at(int position) const { return order_[static_cast<std::size_t>(position)]; }
  /// Edges in the order they are traversed, starting with {order[0], order[1]}.
  std::vector<Edge> edges_in_order() const;
  /// Edges sorted lexicographically.
  std::vector<Edge> edges() const;
  std::vector<std::uint8_t> incidence() const;
  const EdgeMask& mask() const { return mask_; }
  bool contains(const Edge& e) const { return mask_.test(edge_index(n_, e)); }
  bool contains(const EdgeMask& m) const { return mask_.contains(m); }

  static bool is_canonical(std::span<const int> order);

 private:
  friend class CycleEnumerator;
  int n_ = 0;
  std::array<std::uint8_t, kMaxEnumerationN> order_{};
  EdgeMask mask_{};
};

/// (n - 1)! / 2.
BigInt cycle_count(int n);

/// Throws InvalidArgument for n < 3 and ResourceLimit when the cycle count exceeds the cap.
void check_enumerable(int n, const Limits& limits = {});

/// Streams every Hamiltonian cycle of K_n, lexicographically by canonical permutation.
void for_each_cycle(int n, const std::function<void(const HamiltonianCycle&)>& visit,
                    const Limits& limits = {});

std::vector<HamiltonianCycle> enumerate_cycles(int n, const Limits& limits = {});

/// Vertex-disjoint simple paths, each given by its vertex sequence.
struct PathSystem {
  std::vector<std::vector<int>> paths;

  int m() const { return static_cast<int>(paths.size()); }
  int k() const;
  std::vector<Edge> edges() const;
  /// Throws InvalidArgument on shared vertices, short paths, bad ids, or k + m > n.
  void validate(int n) const;
};

/// 2^(m-1) (n-k-1)!; with m = 0 this is (n-1)!/2.
BigInt count_cycles_containing(int n, const PathSystem& ps);

/// Shape of an edge set viewed as a subgraph of a tour.
struct EdgeSetShape {
  enum class Kind { Paths, Impossible, FullCycle };
  Kind kind = Kind::Paths;
  int paths = 0;  // m
  int edges = 0;  // k
};

EdgeSetShape classify_edge_set(int n, std::span<const Edge> edges);

/// Splits a set of edges forming disjoint paths into a PathSystem. Throws if impossible.
PathSystem to_path_system(int n, std::span<const Edge> edges);

/// Number of tours containing every edge of E. Total: 0 for impossible sets.
BigInt count_cycles_with_edge_set(int n, std::span<const Edge> edges);

}  // namespace tsppsd
