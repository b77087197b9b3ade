#include "tsppsd/cycles.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "tsppsd/errors.hpp"

namespace tsppsd {

Edge::Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {
  if (a == b) throw InvalidArgument("edge endpoints must differ (got " + std::to_string(a) + ")");
}

std::string Edge::label() const { return std::to_string(u) + "-" + std::to_string(v); }

int edge_index(int n, const Edge& e) {
  // Edges starting at vertex u occupy (n - u) consecutive slots.
  return (e.u - 1) * (2 * n - e.u) / 2 + (e.v - e.u - 1);
}

Edge edge_at(int n, int index) {
  int u = 1;
  int remaining = index;
  while (remaining >= n - u) {
    remaining -= n - u;
    ++u;
  }
  return Edge(u, u + 1 + remaining);
}

void check_edge(int n, const Edge& e) {
  if (e.u < 1 || e.v > n || e.u >= e.v) {
    throw InvalidArgument("edge " + e.label() + " is not an edge of K_" + std::to_string(n));
  }
}

Edge parse_edge(const std::string& text) {
  auto dash = text.find('-');
  if (dash == std::string::npos || dash == 0) {
    throw InvalidArgument("malformed edge '" + text + "' (expected u-v)");
  }
  try {
    std::size_t used_a = 0, used_b = 0;
    int a = std::stoi(text.substr(0, dash), &used_a);
    int b = std::stoi(text.substr(dash + 1), &used_b);
    if (used_a != dash || used_b != text.size() - dash - 1) throw std::invalid_argument("trailing");
    return Edge(a, b);
  } catch (const InvalidArgument&) {
    throw;
  } catch (const std::exception&) {
    throw InvalidArgument("malformed edge '" + text + "' (expected u-v)");
  }
}

std::vector<Edge> parse_edge_list(const std::string& text) {
  std::vector<Edge> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    out.push_back(parse_edge(item));
  }
  return out;
}

EdgeMask mask_of(int n, std::span<const Edge> edges) {
  if (num_edges(n) > 128) throw ResourceLimit("edge masks support n <= 16");
  EdgeMask m;
  for (const auto& e : edges) m.set(edge_index(n, e));
  return m;
}

HamiltonianCycle::HamiltonianCycle(int n, std::span<const int> order) : n_(n) {
  if (n < 3 || n > kMaxEnumerationN) {
    throw InvalidArgument("tour length must be in [3, " + std::to_string(kMaxEnumerationN) + "]");
  }
  if (static_cast<int>(order.size()) != n) throw InvalidArgument("tour must list every vertex once");
  std::vector<int> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int v : order) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)]++) {
      throw InvalidArgument("tour must be a permutation of 1..n");
    }
  }
  // Rotate so that vertex 1 leads, then reflect if needed.
  auto start = static_cast<std::size_t>(std::find(order.begin(), order.end(), 1) - order.begin());
  std::vector<int> rotated(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < rotated.size(); ++i) rotated[i] = order[(start + i) % rotated.size()];
  if (rotated[1] > rotated.back()) std::reverse(rotated.begin() + 1, rotated.end());
  for (int i = 0; i < n; ++i) {
    order_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rotated[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i < n; ++i) mask_.set(edge_index(n, Edge(at(i), at((i + 1) % n))));
}

std::vector<int> HamiltonianCycle::order() const {
  return {order_.begin(), order_.begin() + n_};
}

std::vector<Edge> HamiltonianCycle::edges_in_order() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) out.emplace_back(at(i), at((i + 1) % n_));
  return out;
}

std::vector<Edge> HamiltonianCycle::edges() const {
  auto out = edges_in_order();
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint8_t> HamiltonianCycle::incidence() const {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(num_edges(n_)), 0);
  for (int i = 0; i < num_edges(n_); ++i) out[static_cast<std::size_t>(i)] = mask_.test(i) ? 1 : 0;
  return out;
}

bool HamiltonianCycle::is_canonical(std::span<const int> order) {
  return order.size() >= 3 && order.front() == 1 && order[1] < order.back();
}

BigInt cycle_count(int n) {
  if (n < 3) throw InvalidArgument("K_n has Hamiltonian cycles only for n >= 3");
  return factorial(n - 1) / 2;
}

void check_enumerable(int n, const Limits& limits) {
  if (n < 3) throw InvalidArgument("n must be at least 3 (got " + std::to_string(n) + ")");
  BigInt count = cycle_count(n);
  if (n > kMaxEnumerationN || count > BigInt(std::to_string(limits.max_cycles))) {
    throw ResourceLimit("enumerating K_" + std::to_string(n) + " needs " + count.get_str() +
                        " cycles; cap is " + std::to_string(limits.max_cycles) +
                        " (raise with TSPPSD_MAX_CYCLES)");
  }
}

class CycleEnumerator {
 public:
  static void run(int n, const std::function<void(const HamiltonianCycle&)>& visit) {
    std::vector<int> tail(static_cast<std::size_t>(n - 1));
    std::iota(tail.begin(), tail.end(), 2);
    std::vector<int> index_of_pair(static_cast<std::size_t>((n + 1) * (n + 1)), 0);
    for (int a = 1; a <= n; ++a) {
      for (int b = 1; b <= n; ++b) {
        if (a != b) index_of_pair[static_cast<std::size_t>(a * (n + 1) + b)] = edge_index(n, Edge(a, b));
      }
    }
    HamiltonianCycle c;
    c.n_ = n;
    c.order_[0] = 1;
    do {
      if (tail.front() > tail.back()) continue;
      c.mask_ = EdgeMask{};
      int prev = 1;
      for (std::size_t i = 0; i < tail.size(); ++i) {
        c.order_[i + 1] = static_cast<std::uint8_t>(tail[i]);
        c.mask_.set(index_of_pair[static_cast<std::size_t>(prev * (n + 1) + tail[i])]);
        prev = tail[i];
      }
      c.mask_.set(index_of_pair[static_cast<std::size_t>(prev * (n + 1) + 1)]);
      visit(c);
    } while (std::next_permutation(tail.begin(), tail.end()));
  }
};

void for_each_cycle(int n, const std::function<void(const HamiltonianCycle&)>& visit,
                    const Limits& limits) {
  check_enumerable(n, limits);
  CycleEnumerator::run(n, visit);
}

std::vector<HamiltonianCycle> enumerate_cycles(int n, const Limits& limits) {
  check_enumerable(n, limits);
  std::vector<HamiltonianCycle> out;
  out.reserve(cycle_count(n).get_ui());
  CycleEnumerator::run(n, [&](const HamiltonianCycle& c) { out.push_back(c); });
  return out;
}

int PathSystem::k() const {
  int total = 0;
  for (const auto& p : paths) total += static_cast<int>(p.size()) - 1;
  return total;
}

std::vector<Edge> PathSystem::edges() const {
  std::vector<Edge> out;
  for (const auto& p : paths) {
    for (std::size_t i = 0; i + 1 < p.size(); ++i) out.emplace_back(p[i], p[i + 1]);
  }
  return out;
}

void PathSystem::validate(int n) const {
  std::set<int> used;
  for (const auto& p : paths) {
    if (p.size() < 2) throw InvalidArgument("each path needs at least one edge");
    for (int v : p) {
      if (v < 1 || v > n) throw InvalidArgument("vertex " + std::to_string(v) + " outside 1..n");
      if (!used.insert(v).second) {
        throw InvalidArgument("paths share vertex " + std::to_string(v));
      }
    }
  }
  if (k() + m() > n) {
    throw InvalidArgument("path system needs k + m <= n (k=" + std::to_string(k()) +
                          ", m=" + std::to_string(m()) + ", n=" + std::to_string(n) + ")");
  }
}

BigInt count_cycles_containing(int n, const PathSystem& ps) {
  if (n < 3) throw InvalidArgument("n must be at least 3");
  ps.validate(n);
  if (ps.m() == 0) return cycle_count(n);
  return pow2(ps.m() - 1) * factorial(n - ps.k() - 1);
}

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int size) : parent(static_cast<std::size_t>(size)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

std::vector<Edge> dedupe(int n, std::span<const Edge> edges) {
  std::vector<Edge> out(edges.begin(), edges.end());
  for (const auto& e : out) check_edge(n, e);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

EdgeSetShape classify_edge_set(int n, std::span<const Edge> edges) {
  auto unique = dedupe(n, edges);
  EdgeSetShape shape;
  shape.edges = static_cast<int>(unique.size());
  std::vector<int> degree(static_cast<std::size_t>(n) + 1, 0);
  DisjointSets sets(n + 1);
  bool closed = false;
  for (const auto& e : unique) {
    if (++degree[static_cast<std::size_t>(e.u)] > 2 || ++degree[static_cast<std::size_t>(e.v)] > 2) {
      shape.kind = EdgeSetShape::Kind::Impossible;
      return shape;
    }
    if (!sets.unite(e.u, e.v)) closed = true;
  }
  if (closed) {
    // A closed component is a subtour unless it is the whole tour.
    bool spanning = shape.edges == n;
    for (int v = 1; spanning && v <= n; ++v) spanning = sets.find(v) == sets.find(1);
    shape.kind = spanning ? EdgeSetShape::Kind::FullCycle : EdgeSetShape::Kind::Impossible;
    return shape;
  }
  int touched = static_cast<int>(std::count_if(degree.begin(), degree.end(), [](int d) { return d > 0; }));
  shape.paths = touched - shape.edges;
  return shape;
}

PathSystem to_path_system(int n, std::span<const Edge> edges) {
  auto unique = dedupe(n, edges);
  if (classify_edge_set(n, unique).kind != EdgeSetShape::Kind::Paths) {
    throw InvalidArgument("edge set is not a union of vertex-disjoint paths");
  }
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
  for (const auto& e : unique) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  PathSystem ps;
  std::vector<bool> visited(static_cast<std::size_t>(n) + 1, false);
  for (int start = 1; start <= n; ++start) {
    if (adj[static_cast<std::size_t>(start)].size() != 1 || visited[static_cast<std::size_t>(start)]) continue;
    std::vector<int> path{start};
    visited[static_cast<std::size_t>(start)] = true;
    int prev = 0, cur = start;
    while (true) {
      int next = 0;
      for (int w : adj[static_cast<std::size_t>(cur)]) {
        if (w != prev) next = w;
      }
      if (next == 0 || visited[static_cast<std::size_t>(next)]) break;
      path.push_back(next);
      visited[static_cast<std::size_t>(next)] = true;
      prev = cur;
      cur = next;
    }
    ps.paths.push_back(std::move(path));
  }
  return ps;
}

BigInt count_cycles_with_edge_set(int n, std::span<const Edge> edges) {
  auto shape = classify_edge_set(n, edges);
  switch (shape.kind) {
    case EdgeSetShape::Kind::Impossible:
      return 0;
    case EdgeSetShape::Kind::FullCycle:
      return 1;
    case EdgeSetShape::Kind::Paths:
      break;
  }
  if (shape.paths == 0) return cycle_count(n);
  return pow2(shape.paths - 1) * factorial(n - shape.edges - 1);
}

}  // namespace tsppsd
