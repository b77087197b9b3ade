#include "tsppsd/functionals.hpp"

#include <algorithm>
#include <set>

#include "tsppsd/errors.hpp"

namespace tsppsd {

LinearFunctional::LinearFunctional(int n) : n_(n), coeffs_(static_cast<std::size_t>(num_edges(n)), Rational(0)) {
  if (n < 3) throw InvalidArgument("functionals need n >= 3 (got " + std::to_string(n) + ")");
}

const Rational& LinearFunctional::coeff(const Edge& e) const {
  check_edge(n_, e);
  return coeffs_[static_cast<std::size_t>(edge_index(n_, e))];
}

void LinearFunctional::set_coeff(const Edge& e, Rational value) {
  check_edge(n_, e);
  value.canonicalize();
  coeffs_[static_cast<std::size_t>(edge_index(n_, e))] = std::move(value);
}

Rational LinearFunctional::evaluate(const HamiltonianCycle& cycle) const {
  if (cycle.n() != n_) throw InvalidArgument("cycle and functional disagree on n");
  Rational total = constant_;
  for (int i = 0; i < num_edges(n_); ++i) {
    if (cycle.mask().test(i)) total += coeffs_[static_cast<std::size_t>(i)];
  }
  return total;
}

Rational LinearFunctional::evaluate(std::span<const Edge> edges) const {
  Rational total = constant_;
  for (const auto& e : edges) total += coeff(e);
  return total;
}

LinearFunctional LinearFunctional::linearized() const {
  LinearFunctional out(n_);
  Rational share = constant_ / n_;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = coeffs_[i] + share;
  return out;
}

LinearFunctional LinearFunctional::scaled(const Rational& s) const {
  LinearFunctional out(n_);
  out.constant_ = constant_ * s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] = coeffs_[i] * s;
  return out;
}

Rational average_on_X(const LinearFunctional& f) {
  Rational sum = 0;
  for (const auto& c : f.coeffs()) sum += c;
  return f.constant() + ratio(2, f.n() - 1) * sum;
}

std::vector<int> normalize_vertex_set(int n, const std::vector<int>& U) {
  std::vector<int> out(U);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (int v : out) {
    if (v < 1 || v > n) throw InvalidArgument("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
  }
  return out;
}

namespace {

std::vector<bool> membership(int n, const std::vector<int>& U) {
  std::vector<bool> in(static_cast<std::size_t>(n) + 1, false);
  for (int v : U) in[static_cast<std::size_t>(v)] = true;
  return in;
}

void check_subtour_set(int n, const std::vector<int>& U) {
  int m = static_cast<int>(U.size());
  if (m < 2 || m > n - 2) {
    throw InvalidArgument("subtour set needs 2 <= |U| <= n-2 (|U|=" + std::to_string(m) +
                          ", n=" + std::to_string(n) + ")");
  }
}

void check_two_matching(int n, const std::vector<int>& U, const std::vector<Edge>& F) {
  if (U.empty() || static_cast<int>(U.size()) >= n) throw InvalidArgument("2-matching needs a nonempty proper U");
  int s = static_cast<int>(F.size());
  if (s < 3 || s % 2 == 0) throw InvalidArgument("2-matching needs |F| >= 3 odd (got " + std::to_string(s) + ")");
  auto in = membership(n, U);
  std::set<int> used;
  for (const auto& e : F) {
    check_edge(n, e);
    if (!used.insert(e.u).second || !used.insert(e.v).second) {
      throw InvalidArgument("F is not a matching (vertex reused at " + e.label() + ")");
    }
    if (in[static_cast<std::size_t>(e.u)] == in[static_cast<std::size_t>(e.v)]) {
      throw InvalidArgument("F-edge " + e.label() + " must have exactly one endpoint in U");
    }
  }
}

}  // namespace

LinearFunctional make_subtour(int n, const std::vector<int>& U_in) {
  auto U = normalize_vertex_set(n, U_in);
  check_subtour_set(n, U);
  int m = static_cast<int>(U.size());
  Rational c = ratio(n - 1, 2 * (m * (n - m) + 1 - n));
  auto in = membership(n, U);
  LinearFunctional f(n);
  f.set_constant(-2 * c);
  for (int i = 0; i < num_edges(n); ++i) {
    Edge e = edge_at(n, i);
    if (in[static_cast<std::size_t>(e.u)] != in[static_cast<std::size_t>(e.v)]) f.set_coeff(e, c);
  }
  return f;
}

LinearFunctional make_ones(int n) {
  LinearFunctional f(n);
  for (int i = 0; i < num_edges(n); ++i) f.set_coeff(edge_at(n, i), ratio(1, n));
  return f;
}

LinearFunctional make_edge_bound(int n, const Edge& e, EdgeSide side) {
  LinearFunctional f(n);
  check_edge(n, e);
  if (side == EdgeSide::Lower) {
    f.set_coeff(e, ratio(n - 1, 2));
    return f;
  }
  if (n == 3) throw InvalidArgument("upper edge bound is constant on K_3 and cannot be normalized");
  Rational c = ratio(n - 1, n - 3);
  f.set_constant(c);
  f.set_coeff(e, -c);
  return f;
}

LinearFunctional make_two_matching(int n, const std::vector<int>& U_in, const std::vector<Edge>& F) {
  auto U = normalize_vertex_set(n, U_in);
  check_two_matching(n, U, F);
  int m = static_cast<int>(U.size());
  int s = static_cast<int>(F.size());
  auto in = membership(n, U);
  // g = sum_{cross, not F} x - sum_F x - 1 + |F| averages (2/(n-1))(m(n-m) - 2|F|) - 1 + |F|.
  Rational raw_average = ratio(2, n - 1) * (m * (n - m) - 2 * s) - 1 + s;
  Rational c = 1 / raw_average;
  LinearFunctional f(n);
  f.set_constant(c * (s - 1));
  for (int i = 0; i < num_edges(n); ++i) {
    Edge e = edge_at(n, i);
    if (in[static_cast<std::size_t>(e.u)] != in[static_cast<std::size_t>(e.v)]) f.set_coeff(e, c);
  }
  for (const auto& e : F) f.set_coeff(e, -c);
  return f;
}

LinearFunctional combine(const Rational& a, const LinearFunctional& f, const Rational& b,
                         const LinearFunctional& g) {
  if (f.n() != g.n()) {
    throw InvalidArgument("cannot combine functionals on n=" + std::to_string(f.n()) + " and n=" +
                          std::to_string(g.n()));
  }
  LinearFunctional out(f.n());
  out.set_constant(a * f.constant() + b * g.constant());
  for (int i = 0; i < num_edges(f.n()); ++i) out.set_coeff(edge_at(f.n(), i), a * f.coeff(i) + b * g.coeff(i));
  return out;
}

std::string to_string(FacetSpec::Kind kind) {
  switch (kind) {
    case FacetSpec::Kind::Subtour: return "subtour";
    case FacetSpec::Kind::EdgeUpper: return "edge-upper";
    case FacetSpec::Kind::EdgeLower: return "edge-lower";
    case FacetSpec::Kind::TwoMatching: return "two-matching";
    case FacetSpec::Kind::Ones: return "ones";
    case FacetSpec::Kind::Explicit: return "explicit";
    case FacetSpec::Kind::Combination: return "combination";
  }
  return "unknown";
}

FacetSpec::Kind facet_kind_from_string(const std::string& name) {
  using K = FacetSpec::Kind;
  for (K k : {K::Subtour, K::EdgeUpper, K::EdgeLower, K::TwoMatching, K::Ones, K::Explicit, K::Combination}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidArgument("unknown functional kind '" + name + "'");
}

int FacetSpec::resolved_n() const {
  if (kind != Kind::Combination) return n;
  if (terms.empty()) throw InvalidArgument("combination needs at least one term");
  int first = terms.front().func.resolved_n();
  for (const auto& t : terms) {
    if (t.func.resolved_n() != first) throw InvalidArgument("combination terms disagree on n");
  }
  if (n != 0 && n != first) throw InvalidArgument("combination n does not match its terms");
  return first;
}

void FacetSpec::validate() const {
  int nn = resolved_n();
  if (nn < 3) throw InvalidArgument("functional needs n >= 3");
  switch (kind) {
    case Kind::Subtour:
      check_subtour_set(nn, normalize_vertex_set(nn, U));
      break;
    case Kind::EdgeUpper:
    case Kind::EdgeLower:
      if (!edge) throw InvalidArgument("edge bound needs an edge");
      check_edge(nn, *edge);
      if (kind == Kind::EdgeUpper && nn == 3) throw InvalidArgument("upper edge bound degenerate at n=3");
      break;
    case Kind::TwoMatching:
      check_two_matching(nn, normalize_vertex_set(nn, U), F);
      break;
    case Kind::Ones:
      break;
    case Kind::Explicit:
      for (const auto& [e, value] : coeffs) check_edge(nn, e);
      break;
    case Kind::Combination:
      for (const auto& t : terms) t.func.validate();
      break;
  }
}

LinearFunctional FacetSpec::build() const {
  validate();
  int nn = resolved_n();
  switch (kind) {
    case Kind::Subtour: return make_subtour(nn, U);
    case Kind::EdgeUpper: return make_edge_bound(nn, *edge, EdgeSide::Upper);
    case Kind::EdgeLower: return make_edge_bound(nn, *edge, EdgeSide::Lower);
    case Kind::TwoMatching: return make_two_matching(nn, U, F);
    case Kind::Ones: return make_ones(nn);
    case Kind::Explicit: {
      LinearFunctional f(nn);
      f.set_constant(constant);
      for (const auto& [e, value] : coeffs) f.set_coeff(e, f.coeff(e) + value);
      return f;
    }
    case Kind::Combination: {
      LinearFunctional total(nn);
      for (const auto& t : terms) total = combine(1, total, t.scale, t.func.build());
      return total;
    }
  }
  throw InvalidArgument("unhandled functional kind");
}

}  // namespace tsppsd
