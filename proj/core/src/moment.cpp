#include "tsppsd/moment.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "tsppsd/errors.hpp"

namespace tsppsd {

// ---------------------------------------------------------------------------
// Basis

BigInt MonomialBasis::size_for(int coords, int k) { return binomial(coords + k, k); }

MonomialBasis::MonomialBasis(int coords, int k, std::size_t max_size) : coords_(coords), k_(k) {
  if (k < 0) throw InvalidArgument("degree k must be nonnegative");
  if (coords < 1) throw InvalidArgument("basis needs at least one coordinate");
  BigInt size = size_for(coords, k);
  if (size > BigInt(std::to_string(max_size))) {
    throw ResourceLimit("monomial basis of degree " + std::to_string(k) + " in " + std::to_string(coords) +
                        " variables has " + size.get_str() + " elements; cap is " + std::to_string(max_size));
  }
  monomials_.reserve(size.get_ui());
  Monomial current;
  std::function<void(int, int)> extend = [&](int start, int remaining) {
    if (remaining == 0) {
      monomials_.push_back(current);
      return;
    }
    for (int c = start; c < coords_; ++c) {
      current.push_back(c);
      extend(c, remaining - 1);
      current.pop_back();
    }
  };
  for (int degree = 0; degree <= k; ++degree) extend(0, degree);
  for (std::size_t i = 0; i < monomials_.size(); ++i) lookup_.emplace(monomials_[i], i);
}

std::size_t MonomialBasis::index_of(const Monomial& m) const {
  auto it = lookup_.find(m);
  if (it == lookup_.end()) throw InvalidArgument("monomial not in basis");
  return it->second;
}

// ---------------------------------------------------------------------------
// Ground sets

void GroundSet::validate() const {
  if (points.empty()) throw InvalidArgument("ground set must be nonempty");
  if (d < 1) throw InvalidArgument("ground set dimension must be positive");
  std::set<std::vector<Rational>> seen;
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != d) throw InvalidArgument("ground set point has wrong dimension");
    if (!seen.insert(p).second) throw InvalidArgument("ground set contains a duplicate point");
  }
}

bool GroundSet::is_zero_one() const {
  for (const auto& p : points) {
    for (const auto& x : p) {
      if (x != 0 && x != 1) return false;
    }
  }
  return true;
}

Rational AffineFunction::evaluate(std::span<const Rational> x) const {
  if (x.size() != coeffs.size()) throw InvalidArgument("affine function dimension mismatch");
  Rational v = constant;
  for (std::size_t i = 0; i < x.size(); ++i) v += coeffs[i] * x[i];
  return v;
}

// ---------------------------------------------------------------------------
// Labels and coefficient vectors

std::string MomentMatrix::label(std::size_t i) const {
  const Monomial& mono = basis[i];
  if (mono.empty()) return "1";
  std::string out;
  for (int c : mono) {
    if (!out.empty()) out += "*";
    out += over_tours() ? edge_at(n, c).label() : "x" + std::to_string(c + 1);
  }
  return out;
}

std::vector<std::string> MomentMatrix::labels() const {
  std::vector<std::string> out;
  out.reserve(dim());
  for (std::size_t i = 0; i < dim(); ++i) out.push_back(label(i));
  return out;
}

std::vector<Rational> coefficients_in_basis(const CertificatePolynomial& p, const MonomialBasis& basis) {
  std::vector<Rational> v(basis.size(), Rational(0));
  for (const auto& [mono, coeff] : p.expand()) {
    if (!basis.contains(mono)) {
      throw InvalidArgument("polynomial of degree " + std::to_string(mono.size()) +
                            " does not fit a degree-" + std::to_string(basis.k()) + " basis");
    }
    v[basis.index_of(mono)] += coeff;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

BigInt lcm_of_denominators(std::span<const Rational> values) {
  BigInt l = 1;
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

/// Basis indices of every monomial (multiset of the given coordinates) of degree <= k.
void contained_monomials(const std::vector<int>& coords, int k, const MonomialBasis& basis,
                         std::vector<std::size_t>& out) {
  out.clear();
  Monomial current;
  std::function<void(std::size_t, int)> extend = [&](std::size_t start, int remaining) {
    out.push_back(basis.index_of(current));
    if (remaining == 0) return;
    for (std::size_t i = start; i < coords.size(); ++i) {
      current.push_back(coords[i]);
      extend(i, remaining - 1);
      current.pop_back();
    }
  };
  extend(0, k);
  std::sort(out.begin(), out.end());
}

/// Accumulates sum_x w(x) [I in x][J in x] over tours, with integer weights scaled by `scale`.
MomentMatrix accumulate_over_tours(int n, int k, const Limits& limits,
                                   const std::function<BigInt(std::size_t, const HamiltonianCycle&)>& weight,
                                   const BigInt& scale) {
  if (k < 1) throw InvalidArgument("degree k must be at least 1");
  check_enumerable(n, limits);
  MomentMatrix M;
  M.n = n;
  M.k = k;
  M.basis = MonomialBasis(num_edges(n), k, limits.max_basis);
  const std::size_t N = M.basis.size();
  std::vector<BigInt> upper(N * (N + 1) / 2, BigInt(0));
  auto slot = [N](std::size_t a, std::size_t b) { return a * N - a * (a - 1) / 2 + (b - a); };

  std::vector<std::size_t> inside;
  std::vector<int> coords;
  std::size_t ordinal = 0;
  for_each_cycle(
      n,
      [&](const HamiltonianCycle& c) {
        BigInt w = weight(ordinal++, c);
        if (w == 0) return;
        coords.clear();
        for (int i = 0; i < num_edges(n); ++i) {
          if (c.mask().test(i)) coords.push_back(i);
        }
        contained_monomials(coords, k, M.basis, inside);
        for (std::size_t a = 0; a < inside.size(); ++a) {
          for (std::size_t b = a; b < inside.size(); ++b) upper[slot(inside[a], inside[b])] += w;
        }
      },
      limits);

  const BigInt denom = scale * cycle_count(n);
  M.entries = RationalMatrix(N);
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = a; b < N; ++b) {
      Rational v(upper[slot(a, b)], denom);
      v.canonicalize();
      M.entries.set_symmetric(a, b, v);
    }
  }
  return M;
}

}  // namespace

MomentMatrix moment_matrix_enumerated(const LinearFunctional& f, int k, const Limits& limits) {
  std::vector<Rational> all(f.coeffs());
  all.push_back(f.constant());
  const BigInt scale = lcm_of_denominators(all);
  std::vector<BigInt> scaled;
  scaled.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) scaled.push_back(BigInt(c * scale));
  const BigInt scaled_constant(f.constant() * scale);
  const int n = f.n();
  return accumulate_over_tours(
      n, k, limits,
      [&](std::size_t, const HamiltonianCycle& c) {
        BigInt w = scaled_constant;
        for (int i = 0; i < num_edges(n); ++i) {
          if (c.mask().test(i)) w += scaled[static_cast<std::size_t>(i)];
        }
        return w;
      },
      scale);
}

MomentMatrix moment_matrix_enumerated(int n, std::span<const Rational> values, int k, const Limits& limits) {
  check_enumerable(n, limits);
  if (BigInt(static_cast<unsigned long>(values.size())) != cycle_count(n)) {
    throw InvalidArgument("need one function value per tour of K_" + std::to_string(n));
  }
  const BigInt scale = lcm_of_denominators(values);
  return accumulate_over_tours(
      n, k, limits, [&](std::size_t i, const HamiltonianCycle&) { return BigInt(values[i] * scale); }, scale);
}

MomentMatrix moment_matrix_enumerated(const GroundSet& X, std::span<const Rational> f_values, int k,
                                      const Limits& limits) {
  X.validate();
  if (f_values.size() != X.size()) throw InvalidArgument("need one function value per ground-set point");
  if (k < 1) throw InvalidArgument("degree k must be at least 1");
  MomentMatrix M;
  M.n = 0;
  M.k = k;
  M.basis = MonomialBasis(X.d, k, limits.max_basis);
  const std::size_t N = M.basis.size();
  M.entries = RationalMatrix(N);
  std::vector<Rational> mono(N);
  for (std::size_t p = 0; p < X.size(); ++p) {
    const auto& x = X.points[p];
    for (std::size_t i = 0; i < N; ++i) {
      Rational v = 1;
      for (int c : M.basis[i]) v *= x[static_cast<std::size_t>(c)];
      mono[i] = v;
    }
    for (std::size_t a = 0; a < N; ++a) {
      if (sgn(mono[a]) == 0) continue;
      Rational fa = f_values[p] * mono[a];
      for (std::size_t b = a; b < N; ++b) {
        if (sgn(mono[b]) != 0) M.entries(a, b) += fa * mono[b];
      }
    }
  }
  const Rational inv(1, static_cast<long>(X.size()));
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = a; b < N; ++b) M.entries.set_symmetric(a, b, M.entries(a, b) * inv);
  }
  return M;
}

// ---------------------------------------------------------------------------
// Closed form

namespace {

template <typename T>
T make_ratio(const BigInt& num, const BigInt& den);

template <>
Rational make_ratio<Rational>(const BigInt& num, const BigInt& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

template <>
double make_ratio<double>(const BigInt& num, const BigInt& den) {
  return make_ratio<Rational>(num, den).get_d();
}

template <typename T>
T convert(const Rational& q);
template <>
Rational convert<Rational>(const Rational& q) { return q; }
template <>
double convert<double>(const Rational& q) { return q.get_d(); }

/// Evaluates sum_x f(x) [E in x] / |X| for small edge sets E without enumeration.
///
/// Adding an edge e to a path system with k edges and m paths yields, by the
/// count 2^(m-1) (n-k-1)!, one of four cases: e disjoint from the system
/// (m+1 paths), e extending a path at an end vertex (m paths), e joining end
/// vertices of two paths (m-1 paths), or e touching an interior vertex or
/// closing a short subtour (no tours). Summing coefficients per case uses
/// vertex sums, so each entry costs O(|V(E)|^2).
template <typename T>
class ClosedFormEvaluator {
 public:
  ClosedFormEvaluator(const LinearFunctional& f, int max_edges) : n_(f.n()) {
    constant_ = convert<T>(f.constant());
    coeff_.reserve(f.coeffs().size());
    for (const auto& c : f.coeffs()) coeff_.push_back(convert<T>(c));
    total_ = T(0);
    vertex_sum_.assign(static_cast<std::size_t>(n_) + 1, T(0));
    for (int i = 0; i < num_edges(n_); ++i) {
      const Edge e = edge_at(n_, i);
      const T& c = coeff_[static_cast<std::size_t>(i)];
      total_ += c;
      vertex_sum_[static_cast<std::size_t>(e.u)] += c;
      vertex_sum_[static_cast<std::size_t>(e.v)] += c;
    }
    // prob_[k][m] = 2^m / ((n-1)(n-2)...(n-k)) for k + m <= n and k < n.
    const int kmax = std::min(max_edges + 1, n_ - 1);
    prob_.assign(static_cast<std::size_t>(kmax) + 1, std::vector<T>(static_cast<std::size_t>(n_) + 1, T(0)));
    for (int k = 0; k <= kmax; ++k) {
      const BigInt den = falling_factorial(n_ - 1, k);
      for (int m = 0; k + m <= n_; ++m) prob_[k][m] = make_ratio<T>(pow2(m), den);
    }
    full_ = make_ratio<T>(BigInt(1), cycle_count(n_));
  }

  T entry(std::span<const Edge> edges) const {
    // Local vertex bookkeeping; |V(E)| <= 2|E|.
    std::vector<int> verts;
    std::vector<int> degree;
    std::vector<int> parent;
    auto local = [&](int v) {
      for (std::size_t i = 0; i < verts.size(); ++i) {
        if (verts[i] == v) return static_cast<int>(i);
      }
      verts.push_back(v);
      degree.push_back(0);
      parent.push_back(static_cast<int>(parent.size()));
      return static_cast<int>(verts.size()) - 1;
    };
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
      return x;
    };
    bool closed = false;
    T inside_sum = constant_;
    for (const auto& e : edges) {
      const int a = local(e.u);
      const int b = local(e.v);
      if (++degree[static_cast<std::size_t>(a)] > 2 || ++degree[static_cast<std::size_t>(b)] > 2) return T(0);
      const int ra = find(a), rb = find(b);
      if (ra == rb) closed = true;
      else parent[static_cast<std::size_t>(ra)] = rb;
      inside_sum += coeff(e.u, e.v);
    }
    const int k = static_cast<int>(edges.size());
    const int nv = static_cast<int>(verts.size());
    if (closed) {
      if (k != n_ || nv != n_) return T(0);
      for (int i = 0; i < nv; ++i) {
        if (find(i) != find(0)) return T(0);
      }
      return inside_sum * full_;
    }
    const int m = nv - k;
    T acc = inside_sum * prob_[k][m];

    T pair_sum = T(0);
    for (int i = 0; i < nv; ++i) {
      for (int j = i + 1; j < nv; ++j) pair_sum += coeff(verts[i], verts[j]);
    }
    if (n_ - nv >= 2) {
      // Edges touching V: vertex sums count pairs inside V twice.
      T outside = total_ + pair_sum;
      for (int v : verts) outside -= vertex_sum_[static_cast<std::size_t>(v)];
      acc += outside * prob_[k + 1][m + 1];
    }
    for (int i = 0; i < nv; ++i) {
      if (degree[static_cast<std::size_t>(i)] != 1) continue;
      if (n_ - nv >= 1) {
        T extend = vertex_sum_[static_cast<std::size_t>(verts[i])];
        for (int j = 0; j < nv; ++j) {
          if (j != i) extend -= coeff(verts[i], verts[j]);
        }
        acc += extend * prob_[k + 1][m];
      }
      for (int j = i + 1; j < nv; ++j) {
        if (degree[static_cast<std::size_t>(j)] != 1) continue;
        if (in_edges(edges, verts[i], verts[j])) continue;
        if (find(i) != find(j)) {
          acc += coeff(verts[i], verts[j]) * prob_[k + 1][m - 1];
        } else if (k + 1 == n_) {
          acc += coeff(verts[i], verts[j]) * full_;
        }
      }
    }
    return acc;
  }

 private:
  const T& coeff(int a, int b) const { return coeff_[static_cast<std::size_t>(edge_index(n_, Edge(a, b)))]; }

  static bool in_edges(std::span<const Edge> edges, int a, int b) {
    const Edge target(a, b);
    return std::find(edges.begin(), edges.end(), target) != edges.end();
  }

  int n_;
  T constant_;
  std::vector<T> coeff_;
  T total_;
  std::vector<T> vertex_sum_;
  std::vector<std::vector<T>> prob_;
  T full_;
};

std::vector<Edge> union_edges(int n, const Monomial& a, const Monomial& b) {
  std::vector<int> idx(a);
  idx.insert(idx.end(), b.begin(), b.end());
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  std::vector<Edge> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(edge_at(n, i));
  return out;
}

}  // namespace

MomentMatrix moment_matrix_closed_form(const LinearFunctional& f, int k, const Limits& limits) {
  if (k < 1) throw InvalidArgument("degree k must be at least 1");
  MomentMatrix M;
  M.n = f.n();
  M.k = k;
  M.basis = MonomialBasis(num_edges(f.n()), k, limits.max_basis);
  const std::size_t N = M.basis.size();
  ClosedFormEvaluator<Rational> eval(f, 2 * k);
  M.entries = RationalMatrix(N);
  if (k == 1) {
    // Hot path: basis is {1} followed by single edges.
    std::vector<Edge> E;
    for (std::size_t a = 0; a < N; ++a) {
      for (std::size_t b = a; b < N; ++b) {
        E.clear();
        if (a > 0) E.push_back(edge_at(f.n(), static_cast<int>(a) - 1));
        if (b > 0 && b != a) E.push_back(edge_at(f.n(), static_cast<int>(b) - 1));
        M.entries.set_symmetric(a, b, eval.entry(E));
      }
    }
    return M;
  }
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = a; b < N; ++b) {
      M.entries.set_symmetric(a, b, eval.entry(union_edges(f.n(), M.basis[a], M.basis[b])));
    }
  }
  return M;
}

MomentMatrix moment_matrix_closed_form_k1(const LinearFunctional& f) {
  Limits unlimited;
  unlimited.max_basis = static_cast<std::size_t>(num_edges(f.n())) + 1;
  return moment_matrix_closed_form(f, 1, unlimited);
}

RealMatrix moment_matrix_closed_form_k1_real(const LinearFunctional& f) {
  const int n = f.n();
  const std::size_t N = static_cast<std::size_t>(num_edges(n)) + 1;
  ClosedFormEvaluator<double> eval(f, 2);
  RealMatrix out(N, 0.0);
  std::vector<Edge> E;
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = a; b < N; ++b) {
      E.clear();
      if (a > 0) E.push_back(edge_at(n, static_cast<int>(a) - 1));
      if (b > 0 && b != a) E.push_back(edge_at(n, static_cast<int>(b) - 1));
      out.set_symmetric(a, b, eval.entry(E));
    }
  }
  return out;
}

Rational containment_probability(int n, std::span<const Edge> edges) {
  Rational p(count_cycles_with_edge_set(n, edges), cycle_count(n));
  p.canonicalize();
  return p;
}

// ---------------------------------------------------------------------------
// Trace and quadratic-form values

Rational trace_of(const MomentMatrix& M) { return M.entries.trace(); }

BigInt trace_multiset_count(int n, int k) { return binomial(n + k, k); }

bool trace_identity_holds(const MomentMatrix& M, const Rational& average) {
  if (!M.over_tours()) throw InvalidArgument("trace identity applies to tour moment matrices");
  return trace_of(M) == Rational(trace_multiset_count(M.n, M.k)) * average;
}

Rational quadratic_form_value(const LinearFunctional& f, const CertificatePolynomial& p, const Limits& limits) {
  Rational total = 0;
  for_each_cycle(
      f.n(),
      [&](const HamiltonianCycle& c) {
        if (p.value_at(c)) total += f.evaluate(c);
      },
      limits);
  return total / Rational(cycle_count(f.n()));
}

Rational quadratic_form_value(const GroundSet& X, std::span<const Rational> f_values,
                              const CertificatePolynomial& p) {
  X.validate();
  if (f_values.size() != X.size()) throw InvalidArgument("need one function value per ground-set point");
  Rational total = 0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    Rational v = p.value_at(std::span<const Rational>(X.points[i]));
    total += f_values[i] * v * v;
  }
  return total / static_cast<long>(X.size());
}

CertificatePolynomial zero_one_certificate(std::span<const Rational> y, const GroundSet& X) {
  X.validate();
  if (!X.is_zero_one()) throw InvalidArgument("zero-one certificate needs a 0/1 ground set");
  const std::vector<Rational> target(y.begin(), y.end());
  if (std::find(X.points.begin(), X.points.end(), target) == X.points.end()) {
    throw InvalidArgument("point y is not in the ground set");
  }
  CertificatePolynomial p;
  p.kind = CertificatePolynomial::Kind::ZeroOneProduct;
  for (int i = 0; i < X.d; ++i) {
    if (target[static_cast<std::size_t>(i)] == 1) p.positive.push_back(i);
    else p.complemented.push_back(i);
  }
  return p;
}

}  // namespace tsppsd
