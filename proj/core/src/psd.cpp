#include "tsppsd/psd.hpp"

#include <algorithm>
#include <cmath>

#include "tsppsd/eigen_solver.hpp"
#include "tsppsd/errors.hpp"

namespace tsppsd {

namespace {

/// Scales a rational vector to a primitive integer vector with the same direction.
std::vector<Rational> primitive(std::vector<Rational> v) {
  BigInt l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  BigInt g = 0;
  for (auto& x : v) {
    x *= l;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  }
  if (g > 1) {
    for (auto& x : v) x /= g;
  }
  return v;
}

PsdVerdict not_psd(const RationalMatrix& M, std::vector<Rational> v, PsdMethod method) {
  v = primitive(std::move(v));
  Rational value = M.quadratic_form(v);
  PsdVerdict out;
  out.method = method;
  out.status = PsdStatus::NOT_PSD;
  // Only the float path can land here with a nonnegative value; the exact witness is negative by construction.
  if (sgn(value) >= 0) return out;
  out.witness = std::move(v);
  out.witness_value = value;
  return out;
}

}  // namespace

PsdVerdict is_psd_exact(const RationalMatrix& M) {
  if (!M.is_symmetric()) throw InvalidArgument("PSD test needs a symmetric matrix");
  const std::size_t N = M.dim();
  RationalMatrix S = M;  // Schur complement on the active indices
  std::vector<std::size_t> active(N);
  for (std::size_t i = 0; i < N; ++i) active[i] = i;
  std::vector<std::size_t> pivots;
  // multipliers[t][j] = S_{j,p_t} / S_{p_t,p_t} for every j active at step t.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> multipliers;

  auto lift = [&](std::vector<Rational> v) {
    for (std::size_t t = pivots.size(); t-- > 0;) {
      Rational acc = 0;
      for (const auto& [j, l] : multipliers[t]) {
        if (sgn(v[j]) != 0) acc -= l * v[j];
      }
      v[pivots[t]] = acc;
    }
    return not_psd(M, std::move(v), PsdMethod::Exact);
  };

  Rational tmp;
  while (!active.empty()) {
    std::size_t best = active.front();
    for (std::size_t i : active) {
      if (sgn(S(i, i)) < 0) {
        std::vector<Rational> v(N, Rational(0));
        v[i] = 1;
        return lift(std::move(v));
      }
      if (S(i, i) > S(best, best)) best = i;
    }
    if (sgn(S(best, best)) == 0) {
      // All remaining diagonals vanish; any nonzero off-diagonal gives e_i - sign(S_ij) e_j.
      for (std::size_t a = 0; a < active.size(); ++a) {
        for (std::size_t b = a + 1; b < active.size(); ++b) {
          const std::size_t i = active[a], j = active[b];
          if (sgn(S(i, j)) != 0) {
            std::vector<Rational> v(N, Rational(0));
            v[i] = 1;
            v[j] = -sgn(S(i, j));
            return lift(std::move(v));
          }
        }
      }
      break;
    }

    const std::size_t p = best;
    active.erase(std::find(active.begin(), active.end(), p));
    std::vector<std::pair<std::size_t, Rational>> column;
    column.reserve(active.size());
    for (std::size_t j : active) {
      if (sgn(S(j, p)) != 0) column.emplace_back(j, S(j, p) / S(p, p));
    }
    for (std::size_t a = 0; a < column.size(); ++a) {
      const auto& [i, li] = column[a];
      for (std::size_t b = a; b < column.size(); ++b) {
        const std::size_t j = column[b].first;
        mpq_mul(tmp.get_mpq_t(), li.get_mpq_t(), S(j, p).get_mpq_t());
        mpq_sub(S(i, j).get_mpq_t(), S(i, j).get_mpq_t(), tmp.get_mpq_t());
        if (i != j) S(j, i) = S(i, j);
      }
    }
    pivots.push_back(p);
    multipliers.push_back(std::move(column));
  }

  PsdVerdict out;
  out.status = PsdStatus::PSD;
  out.method = PsdMethod::Exact;
  out.rank = pivots.size();
  return out;
}

PsdVerdict is_psd_float(const RealMatrix& M, double tol) {
  const SymmetricEigen eig = symmetric_eigen(M, false);
  const double threshold = tol * std::max(1.0, infinity_norm(M));
  PsdVerdict out;
  out.method = PsdMethod::Float;
  out.tolerance = tol;
  out.min_eigenvalue_estimate = eig.values.empty() ? 0.0 : eig.values.front();
  out.status = (eig.values.empty() || eig.values.front() >= -threshold) ? PsdStatus::PSD : PsdStatus::NOT_PSD;
  out.rank = static_cast<std::size_t>(
      std::count_if(eig.values.begin(), eig.values.end(), [&](double v) { return v > threshold; }));
  return out;
}

PsdVerdict is_psd_float(const RationalMatrix& M, double tol) {
  const RealMatrix R = to_real(M);
  PsdVerdict out = is_psd_float(R, tol);
  if (out.is_psd()) return out;
  const SymmetricEigen eig = symmetric_eigen(R, true);
  const auto& u = eig.vectors.front();
  double umax = 0.0;
  for (double x : u) umax = std::max(umax, std::abs(x));
  // Round to a 2^-30 grid relative to the largest component.
  std::vector<Rational> v(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    v[i] = ratio(BigInt(static_cast<long>(std::lround(u[i] / umax * 1073741824.0))), BigInt(1073741824L));
  }
  PsdVerdict w = not_psd(M, std::move(v), PsdMethod::Float);
  out.witness = std::move(w.witness);
  out.witness_value = w.witness_value;
  return out;
}

namespace {

void require_average_one(const LinearFunctional& f) {
  const Rational avg = average_on_X(f);
  if (avg != 1) {
    throw InvalidArgument("membership needs average exactly 1 over all tours; computed average is " +
                          to_pq_string(avg));
  }
}

PsdVerdict decide(const RationalMatrix& M, PsdMethod method, double tol) {
  return method == PsdMethod::Exact ? is_psd_exact(M) : is_psd_float(M, tol);
}

}  // namespace

PsdVerdict membership_P1(const LinearFunctional& f, PsdMethod method, const Limits& limits, double tol) {
  require_average_one(f);
  if (f.n() > limits.exact_max_n) {
    throw ResourceLimit("closed-form membership is capped at n = " + std::to_string(limits.exact_max_n));
  }
  if (method == PsdMethod::Float) {
    // Assemble in double directly; exact entries are only needed to re-check a witness.
    PsdVerdict out = is_psd_float(moment_matrix_closed_form_k1_real(f), tol);
    if (out.is_psd()) return out;
    PsdVerdict w = is_psd_float(moment_matrix_closed_form_k1(f).entries, tol);
    out.witness = std::move(w.witness);
    out.witness_value = w.witness_value;
    return out;
  }
  return is_psd_exact(moment_matrix_closed_form_k1(f).entries);
}

PsdVerdict membership_Pk_enumerated(const LinearFunctional& f, int k, PsdMethod method, const Limits& limits,
                                    double tol) {
  require_average_one(f);
  return decide(moment_matrix_enumerated(f, k, limits).entries, method, tol);
}

CertificatePolynomial boundary_certificate(const FacetSpec& spec) {
  spec.validate();
  const int n = spec.resolved_n();
  switch (spec.kind) {
    case FacetSpec::Kind::EdgeUpper: {
      const Edge e = *spec.edge;
      return edge_monomial(n, std::span<const Edge>(&e, 1));
    }
    case FacetSpec::Kind::EdgeLower: {
      const Edge e = *spec.edge;
      return edge_complement_product(n, std::span<const Edge>(&e, 1));
    }
    case FacetSpec::Kind::Subtour: {
      const auto U = normalize_vertex_set(n, spec.U);
      std::vector<Edge> path;
      for (std::size_t i = 0; i + 1 < U.size(); ++i) path.emplace_back(U[i], U[i + 1]);
      return edge_monomial(n, path);
    }
    case FacetSpec::Kind::TwoMatching: {
      const auto U = normalize_vertex_set(n, spec.U);
      std::vector<Edge> F = spec.F;
      auto inside = [&](int v) { return std::binary_search(U.begin(), U.end(), v); };
      auto u_end = [&](const Edge& e) { return inside(e.u) ? e.u : e.v; };
      std::sort(F.begin(), F.end(), [&](const Edge& a, const Edge& b) { return u_end(a) < u_end(b); });
      // Order U as the F-endpoints (in F order) followed by the remaining vertices.
      std::vector<int> ell;
      for (const auto& e : F) ell.push_back(u_end(e));
      for (int v : U) {
        if (std::find(ell.begin(), ell.end(), v) == ell.end()) ell.push_back(v);
      }
      const std::size_t s = (F.size() - 1) / 2;
      std::vector<Edge> edges(F);
      for (std::size_t j = 0; j < s; ++j) edges.emplace_back(ell[2 * j], ell[2 * j + 1]);
      for (std::size_t t = 2 * s; t + 1 < ell.size(); ++t) edges.emplace_back(ell[t], ell[t + 1]);
      return edge_monomial(n, edges);
    }
    default:
      throw InvalidArgument("no boundary certificate for functional kind '" + to_string(spec.kind) + "'");
  }
}

bool verify_certificate(const LinearFunctional& f, const CertificatePolynomial& p, const Limits& limits) {
  return sgn(quadratic_form_value(f, p, limits)) == 0;
}

CollapseResult zero_one_collapse_check(const GroundSet& X, std::span<const Rational> f_values) {
  X.validate();
  if (!X.is_zero_one()) throw InvalidArgument("collapse check needs a ground set of 0/1 points");
  if (f_values.size() != X.size()) throw InvalidArgument("need one function value per ground-set point");
  CollapseResult out;
  out.argmin = static_cast<std::size_t>(std::min_element(f_values.begin(), f_values.end()) - f_values.begin());
  out.f_min = f_values[out.argmin];
  if (sgn(out.f_min) >= 0) return out;
  out.in_Q = false;
  const auto& y = X.points[out.argmin];
  out.certificate = zero_one_certificate(y, X);
  out.q_value = quadratic_form_value(X, f_values, *out.certificate);
  out.identity_holds = *out.q_value == out.f_min / static_cast<long>(X.size());
  return out;
}

CollapseResult zero_one_collapse_check(const GroundSet& X, const AffineFunction& f) {
  std::vector<Rational> values;
  values.reserve(X.size());
  for (const auto& x : X.points) values.push_back(f.evaluate(x));
  return zero_one_collapse_check(X, values);
}

std::string to_string(PsdStatus status) { return status == PsdStatus::PSD ? "PSD" : "NOT_PSD"; }

std::string to_string(PsdMethod method) { return method == PsdMethod::Exact ? "exact" : "float"; }

}  // namespace tsppsd
