#include "suites.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>

#include "tsppsd/bounds.hpp"
#include "tsppsd/errors.hpp"
#include "tsppsd/moment.hpp"
#include "tsppsd/psd.hpp"
#include "tsppsd/spectra.hpp"

namespace tsppsd::cli {

namespace {

using Clock = std::chrono::steady_clock;

class Recorder {
 public:
  explicit Recorder(const SuiteOptions& options) : options_(options) {}

  /// body fills the detail object and returns pass/fail. Resource limits propagate.
  void check(std::string id, const std::function<bool(Json&)>& body) {
    CheckResult r;
    r.id = std::move(id);
    r.detail = Json::object();
    const auto t0 = Clock::now();
    try {
      r.passed = body(r.detail);
    } catch (const ResourceLimit&) {
      throw;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail["error"] = e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (options_.log) *options_.log << (r.passed ? "PASS " : "FAIL ") << r.id << '\n';
    results_.push_back(std::move(r));
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  const SuiteOptions& options_;
  std::vector<CheckResult> results_;
};

std::string tag(const char* key, int value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s=%02d", key, value);
  return buf;
}

int grid_max(const SuiteOptions& o, int fallback) { return o.n_max > 0 ? o.n_max : fallback; }

Rational random_rational(std::mt19937_64& rng, int num_range = 9, int den_max = 6) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_max);
  const int a = num(rng);
  const int b = den(rng);
  return ratio(a, b);
}

LinearFunctional random_functional(int n, std::mt19937_64& rng) {
  LinearFunctional f(n);
  f.set_constant(random_rational(rng));
  for (int i = 0; i < num_edges(n); ++i) f.set_coeff(edge_at(n, i), random_rational(rng));
  return f;
}

std::vector<int> first_vertices(int m) {
  std::vector<int> U(static_cast<std::size_t>(m));
  std::iota(U.begin(), U.end(), 1);
  return U;
}

/// ones, every subtour U = {1..m} with 2 <= m <= n/2, both edge bounds on {1,2}, and one 2-matching.
std::vector<std::pair<std::string, LinearFunctional>> facet_family(int n) {
  std::vector<std::pair<std::string, LinearFunctional>> out;
  out.emplace_back("ones", make_ones(n));
  for (int m = 2; 2 * m <= n; ++m) out.emplace_back("subtour-m" + std::to_string(m), make_subtour(n, first_vertices(m)));
  out.emplace_back("edge-upper", make_edge_bound(n, Edge(1, 2), EdgeSide::Upper));
  out.emplace_back("edge-lower", make_edge_bound(n, Edge(1, 2), EdgeSide::Lower));
  if (n >= 6) out.emplace_back("two-matching", make_two_matching(n, {1, 2, 3}, {Edge(1, 4), Edge(2, 5), Edge(3, 6)}));
  return out;
}

Rational max_abs_delta(const RationalMatrix& A, const RationalMatrix& B, std::size_t& mismatches) {
  Rational worst = 0;
  mismatches = 0;
  for (std::size_t i = 0; i < A.dim(); ++i) {
    for (std::size_t j = 0; j < A.dim(); ++j) {
      const Rational d = abs(A(i, j) - B(i, j));
      if (sgn(d) != 0) ++mismatches;
      if (d > worst) worst = d;
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------

/// Path-length partitions with sum(len + 1) <= n, lengths nonincreasing.
void path_patterns(int vertices_left, int max_len, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  out.push_back(cur);
  for (int len = std::min(max_len, vertices_left - 1); len >= 1; --len) {
    cur.push_back(len);
    path_patterns(vertices_left - len - 1, len, cur, out);
    cur.pop_back();
  }
}

void paths_suite(Recorder& rec, const SuiteOptions& o, std::mt19937_64& rng) {
  for (int n = 4; n <= grid_max(o, 9); ++n) {
    const auto cycles = enumerate_cycles(n, o.limits);
    auto enumerated = [&](std::span<const Edge> edges) {
      const EdgeMask m = mask_of(n, edges);
      return static_cast<long>(std::count_if(cycles.begin(), cycles.end(), [&](const auto& c) { return c.contains(m); }));
    };

    std::vector<std::vector<int>> patterns;
    std::vector<int> cur;
    path_patterns(n, n - 1, cur, patterns);
    for (const auto& lengths : patterns) {
      std::vector<int> labels = first_vertices(n);
      std::shuffle(labels.begin(), labels.end(), rng);
      PathSystem ps;
      std::size_t next = 0;
      for (int len : lengths) {
        std::vector<int> path;
        for (int t = 0; t <= len; ++t) path.push_back(labels[next++]);
        ps.paths.push_back(std::move(path));
      }
      std::string id = "paths/" + tag("n", n) + "/lengths=";
      for (std::size_t i = 0; i < lengths.size(); ++i) id += (i ? "+" : "") + std::to_string(lengths[i]);
      if (lengths.empty()) id += "empty";
      rec.check(id, [&](Json& d) {
        const auto edges = ps.edges();
        const BigInt closed = count_cycles_containing(n, ps);
        const BigInt general = count_cycles_with_edge_set(n, edges);
        const long counted = enumerated(edges);
        d["n"] = n;
        d["k"] = ps.k();
        d["m"] = ps.m();
        d["lengths"] = lengths;
        d["closed_form"] = closed.get_str();
        d["enumerated"] = counted;
        return closed == counted && general == counted;
      });
    }

    rec.check("paths/" + tag("n", n) + "/single-edge-sum", [&](Json& d) {
      BigInt total = 0;
      for (int i = 0; i < num_edges(n); ++i) {
        const Edge e = edge_at(n, i);
        total += count_cycles_with_edge_set(n, std::span<const Edge>(&e, 1));
      }
      d["sum"] = total.get_str();
      d["expected"] = BigInt(n * cycle_count(n)).get_str();
      return total == n * cycle_count(n);
    });

    rec.check("paths/" + tag("n", n) + "/impossible-sets", [&](Json& d) {
      const std::vector<Edge> star{Edge(1, 2), Edge(1, 3), Edge(1, 4)};
      const std::vector<Edge> triangle{Edge(1, 2), Edge(2, 3), Edge(1, 3)};
      std::vector<Edge> tour;
      for (int v = 1; v < n; ++v) tour.emplace_back(v, v + 1);
      tour.emplace_back(1, n);
      d["degree_three"] = count_cycles_with_edge_set(n, star).get_str();
      d["triangle"] = count_cycles_with_edge_set(n, triangle).get_str();
      d["full_tour"] = count_cycles_with_edge_set(n, tour).get_str();
      return count_cycles_with_edge_set(n, star) == 0 && enumerated(star) == 0 &&
             count_cycles_with_edge_set(n, triangle) == 0 && enumerated(triangle) == 0 &&
             count_cycles_with_edge_set(n, tour) == 1 && enumerated(tour) == 1;
    });
  }
}

// ---------------------------------------------------------------------------

void moment_suite(Recorder& rec, const SuiteOptions& o, std::mt19937_64& rng) {
  const int n_max = grid_max(o, 9);
  for (int n = 6; n <= n_max; ++n) {
    const auto stars = star_vectors(n);
    for (const auto& [name, f] : facet_family(n)) {
      const std::string base = "moment/" + tag("n", n) + "/" + name;
      const MomentMatrix closed = moment_matrix_closed_form_k1(f);
      rec.check(base + "/closed-form-vs-enumerated", [&](Json& d) {
        const MomentMatrix enumd = moment_matrix_enumerated(f, 1, o.limits);
        std::size_t mismatches = 0;
        const Rational delta = max_abs_delta(closed.entries, enumd.entries, mismatches);
        d["dim"] = closed.dim();
        d["mismatches"] = mismatches;
        d["max_abs_delta"] = rational_json(delta);
        return mismatches == 0;
      });
      rec.check(base + "/trace-k1", [&](Json& d) {
        const Rational t = trace_of(closed);
        d["trace"] = rational_json(t);
        d["expected"] = trace_multiset_count(n, 1).get_str();
        return trace_identity_holds(closed, 1);
      });
      if (n <= 8) {
        rec.check(base + "/trace-k2", [&](Json& d) {
          const MomentMatrix M2 = moment_matrix_enumerated(f, 2, o.limits);
          d["dim"] = M2.dim();
          d["trace"] = rational_json(trace_of(M2));
          d["expected"] = trace_multiset_count(n, 2).get_str();
          return trace_identity_holds(M2, 1);
        });
      }
      rec.check(base + "/star-kernel", [&](Json& d) {
        std::size_t bad = 0;
        for (const auto& s : stars) {
          const auto image = closed.entries.multiply(s);
          if (std::any_of(image.begin(), image.end(), [](const Rational& x) { return sgn(x) != 0; })) ++bad;
        }
        d["stars"] = stars.size();
        d["outside_kernel"] = bad;
        return bad == 0;
      });
    }
  }

  // Non-normalized functionals: the trace scales with the average.
  for (int t = 0; t < 20; ++t) {
    const int n = 6 + t % 2;
    const int k = t < 4 ? 2 : 1;
    const LinearFunctional f = random_functional(n, rng);
    char id[64];
    std::snprintf(id, sizeof id, "moment/random-trace/%02d", t);
    rec.check(id, [&](Json& d) {
      const Rational avg = average_on_X(f);
      const MomentMatrix M = moment_matrix_enumerated(f, k, o.limits);
      d["n"] = n;
      d["k"] = k;
      d["average"] = rational_json(avg);
      d["trace"] = rational_json(trace_of(M));
      return trace_identity_holds(M, avg);
    });
  }
}

// ---------------------------------------------------------------------------

void certificates_suite(Recorder& rec, const SuiteOptions& o) {
  const int n_max = grid_max(o, 8);
  auto certify = [&](const std::string& id, const FacetSpec& spec) {
    rec.check(id, [&](Json& d) {
      const LinearFunctional f = spec.build();
      const CertificatePolynomial p = boundary_certificate(spec);
      const Rational q = quadratic_form_value(f, p, o.limits);
      d["facet"] = facet_spec_json(spec);
      d["certificate"] = certificate_json(p, f.n());
      d["q_value"] = rational_json(q);
      return sgn(q) == 0;
    });
  };
  for (int n = 5; n <= n_max; ++n) {
    for (int i = 0; i < num_edges(n); ++i) {
      for (auto kind : {FacetSpec::Kind::EdgeUpper, FacetSpec::Kind::EdgeLower}) {
        FacetSpec spec;
        spec.kind = kind;
        spec.n = n;
        spec.edge = edge_at(n, i);
        certify("certificates/" + tag("n", n) + "/" + to_string(kind) + "/" + spec.edge->label(), spec);
      }
    }
    for (int m = 2; 2 * m <= n; ++m) {
      FacetSpec spec;
      spec.kind = FacetSpec::Kind::Subtour;
      spec.n = n;
      spec.U = first_vertices(m);
      certify("certificates/" + tag("n", n) + "/subtour/" + tag("m", m), spec);
    }
    if (n == 7 || n == 8) {
      FacetSpec spec;
      spec.kind = FacetSpec::Kind::TwoMatching;
      spec.n = n;
      spec.U = {1, 2, 3};
      spec.F = {Edge(1, 4), Edge(2, 5), Edge(3, 6)};
      certify("certificates/" + tag("n", n) + "/two-matching/m=03-s=01", spec);
    }
  }
}

// ---------------------------------------------------------------------------

void spectra_suite(Recorder& rec, const SuiteOptions& o) {
  const int n_max = grid_max(o, 10);
  for (int n = 6; n <= n_max; ++n) {
    for (int m = 3; 2 * m <= n; ++m) {
      for (int a : {0, 1, 5}) {
        rec.check("spectra/" + tag("n", n) + "/" + tag("m", m) + "/a=" + std::to_string(a), [&](Json& d) {
          const EigenpairReport r = verify_eigenpairs_exact(n, m, a, 14);
          d = eigenpair_json(r);
          return r.ok();
        });
      }
      rec.check("spectra/" + tag("n", n) + "/" + tag("m", m) + "/multiplicities", [&](Json& d) {
        const SpectrumReport s = closed_form_spectrum(n, m, AValue::rational(1));
        d["multiplicity_sum"] = s.multiplicity_sum;
        d["expected"] = num_edges(n) - 1;
        d["mixed_forms_agree"] = s.mixed_forms_agree;
        return s.multiplicity_ok && s.mixed_forms_agree;
      });
    }
    rec.check("spectra/" + tag("n", n) + "/subtour-pair-kernel", [&](Json& d) {
      const SubtourPairReport r = subtour_pair_kernel(n, 14);
      d["row_vanishes"] = r.row_vanishes;
      if (r.kernel_dim) d["kernel_dim"] = *r.kernel_dim;
      d["expected_kernel_dim"] = n + 1;
      return r.ok();
    });
  }
  for (int n = 5; n <= std::min(n_max, 12); ++n) {
    rec.check("spectra/" + tag("n", n) + "/ones", [&](Json& d) {
      const OnesReport r = ones_spectrum(n);
      d["trace"] = rational_json(r.trace);
      d["four_cycle_rank"] = r.four_cycle_rank;
      d["residual_eigenvalue"] = rational_json(r.residual_eigenvalue);
      d["untabled_numeric"] = r.untabled_numeric;
      return r.ok();
    });
  }
  for (int n = 6; n <= std::max(n_max, 40); ++n) {
    rec.check("spectra/" + tag("n", n) + "/sqrt-n", [&](Json& d) {
      const SqrtNReport r = sqrt_n_nonpositivity(n, true);
      d = sqrt_n_json(r);
      return r.ok();
    });
  }
}

// ---------------------------------------------------------------------------

void bounds_suite(Recorder& rec, const SuiteOptions& o, std::mt19937_64& rng) {
  const int n_max = grid_max(o, 9);
  for (int n = 4; n <= n_max; ++n) {
    const HamiltonianCycle y = identity_cycle(n);
    for (int k = 1; 2 * k <= n; ++k) {
      rec.check("bounds/" + tag("n", n) + "/" + tag("k", k) + "/oracle", [&](Json& d) {
        const OracleSummary s = bound_oracle_summary(n, k, y, o.limits);
        const CountPair c = eo_counts(n, k);
        const BoundReport r = bound_report(n, k);
        d["oracle"] = oracle_json(s);
        d["off_tour_count"] = c.off_tour.get_str();
        d["on_tour_count"] = c.on_tour.get_str();
        d["bound"] = rational_json(r.bound);
        d["closed_form"] = rational_json(r.closed_form);
        bool ok = s.two_valued && s.off_tour == c.off_tour && s.on_tour == c.on_tour && r.bound_matches_closed_form;
        if (k == 1) ok = ok && r.bound == 1 - n;
        return ok;
      });
    }
  }

  if (n_max >= 7) {
    rec.check("bounds/n=07/k=02/tour-invariance", [&](Json& d) {
      const CountPair c = eo_counts(7, 2);
      Json tours = Json::array();
      bool ok = true;
      for (int t = 0; t < 5; ++t) {
        std::vector<int> order = first_vertices(7);
        std::shuffle(order.begin(), order.end(), rng);
        const HamiltonianCycle y(7, order);
        const OracleSummary s = bound_oracle_summary(7, 2, y, o.limits);
        ok = ok && s.two_valued && s.off_tour == c.off_tour && s.on_tour == c.on_tour;
        tours.push_back(y.order());
      }
      d["tours"] = tours;
      return ok;
    });
  }

  rec.check("bounds/closed-form-grid", [&](Json& d) {
    int bad = 0;
    for (int n = 6; n <= 60; ++n) {
      for (int k = 1; 2 * k <= n; ++k) bad += bound_report(n, k).bound_matches_closed_form ? 0 : 1;
    }
    d["n_range"] = {6, 60};
    d["mismatches"] = bad;
    return bad == 0;
  });

  rec.check("bounds/alpha-grid", [&](Json& d) {
    int bad = 0;
    Rational worst = 0;
    for (int n = 9; n <= 200; ++n) {
      for (int k = 1; 2 * k <= n; ++k) {
        const BoundReport r = bound_report(n, k);
        if (!r.alpha_within) ++bad;
        const Rational scaled = abs(r.alpha_k) * n;
        if (scaled > worst) worst = scaled;
      }
    }
    d["n_range"] = {9, 200};
    d["violations"] = bad;
    d["max_n_times_abs_alpha"] = rational_json(worst);
    return bad == 0;
  });

  for (int n = 5; n <= std::min(n_max, 8); ++n) {
    rec.check("bounds/" + tag("n", n) + "/edge-sum-identity", [&](Json& d) {
      const auto cycles = enumerate_cycles(n, o.limits);
      std::uniform_int_distribution<std::size_t> pick(0, cycles.size() - 1);
      int trials = 0;
      bool ok = true;
      while (trials < 5) {
        LinearFunctional f = random_functional(n, rng);
        const Rational avg = average_on_X(f);
        if (sgn(avg) == 0) continue;
        f = f.scaled(Rational(1 / avg));
        ok = ok && edge_sum_identity(f, cycles[pick(rng)]);
        ++trials;
      }
      d["trials"] = trials;
      return ok;
    });

    // Push ones + t g outward along random directions g with zero average; the last accepted
    // functional sits near the boundary of P_1 and must still respect the -n + 1 bound.
    rec.check("bounds/" + tag("n", n) + "/membership-consistency", [&](Json& d) {
      const auto cycles = enumerate_cycles(n, o.limits);
      const Rational floor = proposition_bound(n, 1);
      Rational lowest = 1;
      int accepted = 0;
      for (int trial = 0; trial < 4; ++trial) {
        LinearFunctional g = random_functional(n, rng);
        g.set_constant(g.constant() - average_on_X(g));
        Rational t = ratio(1, 64);
        for (int step = 0; step < 12; ++step, t *= 2) {
          const LinearFunctional f = combine(1, make_ones(n), t, g);
          if (!membership_P1(f, PsdMethod::Exact, o.limits).is_psd()) break;
          ++accepted;
          for (const auto& c : cycles) lowest = std::min(lowest, f.evaluate(c));
        }
      }
      d["accepted"] = accepted;
      d["lowest_value"] = rational_json(lowest);
      d["bound"] = rational_json(floor);
      return lowest >= floor;
    });
  }
}

// ---------------------------------------------------------------------------

void zero_one_suite(Recorder& rec, const SuiteOptions& o, std::mt19937_64& rng) {
  const int d_max = std::min(grid_max(o, 4), 4);
  for (int dim = 1; dim <= d_max; ++dim) {
    for (int trial = 0; trial < 25; ++trial) {
      GroundSet X;
      X.d = dim;
      const int cube = 1 << dim;
      std::uniform_int_distribution<int> bit(0, 1);
      for (int p = 0; p < cube; ++p) {
        if (!bit(rng)) continue;
        std::vector<Rational> point;
        for (int i = 0; i < dim; ++i) point.emplace_back((p >> i) & 1);
        X.points.push_back(std::move(point));
      }
      if (X.points.empty()) X.points.push_back(std::vector<Rational>(static_cast<std::size_t>(dim), Rational(0)));
      AffineFunction f;
      f.constant = random_rational(rng, 4, 4);
      for (int i = 0; i < dim; ++i) f.coeffs.push_back(random_rational(rng, 4, 4));

      char id[64];
      std::snprintf(id, sizeof id, "zero-one/d=%d/%02d", dim, trial);
      rec.check(id, [&](Json& d) {
        const CollapseResult r = zero_one_collapse_check(X, f);
        std::vector<Rational> values;
        for (const auto& x : X.points) values.push_back(f.evaluate(x));
        // Degree-d moment matrix: PSD exactly when f >= 0 on X.
        const MomentMatrix M = moment_matrix_enumerated(X, values, dim, o.limits);
        const bool psd = is_psd_exact(M.entries).is_psd();
        d["points"] = X.points.size();
        d["f_min"] = rational_json(r.f_min);
        d["in_Q"] = r.in_Q;
        d["moment_psd"] = psd;
        if (r.q_value) d["q_value"] = rational_json(*r.q_value);
        if (r.certificate) d["certificate"] = certificate_json(*r.certificate, 0);
        if (sgn(r.f_min) >= 0) return r.in_Q && psd;
        return !r.in_Q && r.identity_holds && sgn(*r.q_value) < 0 && !psd;
      });
    }
  }
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"paths", "moment", "certificates", "spectra", "bounds", "zero-one"};
  return names;
}

bool is_suite(const std::string& name) {
  return name == "all" || std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& options) {
  if (!is_suite(name)) throw InvalidArgument("unknown suite '" + name + "'");
  Recorder rec(options);
  auto run_one = [&](const std::string& s) {
    // Each suite seeds its own stream so results do not depend on which other suites ran.
    const auto index = static_cast<std::uint64_t>(std::find(suite_names().begin(), suite_names().end(), s) - suite_names().begin());
    std::seed_seq seq{options.seed, index};
    std::mt19937_64 rng(seq);
    if (s == "paths") paths_suite(rec, options, rng);
    else if (s == "moment") moment_suite(rec, options, rng);
    else if (s == "certificates") certificates_suite(rec, options);
    else if (s == "spectra") spectra_suite(rec, options);
    else if (s == "bounds") bounds_suite(rec, options, rng);
    else if (s == "zero-one") zero_one_suite(rec, options, rng);
  };
  if (name == "all") {
    for (const auto& s : suite_names()) run_one(s);
  } else {
    run_one(name);
  }
  auto results = rec.take();
  std::stable_sort(results.begin(), results.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return results;
}

Json suite_report(const std::string& name, const SuiteOptions& options, const std::vector<CheckResult>& results,
                  bool timing) {
  Json j;
  j["suite"] = name;
  j["seed"] = options.seed;
  if (options.n_max > 0) j["n_max"] = options.n_max;
  const auto failed = std::count_if(results.begin(), results.end(), [](const auto& r) { return !r.passed; });
  j["checks"] = results.size();
  j["passed"] = results.size() - static_cast<std::size_t>(failed);
  j["failed"] = failed;
  Json rows = Json::array();
  double total = 0.0;
  for (const auto& r : results) {
    Json row;
    row["id"] = r.id;
    row["status"] = r.passed ? "PASS" : "FAIL";
    row["detail"] = r.detail;
    if (timing) row["wall_seconds"] = r.seconds;
    total += r.seconds;
    rows.push_back(std::move(row));
  }
  j["results"] = std::move(rows);
  if (timing) j["wall_seconds"] = total;
  return j;
}

}  // namespace tsppsd::cli
