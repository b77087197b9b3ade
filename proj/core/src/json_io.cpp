#include "tsppsd/json_io.hpp"

#include <fstream>
#include <sstream>

#include "tsppsd/errors.hpp"

namespace tsppsd {

Json rational_json(const Rational& q) { return to_pq_string(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(BigInt(std::to_string(j.get<long long>())));
  throw InvalidArgument("expected a rational as a \"p/q\" string, got " + j.dump());
}

Json rational_vector_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_json(x));
  return out;
}

Edge edge_from_json(const Json& j) {
  if (j.is_string()) return parse_edge(j.get<std::string>());
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
    return Edge(j[0].get<int>(), j[1].get<int>());
  }
  throw InvalidArgument("expected an edge as \"u-v\" or [u, v], got " + j.dump());
}

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.contains(key)) throw InvalidArgument(std::string("functional spec is missing \"") + key + "\"");
  return j.at(key);
}

std::vector<int> vertex_list(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("vertex set must be a JSON array");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InvalidArgument("vertex ids must be integers");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<Edge> edge_list(const Json& j) {
  if (j.is_string()) return parse_edge_list(j.get<std::string>());
  if (!j.is_array()) throw InvalidArgument("edge list must be an array or a \"1-2,3-4\" string");
  std::vector<Edge> out;
  for (const auto& e : j) out.push_back(edge_from_json(e));
  return out;
}

}  // namespace

FacetSpec facet_spec_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("functional spec must be a JSON object");
  FacetSpec spec;
  spec.kind = facet_kind_from_string(require(j, "kind").get<std::string>());
  if (j.contains("n")) {
    if (!j["n"].is_number_integer()) throw InvalidArgument("\"n\" must be an integer");
    spec.n = j["n"].get<int>();
  } else if (spec.kind != FacetSpec::Kind::Combination) {
    throw InvalidArgument("functional spec is missing \"n\"");
  }
  using K = FacetSpec::Kind;
  switch (spec.kind) {
    case K::Subtour:
      spec.U = vertex_list(require(j, "U"));
      break;
    case K::EdgeUpper:
    case K::EdgeLower:
      spec.edge = edge_from_json(require(j, "edge"));
      break;
    case K::TwoMatching:
      spec.U = vertex_list(require(j, "U"));
      spec.F = edge_list(require(j, "F"));
      break;
    case K::Ones:
      break;
    case K::Explicit: {
      if (j.contains("constant")) spec.constant = rational_from_json(j["constant"]);
      if (j.contains("coeffs")) {
        const Json& c = j["coeffs"];
        if (!c.is_object()) throw InvalidArgument("\"coeffs\" must map \"u-v\" to rationals");
        for (const auto& [key, value] : c.items()) spec.coeffs.emplace_back(parse_edge(key), rational_from_json(value));
      }
      break;
    }
    case K::Combination: {
      const Json& terms = require(j, "terms");
      if (!terms.is_array()) throw InvalidArgument("\"terms\" must be an array");
      for (const auto& t : terms) {
        spec.terms.push_back({rational_from_json(require(t, "scale")), facet_spec_from_json(require(t, "func"))});
      }
      break;
    }
  }
  spec.validate();
  return spec;
}

Json facet_spec_json(const FacetSpec& spec) {
  Json j;
  j["kind"] = to_string(spec.kind);
  if (spec.kind != FacetSpec::Kind::Combination || spec.n != 0) j["n"] = spec.resolved_n();
  using K = FacetSpec::Kind;
  switch (spec.kind) {
    case K::Subtour:
      j["U"] = spec.U;
      break;
    case K::EdgeUpper:
    case K::EdgeLower:
      j["edge"] = spec.edge->label();
      break;
    case K::TwoMatching: {
      j["U"] = spec.U;
      Json F = Json::array();
      for (const auto& e : spec.F) F.push_back(e.label());
      j["F"] = F;
      break;
    }
    case K::Ones:
      break;
    case K::Explicit: {
      j["constant"] = rational_json(spec.constant);
      Json c = Json::object();
      for (const auto& [e, value] : spec.coeffs) c[e.label()] = rational_json(value);
      j["coeffs"] = c;
      break;
    }
    case K::Combination: {
      Json terms = Json::array();
      for (const auto& t : spec.terms) terms.push_back({{"scale", rational_json(t.scale)}, {"func", facet_spec_json(t.func)}});
      j["terms"] = terms;
      break;
    }
  }
  return j;
}

FacetSpec load_facet_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open functional spec '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("functional spec '" + path + "' is not valid JSON: " + e.what());
  }
  return facet_spec_from_json(j);
}

Json functional_json(const LinearFunctional& f) {
  Json c = Json::object();
  for (int i = 0; i < num_edges(f.n()); ++i) {
    if (sgn(f.coeff(i)) != 0) c[edge_at(f.n(), i).label()] = rational_json(f.coeff(i));
  }
  return {{"n", f.n()}, {"constant", rational_json(f.constant())}, {"coeffs", c}};
}

Json moment_matrix_json(const MomentMatrix& M) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < M.dim(); ++r) {
    Json row = Json::array();
    for (const auto& x : M.entries.row(r)) row.push_back(rational_json(x));
    entries.push_back(std::move(row));
  }
  Json j;
  j["n"] = M.n;
  j["k"] = M.k;
  j["basis"] = M.labels();
  j["entries"] = std::move(entries);
  return j;
}

std::string moment_matrix_csv(const MomentMatrix& M) {
  std::ostringstream out;
  const auto labels = M.labels();
  out << "row";
  for (const auto& l : labels) out << ',' << l;
  out << '\n';
  for (std::size_t r = 0; r < M.dim(); ++r) {
    out << labels[r];
    for (const auto& x : M.entries.row(r)) out << ',' << to_pq_string(x);
    out << '\n';
  }
  return out.str();
}

Json verdict_json(const PsdVerdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["method"] = to_string(v.method);
  j["rank"] = v.rank;
  if (v.tolerance) j["tolerance"] = *v.tolerance;
  if (v.min_eigenvalue_estimate) j["min_eigenvalue_estimate"] = *v.min_eigenvalue_estimate;
  if (!v.witness.empty()) j["witness"] = rational_vector_json(v.witness);
  if (v.witness_value) j["witness_value"] = rational_json(*v.witness_value);
  return j;
}

Json certificate_json(const CertificatePolynomial& p, int n) {
  Json j;
  j["kind"] = to_string(p.kind);
  j["degree"] = p.degree();
  j["polynomial"] = n > 0 ? p.to_string_edges(n) : p.to_string_coords();
  return j;
}

namespace {

Json family_json(const EigenFamily& f) {
  Json j;
  j["label"] = f.label;
  j["multiplicity"] = f.multiplicity;
  j["lambda_U"] = rational_json(f.lambda_U);
  if (f.eigenvalue) j["eigenvalue"] = rational_json(*f.eigenvalue);
  j["eigenvalue_float"] = f.eigenvalue_float;
  return j;
}

Json residual_json(const ResidualPair& r) {
  Json j;
  j["c_poly"] = {{"c0", r.c0.get_str()}, {"c1", r.c1.get_str()}};
  j["d_poly"] = {{"d0", r.d0.get_str()}, {"d1", r.d1.get_str()}, {"d2", r.d2.get_str()}};
  j["denominator"] = r.denominator.get_str();
  if (r.c) j["c"] = rational_json(*r.c);
  if (r.d) j["d"] = rational_json(*r.d);
  j["c_float"] = r.c_float;
  j["d_float"] = r.d_float;
  j["d_sign"] = r.d_sign;
  j["complex"] = r.complex;
  j["lambda_plus"] = r.lambda_plus;
  j["lambda_minus"] = r.lambda_minus;
  j["lambda_minus_sign"] = r.lambda_minus_sign;
  return j;
}

}  // namespace

Json spectrum_json(const SpectrumReport& r) {
  Json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["a"] = r.a.label();
  Json fam = Json::array();
  for (const auto& f : r.families) fam.push_back(family_json(f));
  j["families"] = fam;
  j["residual"] = residual_json(r.residual);
  j["multiplicity_sum"] = r.multiplicity_sum;
  j["multiplicity_ok"] = r.multiplicity_ok;
  j["mixed_forms_agree"] = r.mixed_forms_agree;
  return j;
}

Json eigenpair_json(const EigenpairReport& r) {
  Json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["a"] = rational_json(r.a);
  Json fam = Json::array();
  for (const auto& f : r.families) {
    fam.push_back({{"label", f.label},
                   {"vectors", f.vectors},
                   {"rank", f.rank},
                   {"multiplicity", f.multiplicity},
                   {"eigenvalue", rational_json(f.eigenvalue)},
                   {"eigen_identity", f.eigen_identity},
                   {"rank_matches", f.rank_matches}});
  }
  j["families"] = fam;
  j["trace"] = rational_json(r.trace);
  j["trace_expected"] = rational_json(r.trace_expected);
  j["trace_accounting"] = r.trace_accounting;
  j["square_trace_accounting"] = r.square_trace_accounting;
  if (r.numeric_max_delta) j["numeric_max_delta"] = *r.numeric_max_delta;
  j["ok"] = r.ok();
  return j;
}

Json sqrt_n_json(const SqrtNReport& r) {
  Json j;
  j["n"] = r.n;
  Json rows = Json::array();
  for (const auto& e : r.entries) {
    rows.push_back({{"m", e.m},
                    {"lambda_minus", e.lambda_minus},
                    {"lambda_minus_sign", e.lambda_minus_sign},
                    {"complex", e.complex},
                    {"numeric_min", e.numeric_min},
                    {"predicted_min", e.predicted_min},
                    {"nonpositive", e.nonpositive},
                    {"numeric_agrees", e.numeric_agrees}});
  }
  j["entries"] = rows;
  j["ok"] = r.ok();
  return j;
}

Json bound_json(const BoundReport& r) {
  Json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["parity"] = r.even ? "even" : "odd";
  j["b_k"] = r.b_k.get_str();
  j["c_k"] = r.c_k.get_str();
  j["bound"] = rational_json(r.bound);
  j["closed_form"] = rational_json(r.closed_form);
  j["bound_matches_closed_form"] = r.bound_matches_closed_form;
  j["a_k"] = rational_json(r.a_k);
  j["alpha_k"] = rational_json(r.alpha_k);
  j["ten_over_n"] = rational_json(r.ten_over_n);
  j["alpha_within"] = r.alpha_within;
  return j;
}

Json oracle_json(const OracleSummary& s) {
  return {{"two_valued", s.two_valued}, {"off_tour", s.off_tour.get_str()}, {"on_tour", s.on_tour.get_str()}};
}

std::string bound_grid_csv(int n_max) {
  if (n_max < 9) throw InvalidArgument("grid needs n-max >= 9");
  std::ostringstream out;
  out << "n,k,off_tour_count,on_tour_count,a_k,alpha_k,ten_over_n,alpha_within\n";
  for (int n = 9; n <= n_max; ++n) {
    for (int k = 1; k <= n / 2; ++k) {
      const BoundReport r = bound_report(n, k);
      out << n << ',' << k << ',' << r.b_k.get_str() << ',' << r.c_k.get_str() << ',' << to_pq_string(r.a_k) << ','
          << to_pq_string(r.alpha_k) << ',' << to_pq_string(r.ten_over_n) << ',' << (r.alpha_within ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

}  // namespace tsppsd
