#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "tsppsd/bounds.hpp"
#include "tsppsd/functionals.hpp"
#include "tsppsd/moment.hpp"
#include "tsppsd/psd.hpp"
#include "tsppsd/spectra.hpp"

namespace tsppsd {

using Json = nlohmann::ordered_json;

/// Rationals travel as "p/q" strings; bare JSON integers are accepted on input.
Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json rational_vector_json(const std::vector<Rational>& v);

/// Edges are "u-v" strings or [u, v] pairs on input, "u-v" on output.
Edge edge_from_json(const Json& j);

/// Functional spec files; throws InvalidArgument on malformed input.
FacetSpec facet_spec_from_json(const Json& j);
Json facet_spec_json(const FacetSpec& spec);
FacetSpec load_facet_spec(const std::string& path);

Json functional_json(const LinearFunctional& f);

/// {"n","k","basis","entries"}.
Json moment_matrix_json(const MomentMatrix& M);
/// Basis labels as the header row, one row per basis element.
std::string moment_matrix_csv(const MomentMatrix& M);

Json verdict_json(const PsdVerdict& v);
Json certificate_json(const CertificatePolynomial& p, int n);

Json spectrum_json(const SpectrumReport& r);
Json eigenpair_json(const EigenpairReport& r);
Json sqrt_n_json(const SqrtNReport& r);

Json bound_json(const BoundReport& r);
Json oracle_json(const OracleSummary& s);
/// One row per (n, k) with 9 <= n <= n_max; columns name the quantities they hold.
std::string bound_grid_csv(int n_max);

}  // namespace tsppsd
