#include "tsppsd_cli/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "suites.hpp"
#include "tsppsd/bounds.hpp"
#include "tsppsd/errors.hpp"
#include "tsppsd/json_io.hpp"
#include "tsppsd/moment.hpp"
#include "tsppsd/psd.hpp"
#include "tsppsd/spectra.hpp"

namespace tsppsd::cli {

namespace {

struct RunConfig {
  std::string command;
  int n = 0;
  int k = 1;
  int m = 0;
  std::string a = "1";
  std::string func_path;
  std::string out = "-";
  std::string format = "json";
  bool format_given = false;
  bool use_float = false;
  double tol = kDefaultFloatTolerance;
  std::optional<std::uint64_t> max_cycles;
  std::optional<std::size_t> max_dim;
  std::uint64_t seed = 0;
  bool timing = false;
  bool verbose = false;

  // per-command switches
  bool count_only = false;
  std::string contains;
  std::string method = "closed-form";
  bool assert_psd = false;
  std::string facet;
  std::string U;
  std::string edge;
  std::string F;
  bool verify = false;
  bool oracle = false;
  bool grid = false;
  int n_max = 0;
  int grid_n_max = 200;
  std::string suite;
};

/// Thrown for bad flag combinations found after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Runner {
 public:
  Runner(const RunConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {
    if (const char* env = std::getenv("TSPPSD_MAX_CYCLES")) {
      try {
        const long long v = std::stoll(env);
        if (v <= 0) throw std::out_of_range("nonpositive");
        limits_.max_cycles = static_cast<std::uint64_t>(v);
      } catch (const std::exception&) {
        throw UsageError(std::string("TSPPSD_MAX_CYCLES must be a positive integer, got '") + env + "'");
      }
    }
    if (cfg.max_cycles) limits_.max_cycles = *cfg.max_cycles;
    if (cfg.max_dim) limits_.max_basis = *cfg.max_dim;
  }

  int dispatch() {
    const auto t0 = std::chrono::steady_clock::now();
    start_ = t0;
    const std::string& c = cfg_.command;
    if (c == "cycles") return cycles();
    if (c == "matrix") return matrix();
    if (c == "membership") return membership();
    if (c == "certify") return certify();
    if (c == "spectrum") return spectrum();
    if (c == "bounds") return bounds();
    if (c == "verify") return verify();
    throw UsageError("no subcommand given");
  }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
  Limits limits_;
  std::chrono::steady_clock::time_point start_;

  double elapsed() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

  void require_format(std::initializer_list<const char*> allowed) const {
    for (const char* f : allowed) {
      if (cfg_.format == f) return;
    }
    throw UsageError("--format " + cfg_.format + " is not available for '" + cfg_.command + "'");
  }

  void emit_text(const std::string& text) {
    if (cfg_.out == "-") {
      out_ << text;
      out_.flush();
      return;
    }
    std::ofstream file(cfg_.out, std::ios::binary);
    if (!file) throw UsageError("cannot open output file '" + cfg_.out + "'");
    file << text;
  }

  void emit(Json j) {
    if (cfg_.timing) j["wall_seconds"] = elapsed();
    emit_text(j.dump(2) + "\n");
  }

  void log(const std::string& line) {
    if (cfg_.verbose) err_ << line << '\n';
  }

  FacetSpec load_spec() {
    FacetSpec spec = load_facet_spec(cfg_.func_path);
    if (cfg_.n != 0 && cfg_.n != spec.resolved_n()) {
      throw UsageError("--n " + std::to_string(cfg_.n) + " disagrees with n = " + std::to_string(spec.resolved_n()) +
                       " in " + cfg_.func_path);
    }
    return spec;
  }

  int cycles() {
    require_format({"json"});
    const int n = cfg_.n;
    if (n < 3) throw InvalidArgument("cycles needs n >= 3");
    const std::vector<Edge> contains = cfg_.contains.empty() ? std::vector<Edge>{} : parse_edge_list(cfg_.contains);
    for (const auto& e : contains) check_edge(n, e);
    Json j;
    j["n"] = n;
    Json labels = Json::array();
    for (const auto& e : contains) labels.push_back(e.label());
    j["contains"] = labels;
    const BigInt count = count_cycles_with_edge_set(n, contains);
    j["count"] = count.get_str();
    if (!cfg_.count_only) {
      const EdgeMask mask = mask_of(n, contains);
      Json list = Json::array();
      for_each_cycle(n, [&](const HamiltonianCycle& c) {
        if (c.contains(mask)) list.push_back(c.order());
      }, limits_);
      j["listed"] = list.size();
      j["cycles"] = std::move(list);
      if (BigInt(static_cast<unsigned long>(j["listed"].get<std::size_t>())) != count) {
        emit(j);
        err_ << "enumerated list disagrees with the closed-form count\n";
        return kExitFailure;
      }
    }
    emit(j);
    return kExitOk;
  }

  int matrix() {
    require_format({"json", "csv"});
    const FacetSpec spec = load_spec();
    const LinearFunctional f = spec.build();
    if (cfg_.k < 1) throw InvalidArgument("--k must be >= 1");
    const MomentMatrix M = cfg_.method == "enumerate" ? moment_matrix_enumerated(f, cfg_.k, limits_)
                                                      : moment_matrix_closed_form(f, cfg_.k, limits_);
    log("matrix dim " + std::to_string(M.dim()));
    if (cfg_.format == "csv") {
      emit_text(moment_matrix_csv(M));
      if (cfg_.timing) err_ << "wall_seconds " << elapsed() << '\n';
    } else {
      emit(moment_matrix_json(M));
    }
    return kExitOk;
  }

  int membership() {
    require_format({"json"});
    const FacetSpec spec = load_spec();
    const LinearFunctional f = spec.build();
    const PsdMethod method = cfg_.use_float ? PsdMethod::Float : PsdMethod::Exact;
    if (cfg_.k < 1) throw InvalidArgument("--k must be >= 1");
    const PsdVerdict v = cfg_.k == 1 ? membership_P1(f, method, limits_, cfg_.tol)
                                     : membership_Pk_enumerated(f, cfg_.k, method, limits_, cfg_.tol);
    Json j;
    j["functional"] = facet_spec_json(spec);
    j["n"] = f.n();
    j["k"] = cfg_.k;
    j["matrix"] = cfg_.k == 1 ? "closed-form" : "enumerated";
    j["verdict"] = verdict_json(v);
    emit(j);
    return cfg_.assert_psd && !v.is_psd() ? kExitFailure : kExitOk;
  }

  int certify() {
    require_format({"json"});
    FacetSpec spec;
    spec.kind = facet_kind_from_string(cfg_.facet);
    spec.n = cfg_.n;
    auto vertices = [](const std::string& text) {
      std::vector<int> out;
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          out.push_back(std::stoi(item));
        } catch (const std::exception&) {
          throw UsageError("bad vertex '" + item + "' in --U");
        }
      }
      return out;
    };
    if (!cfg_.U.empty()) spec.U = vertices(cfg_.U);
    if (!cfg_.edge.empty()) spec.edge = parse_edge(cfg_.edge);
    if (!cfg_.F.empty()) spec.F = parse_edge_list(cfg_.F);
    spec.validate();
    const LinearFunctional f = spec.build();
    const CertificatePolynomial p = boundary_certificate(spec);
    const Rational q = quadratic_form_value(f, p, limits_);
    Json j;
    j["facet"] = facet_spec_json(spec);
    j["certificate"] = certificate_json(p, spec.n);
    j["q_value"] = rational_json(q);
    j["verified"] = sgn(q) == 0;
    emit(j);
    return sgn(q) == 0 ? kExitOk : kExitFailure;
  }

  int spectrum() {
    require_format({"json"});
    const AValue a = parse_a_value(cfg_.a);
    const SpectrumReport report = closed_form_spectrum(cfg_.n, cfg_.m, a);
    Json j = spectrum_json(report);
    bool ok = true;
    if (cfg_.verify) {
      if (a.is_rational()) {
        const EigenpairReport r = verify_eigenpairs_exact(cfg_.n, cfg_.m, a.value);
        j["verification"] = eigenpair_json(r);
        ok = r.ok();
      } else {
        const SqrtNReport r = sqrt_n_nonpositivity(cfg_.n, true, cfg_.m);
        j["verification"] = sqrt_n_json(r);
        ok = r.ok();
      }
    }
    emit(j);
    return ok ? kExitOk : kExitFailure;
  }

  int bounds() {
    if (cfg_.grid) {
      if (!cfg_.format_given || cfg_.format == "csv") {
        emit_text(bound_grid_csv(cfg_.grid_n_max));
        if (cfg_.timing) err_ << "wall_seconds " << elapsed() << '\n';
        return kExitOk;
      }
      Json rows = Json::array();
      for (int n = 9; n <= cfg_.grid_n_max; ++n) {
        for (int k = 1; 2 * k <= n; ++k) rows.push_back(bound_json(bound_report(n, k)));
      }
      emit({{"rows", rows}});
      return kExitOk;
    }
    require_format({"json"});
    const BoundReport r = bound_report(cfg_.n, cfg_.k);
    Json j = bound_json(r);
    bool ok = r.bound_matches_closed_form;
    if (cfg_.oracle) {
      const OracleSummary s = bound_oracle_summary(cfg_.n, cfg_.k, identity_cycle(cfg_.n), limits_);
      const bool match = s.two_valued && s.off_tour == r.b_k && s.on_tour == r.c_k;
      j["oracle"] = oracle_json(s);
      j["oracle_matches"] = match;
      ok = ok && match;
    }
    emit(j);
    return ok ? kExitOk : kExitFailure;
  }

  int verify() {
    require_format({"json"});
    SuiteOptions options;
    options.n_max = cfg_.n_max;
    options.seed = cfg_.seed;
    options.limits = limits_;
    options.log = cfg_.verbose ? &err_ : nullptr;
    const auto results = run_suite(cfg_.suite, options);
    Json report = suite_report(cfg_.suite, options, results, cfg_.timing);
    if (cfg_.timing) report["wall_seconds"] = elapsed();
    emit_text(report.dump(2) + "\n");
    const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
    return ok ? kExitOk : kExitFailure;
  }
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Moment-matrix relaxations of the tour polytope's dual body: exact checks and membership tests",
               "tsppsd"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", cfg.seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--out", cfg.out, "Output path, '-' for standard output")->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--max-cycles", cfg.max_cycles, "Cap on enumerated tours (overrides TSPPSD_MAX_CYCLES)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-dim", cfg.max_dim, "Cap on moment-matrix dimension")->check(CLI::PositiveNumber);
  app.add_flag("--timing", cfg.timing, "Report wall time (makes output run-dependent)");
  app.add_flag("-v,--verbose", cfg.verbose, "Progress on standard error");

  auto* cycles = app.add_subcommand("cycles", "Count or list Hamiltonian cycles of K_n");
  cycles->add_option("--n", cfg.n, "Number of cities")->required();
  cycles->add_flag("--count-only", cfg.count_only, "Closed-form count only, no listing");
  cycles->add_option("--contains", cfg.contains, "Required edges, e.g. \"1-2,3-4\"");

  auto* matrix = app.add_subcommand("matrix", "Moment matrix of a functional");
  matrix->add_option("--n", cfg.n, "Must match the spec file when given");
  matrix->add_option("--k", cfg.k, "Degree bound")->capture_default_str();
  matrix->add_option("--func", cfg.func_path, "Functional spec (JSON)")->required();
  matrix->add_option("--method", cfg.method)->check(CLI::IsMember({"closed-form", "enumerate"}))->capture_default_str();

  auto* membership = app.add_subcommand("membership", "Decide membership of a functional in P_k");
  membership->add_option("--func", cfg.func_path, "Functional spec (JSON)")->required();
  membership->add_option("--k", cfg.k, "Degree bound")->capture_default_str();
  auto* exact = membership->add_flag("--exact", "Exact rational LDL^T (default)");
  auto* fl = membership->add_flag("--float", cfg.use_float, "Floating-point eigenvalues");
  exact->excludes(fl);
  membership->add_option("--tol", cfg.tol, "Relative tolerance for --float")->capture_default_str();
  membership->add_flag("--assert-psd", cfg.assert_psd, "Exit 1 on NOT_PSD");

  auto* certify = app.add_subcommand("certify", "Check the boundary certificate of a facet functional");
  certify->add_option("--facet", cfg.facet)->required()->check(
      CLI::IsMember({"subtour", "edge-upper", "edge-lower", "two-matching"}));
  certify->add_option("--n", cfg.n)->required();
  certify->add_option("--U", cfg.U, "Vertex set, e.g. \"1,2,3\"");
  certify->add_option("--edge", cfg.edge, "Edge for edge bounds, e.g. \"1-2\"");
  certify->add_option("--F", cfg.F, "Matching for two-matching, e.g. \"1-4,2-5,3-6\"");

  auto* spectrum = app.add_subcommand("spectrum", "Closed-form spectrum of a h_U + (1 - a) 1");
  spectrum->add_option("--n", cfg.n)->required();
  spectrum->add_option("--m", cfg.m, "|U|")->required();
  spectrum->add_option("--a", cfg.a, "Rational or sqrt-n")->capture_default_str();
  spectrum->add_flag("--verify", cfg.verify, "Check eigenpairs / the sqrt-n sign");

  auto* bounds = app.add_subcommand("bounds", "EO-subset counts and the a_k constants");
  auto* bn = bounds->add_option("--n", cfg.n);
  bounds->add_option("--k", cfg.k)->capture_default_str();
  bounds->add_flag("--oracle", cfg.oracle, "Compare against brute-force enumeration");
  auto* grid = bounds->add_flag("--grid", cfg.grid, "Sweep 9 <= n <= n-max, every k");
  bounds->add_option("--n-max", cfg.grid_n_max)->capture_default_str();
  grid->excludes(bn);

  auto* verify = app.add_subcommand("verify", "Run oracle suites");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify->add_option("--suite", cfg.suite)->required()->check(CLI::IsMember(suites));
  verify->add_option("--n-max", cfg.n_max, "Override the suite's largest n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  cfg.format_given = app.count("--format") > 0;
  if (cfg.command == "bounds" && !cfg.grid && bn->count() == 0) {
    err << "error: bounds needs --n (or --grid)\n\n" << bounds->help();
    return kExitUsage;
  }

  try {
    Runner runner(cfg, out, err);
    return runner.dispatch();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace tsppsd::cli
