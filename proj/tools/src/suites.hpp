#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tsppsd/cycles.hpp"
#include "tsppsd/json_io.hpp"

namespace tsppsd::cli {

struct CheckResult {
  std::string id;
  bool passed = false;
  Json detail;
  double seconds = 0.0;
};

struct SuiteOptions {
  int n_max = 0;  // 0 picks the suite's default grid
  std::uint64_t seed = 0;
  Limits limits;
  std::ostream* log = nullptr;  // per-check progress, if set
};

/// paths, moment, certificates, spectra, bounds, zero-one.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs one suite, or every suite for "all". Results are sorted by id.
std::vector<CheckResult> run_suite(const std::string& name, const SuiteOptions& options);

Json suite_report(const std::string& name, const SuiteOptions& options, const std::vector<CheckResult>& results,
                  bool timing);

}  // namespace tsppsd::cli
