#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "tsppsd/json_io.hpp"
#include "tsppsd_cli/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "tsppsd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = tsppsd::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

tsppsd::Json json(const Result& r) { return tsppsd::Json::parse(r.out); }

std::string write_spec(const std::string& name, const std::string& text) {
  std::ofstream(name) << text;
  return name;
}

}  // namespace

TEST_CASE("bounds") {
  const auto r = run({"bounds", "--n", "10", "--k", "2"});
  CHECK(r.code == 0);
  CHECK(json(r)["a_k"] == "56/11");
  CHECK(json(r)["alpha_k"] == "1/11");
  const auto o = run({"bounds", "--n", "7", "--k", "2", "--oracle"});
  CHECK(o.code == 0);
  CHECK(json(o)["oracle_matches"] == true);
  const auto g = run({"bounds", "--grid", "--n-max", "10"});
  CHECK(g.code == 0);
  CHECK(g.out.rfind("n,k,", 0) == 0);
}

TEST_CASE("cycles") {
  const auto r = run({"cycles", "--n", "6", "--contains", "1-2,3-4"});
  CHECK(r.code == 0);
  CHECK(json(r)["count"] == "12");
  CHECK(json(r)["cycles"].size() == 12);
  const auto big = run({"cycles", "--n", "40", "--count-only", "--contains", "1-2"});
  CHECK(big.code == 0);
  CHECK(run({"cycles", "--n", "6", "--contains", "1-9"}).code == 2);
}

TEST_CASE("matrix and membership from a spec file") {
  const auto spec = write_spec("cli_subtour.json", R"({"kind":"subtour","n":7,"U":[1,2,3]})");
  const auto m = run({"matrix", "--n", "7", "--k", "1", "--func", spec});
  CHECK(m.code == 0);
  CHECK(json(m)["entries"].size() == 22);
  const auto e = run({"matrix", "--k", "1", "--func", spec, "--method", "enumerate"});
  CHECK(json(e)["entries"] == json(m)["entries"]);
  CHECK(run({"--format", "csv", "matrix", "--func", spec}).out.rfind("row,1,1-2", 0) == 0);
  CHECK(run({"matrix", "--n", "8", "--func", spec}).code == 2);

  const auto p = run({"membership", "--func", spec});
  CHECK(p.code == 0);
  CHECK(json(p)["verdict"]["status"] == "PSD");
  CHECK(json(p)["verdict"]["method"] == "exact");
  const auto f = run({"membership", "--func", spec, "--float"});
  CHECK(json(f)["verdict"]["tolerance"].is_number());

  const auto bad = write_spec("cli_bad.json", R"({"kind":"explicit","n":6,"constant":"6","coeffs":{"1-2":"-25/2"}})");
  const auto rej = run({"membership", "--func", bad});
  CHECK(rej.code == 0);
  CHECK(json(rej)["verdict"]["status"] == "NOT_PSD");
  CHECK(json(rej)["verdict"]["witness"].size() == 16);
  CHECK(run({"membership", "--func", bad, "--assert-psd"}).code == 1);

  const auto unnormalized = write_spec("cli_unnorm.json", R"({"kind":"explicit","n":6,"constant":"2"})");
  CHECK(run({"membership", "--func", unnormalized}).code == 2);
}

TEST_CASE("certify") {
  CHECK(run({"certify", "--facet", "subtour", "--n", "7", "--U", "1,2,3"}).code == 0);
  const auto m = run({"certify", "--facet", "two-matching", "--n", "7", "--U", "1,2,3", "--F", "1-4,2-5,3-6"});
  CHECK(m.code == 0);
  CHECK(json(m)["q_value"] == "0/1");
  CHECK(run({"certify", "--facet", "edge-lower", "--n", "6", "--edge", "2-5"}).code == 0);
  CHECK(run({"certify", "--facet", "subtour", "--n", "7", "--U", "1"}).code == 2);
}

TEST_CASE("spectrum") {
  const auto r = run({"spectrum", "--n", "12", "--m", "4", "--a", "sqrt-n", "--verify"});
  CHECK(r.code == 0);
  CHECK(json(r)["residual"]["lambda_minus"].get<double>() <= 0.0);
  const auto e = run({"spectrum", "--n", "8", "--m", "3", "--a", "5", "--verify"});
  CHECK(e.code == 0);
  CHECK(json(e)["verification"]["ok"] == true);
  CHECK(run({"spectrum", "--n", "8", "--m", "5"}).code == 2);
}

TEST_CASE("verify suites and output determinism") {
  const auto a = run({"verify", "--suite", "paths", "--n-max", "7"});
  CHECK(a.code == 0);
  CHECK(json(a)["failed"] == 0);
  const auto b = run({"verify", "--suite", "paths", "--n-max", "7"});
  CHECK(a.out == b.out);
  const auto z = run({"--seed", "7", "verify", "--suite", "zero-one"});
  CHECK(z.code == 0);
  CHECK(run({"--seed", "7", "verify", "--suite", "zero-one"}).out == z.out);
  CHECK(run({"--seed", "8", "verify", "--suite", "zero-one"}).out != z.out);
  const auto t = run({"--timing", "verify", "--suite", "bounds", "--n-max", "6"});
  CHECK(json(t)["wall_seconds"].is_number());
}

TEST_CASE("--out writes a file") {
  CHECK(run({"--out", "cli_bounds.json", "bounds", "--n", "9", "--k", "2"}).code == 0);
  std::ifstream in("cli_bounds.json");
  CHECK(tsppsd::Json::parse(in)["closed_form"] == "-127/35");
}

TEST_CASE("usage errors and resource limits") {
  CHECK(run({}).code == 2);
  CHECK(run({"bounds", "--n", "10", "--bogus"}).code == 2);
  CHECK(run({"verify", "--suite", "everything"}).code == 2);
  CHECK(run({"--format", "xml", "bounds", "--n", "10"}).code == 2);
  CHECK(run({"--max-cycles", "0", "bounds", "--n", "10"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  const auto cap = run({"--max-cycles", "100", "cycles", "--n", "8"});
  CHECK(cap.code == 3);
  CHECK(cap.err.find("resource limit") != std::string::npos);
  setenv("TSPPSD_MAX_CYCLES", "100", 1);
  CHECK(run({"cycles", "--n", "8"}).code == 3);
  CHECK(run({"--max-cycles", "5000", "cycles", "--n", "8"}).code == 0);
  setenv("TSPPSD_MAX_CYCLES", "lots", 1);
  CHECK(run({"cycles", "--n", "5"}).code == 2);
  unsetenv("TSPPSD_MAX_CYCLES");
}
