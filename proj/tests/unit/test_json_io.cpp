#include <doctest.h>

#include <fstream>

#include "tsppsd/errors.hpp"
#include "tsppsd/json_io.hpp"

using namespace tsppsd;

TEST_CASE("spec parsing, every kind") {
  const auto sub = facet_spec_from_json(Json::parse(R"({"kind":"subtour","n":8,"U":[1,2,3]})"));
  CHECK(sub.kind == FacetSpec::Kind::Subtour);
  CHECK(average_on_X(sub.build()) == 1);

  const auto ex = facet_spec_from_json(
      Json::parse(R"({"kind":"explicit","n":6,"constant":"-5/4","coeffs":{"1-4":"5/8","2-5":"5/8","3-6":2}})"));
  const LinearFunctional f = ex.build();
  CHECK(f.constant() == Rational(-5, 4));
  CHECK(f.coeff(Edge(1, 4)) == Rational(5, 8));
  CHECK(f.coeff(Edge(3, 6)) == 2);

  const auto comb = facet_spec_from_json(Json::parse(R"({"kind":"combination","terms":[
      {"scale":"3/1","func":{"kind":"subtour","n":7,"U":[1,2]}},
      {"scale":"-2/1","func":{"kind":"ones","n":7}}]})"));
  CHECK(comb.resolved_n() == 7);
  CHECK(average_on_X(comb.build()) == 1);

  CHECK_NOTHROW(facet_spec_from_json(Json::parse(R"({"kind":"edge-upper","n":6,"edge":"2-3"})")));
  CHECK_NOTHROW(facet_spec_from_json(Json::parse(R"({"kind":"edge-lower","n":6,"edge":[2,3]})")));
  CHECK_NOTHROW(facet_spec_from_json(
      Json::parse(R"({"kind":"two-matching","n":7,"U":[1,2,3],"F":["1-4","2-5","3-6"]})")));
}

TEST_CASE("malformed specs") {
  for (const char* text : {R"({"kind":"subtour","U":[1,2]})", R"({"kind":"nope","n":6})",
                           R"({"kind":"subtour","n":6,"U":[1]})", R"({"kind":"explicit","n":6,"constant":"1/0"})",
                           R"({"kind":"explicit","n":6,"coeffs":{"1-9":"1"}})", R"([1,2])",
                           R"({"kind":"combination","terms":[{"scale":"1","func":{"kind":"ones","n":6}},
                                {"scale":"1","func":{"kind":"ones","n":7}}]})"}) {
    CAPTURE(text);
    CHECK_THROWS_AS(facet_spec_from_json(Json::parse(text)), InvalidArgument);
  }
  CHECK_THROWS_AS(load_facet_spec("/nonexistent/spec.json"), InvalidArgument);
}

TEST_CASE("spec round trip through a file") {
  const auto spec = facet_spec_from_json(Json::parse(R"({"kind":"combination","terms":[
      {"scale":"1/2","func":{"kind":"edge-upper","n":6,"edge":"1-2"}},
      {"scale":"1/2","func":{"kind":"two-matching","n":6,"U":[1,2,3],"F":["1-4","2-5","3-6"]}}]})"));
  const std::string path = "json_io_roundtrip.json";
  std::ofstream(path) << facet_spec_json(spec).dump();
  const auto again = load_facet_spec(path);
  CHECK(again.build() == spec.build());
}

TEST_CASE("matrix output") {
  const MomentMatrix M = moment_matrix_closed_form_k1(make_subtour(6, {1, 2, 3}));
  const Json j = moment_matrix_json(M);
  CHECK(j["n"] == 6);
  CHECK(j["k"] == 1);
  CHECK(j["basis"][0] == "1");
  CHECK(j["basis"][1] == "1-2");
  CHECK(j["entries"].size() == 16);
  CHECK(j["entries"][0][0] == "1/1");
  const std::string csv = moment_matrix_csv(M);
  CHECK(csv.rfind("row,1,1-2,1-3", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);
}

TEST_CASE("verdict and bound output") {
  PsdVerdict v;
  v.status = PsdStatus::NOT_PSD;
  v.witness = {1, Rational(-1, 2)};
  v.witness_value = Rational(-3, 4);
  const Json j = verdict_json(v);
  CHECK(j["status"] == "NOT_PSD");
  CHECK(j["witness"][1] == "-1/2");
  CHECK(j["witness_value"] == "-3/4");

  const Json b = bound_json(bound_report(10, 2));
  CHECK(b["a_k"] == "56/11");
  CHECK(b["alpha_k"] == "1/11");
  const std::string grid = bound_grid_csv(12);
  CHECK(grid.rfind("n,k,", 0) == 0);
  CHECK(std::count(grid.begin(), grid.end(), '\n') == 1 + 4 + 5 + 5 + 6);
}
