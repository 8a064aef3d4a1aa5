#include <doctest.h>

#include <string>

#include "curvlab/generators.hpp"
#include "curvlab/report.hpp"
#include "test_helpers.hpp"

using namespace curvlab;

namespace {

CurvatureTensor generic_tensor(int m, std::uint64_t seed) {
  GeneratorSpec s;
  s.kind = GeneratorSpec::Kind::random;
  s.m = m;
  s.seed = seed;
  return generate(s);
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("analyze on a model tensor: clean residuals, exact fit, all verdicts hold") {
  HermitianContext ctx(2);
  const Report rep = analyze(model_tensor(ctx, 1.0, 4.0), AnalyzeOptions{}, "model.json");
  CHECK(rep.input == "model.json");
  CHECK(rep.dim == 4);
  CHECK(rep.residuals.max() < 1e-13);
  CHECK(rep.rk < 1e-13);
  CHECK(rep.holomorphic.mean == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(rep.antiholomorphic.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.fit.K == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(rep.fit.c == doctest::Approx(4.0).epsilon(1e-11));
  REQUIRE(rep.verdicts.size() == 4);
  for (const VerifierVerdict& v : rep.verdicts) CHECK(v.holds);
}

TEST_CASE("analyze on a generic tensor reports failing verdicts as findings") {
  const Report rep = analyze(generic_tensor(2, 23), AnalyzeOptions{}, "<memory>");
  bool any_failed = false;
  for (const VerifierVerdict& v : rep.verdicts) any_failed |= !v.holds;
  CHECK(any_failed);
}

TEST_CASE("json report has the stable top-level shape") {
  const Report rep = analyze(generic_tensor(2, 5), AnalyzeOptions{.seed = 9}, "x.json");
  const nlohmann::json j = report_to_json(rep);
  CHECK(j.size() == 6);
  for (const char* key : {"input", "residuals", "rk_defect", "constancy", "fit", "verdicts"})
    CHECK(j.contains(key));
  CHECK(j["input"]["path"] == "x.json");
  CHECK(j["input"]["dim"] == 4);
  CHECK(j["input"]["m"] == 2);
  CHECK(j["input"]["seed"] == 9);
  CHECK(j["verdicts"].is_array());
  CHECK(j["verdicts"].size() == 4);
  for (const auto& v : j["verdicts"]) {
    CHECK(v.contains("name"));
    CHECK(v.contains("holds"));
    CHECK(v.contains("numeric"));
    CHECK(v.contains("witnesses"));
    CHECK(v.contains("notes"));
  }
}

TEST_CASE("large seeds survive the uint64 round trip") {
  AnalyzeOptions options;
  options.seed = (1ull << 63) + 5;
  options.samples = 5;
  const Report rep = analyze(generic_tensor(2, 1), options, "s.json");
  const nlohmann::json j = report_to_json(rep);
  CHECK(j["input"]["seed"].get<std::uint64_t>() == (1ull << 63) + 5);
}

TEST_CASE("text rendering shows exactly the JSON's numbers") {
  const Report rep = analyze(generic_tensor(2, 77), AnalyzeOptions{.samples = 20}, "t.json");
  const nlohmann::json j = report_to_json(rep);
  const std::string text = render_report_text(j);

  CHECK(text.find("input: t.json") != std::string::npos);
  CHECK(text.find("K " + j["fit"]["K"].dump()) != std::string::npos);
  CHECK(text.find("residual " + j["fit"]["residual"].dump()) != std::string::npos);
  CHECK(text.find(j["residuals"]["first_bianchi"].dump()) != std::string::npos);
  CHECK(text.find("rk_defect: " + j["rk_defect"].dump()) != std::string::npos);
  CHECK(render_report_text(rep) == text);
}

TEST_CASE("reports are deterministic for fixed options") {
  const AnalyzeOptions options{.tol = 1e-8, .samples = 30, .seed = 4};
  const CurvatureTensor R = generic_tensor(3, 13);
  CHECK(report_to_json(analyze(R, options, "a")).dump() ==
        report_to_json(analyze(R, options, "a")).dump());
}

TEST_CASE("analyze rejects unusable options") {
  const CurvatureTensor R = generic_tensor(2, 2);
  CHECK_THROWS_AS(analyze(R, AnalyzeOptions{.tol = 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(analyze(R, AnalyzeOptions{.samples = 0}), std::invalid_argument);
}
}
