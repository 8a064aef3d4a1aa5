#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "curvlab/verifiers.hpp"
#include "test_helpers.hpp"

using namespace curvlab;

namespace {

CurvatureTensor random_projected(const HermitianContext& ctx, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> raw(static_cast<std::size_t>(std::pow(ctx.dim(), 4)));
  for (double& v : raw) v = std::normal_distribution<double>()(rng);
  return project_to_curvature(raw, ctx);
}

CurvatureTensor kernel_element(const HermitianContext& ctx, bool thirty_one,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int samples = recommended_sample_count(ctx);
  const auto sys = thirty_one ? assemble_condition_31(ctx, samples, rng())
                              : assemble_condition_38(ctx, samples, rng());
  auto ker = kernel(sys);
  REQUIRE(!ker.empty());
  return random_kernel_element(ker, rng);
}

}  // namespace

TEST_SUITE("verifiers") {

TEST_CASE("condition residuals separate kernel members from generic tensors") {
  for (int m : {2, 3}) {
    HermitianContext ctx(m);
    const CurvatureTensor in31 = kernel_element(ctx, true, 1);
    CHECK(condition_31_residual(in31, 60, 2) < 1e-8);
    const CurvatureTensor in38 = kernel_element(ctx, false, 3);
    CHECK(condition_38_residual(in38, 60, 4) < 1e-8);

    const CurvatureTensor generic = random_projected(ctx, 5);
    CHECK(condition_31_residual(generic, 60, 6) > 1e-3);
    CHECK(condition_38_residual(generic, 60, 6) > 1e-3);
  }
}

TEST_CASE("condition residuals are scale invariant") {
  HermitianContext ctx(2);
  const CurvatureTensor R = random_projected(ctx, 8);
  const double base = condition_31_residual(R, 40, 9);
  CHECK(condition_31_residual(1000.0 * R, 40, 9) == doctest::Approx(base).epsilon(1e-12));
  CHECK(condition_38_residual(1e-6 * R, 40, 9) ==
        doctest::Approx(condition_38_residual(R, 40, 9)).epsilon(1e-9));
}

TEST_CASE("check_constant_holomorphic separates models from generic tensors") {
  HermitianContext ctx(2);
  const VerifierVerdict good = check_constant_holomorphic(model_tensor(ctx, 1.0, 4.0), 60, 1);
  CHECK(good.holds);
  CHECK(good.witnesses.empty());
  CHECK(good.numeric.at("holomorphic_mean") == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(good.numeric.at("holomorphic_deviation") < 1e-10);
  CHECK(good.numeric.at("j_swap_residual") < 1e-10);

  const CurvatureTensor generic = random_projected(ctx, 33);
  const VerifierVerdict bad = check_constant_holomorphic(generic, 60, 1);
  CHECK(!bad.holds);
  CHECK(!bad.witnesses.empty());
  CHECK(bad.numeric.at("holomorphic_deviation") > 1e-3 * generic.norm());

  // verdicts do not change under rescaling the tensor
  const VerifierVerdict scaled = check_constant_holomorphic(50.0 * generic, 60, 1);
  CHECK(scaled.holds == bad.holds);
  CHECK(scaled.numeric.at("holomorphic_deviation") ==
        doctest::Approx(50.0 * bad.numeric.at("holomorphic_deviation")).epsilon(1e-10));
}

TEST_CASE("check_j_invariance flags exactly the non-invariant part") {
  HermitianContext ctx(2);
  CHECK(check_j_invariance(model_tensor(ctx, -2.0, 1.0)).holds);

  std::vector<double> raw(256, 0.0);
  raw[((1 * 4 + 2) * 4 + 3) * 4 + 1] = 1.0;  // elementary (1,2,3,1)
  const CurvatureTensor spoiled = r1_tensor(ctx) + project_to_curvature(raw, ctx);
  const VerifierVerdict v = check_j_invariance(spoiled);
  CHECK(!v.holds);
  CHECK(v.numeric.at("rk_defect") == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("check_model_membership accepts models and rejects perturbations") {
  HermitianContext ctx(3);
  const VerifierVerdict good = check_model_membership(model_tensor(ctx, -1.0, 2.0), 60, 7);
  CHECK(good.holds);
  CHECK(good.numeric.at("fit_K") == doctest::Approx(-1.0).epsilon(1e-11));
  CHECK(good.numeric.at("fit_c") == doctest::Approx(2.0).epsilon(1e-11));
  CHECK(good.numeric.at("fit_residual") < 1e-10);

  const CurvatureTensor generic = random_projected(ctx, 19);
  const VerifierVerdict bad = check_model_membership(generic, 60, 7);
  CHECK(!bad.holds);
  CHECK(bad.numeric.at("fit_residual") > 0.1 * generic.norm());
}

TEST_CASE("random_kernel_element needs a nonempty basis and returns unit norm") {
  HermitianContext ctx(2);
  std::mt19937_64 rng(3);
  std::vector<CurvatureTensor> empty;
  CHECK_THROWS_AS(random_kernel_element(empty, rng), std::invalid_argument);

  const auto ker = kernel(assemble_condition_38(ctx, recommended_sample_count(ctx), 3));
  const CurvatureTensor e = random_kernel_element(ker, rng);
  CHECK(e.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lemma 1 and lemma 3 verdicts hold with the frozen kernel sizes") {
  for (int m : {2, 3}) {
    HermitianContext ctx(m);
    const VerifierVerdict l1 = verify_lemma1(ctx, 5, 11);
    CHECK(l1.holds);
    CHECK(l1.numeric.at("kernel_dim") == doctest::Approx(m == 2 ? 4.0 : 22.0));
    CHECK(l1.numeric.at("max_holomorphic_deviation") < 1e-8);
    CHECK(l1.numeric.at("max_j_swap_residual") < 1e-8);

    const VerifierVerdict l3 = verify_lemma3(ctx, 5, 11);
    CHECK(l3.holds);
    CHECK(l3.numeric.at("max_rk_defect") < 1e-8);
  }
  CHECK_THROWS_AS(verify_lemma1(HermitianContext(2), 0, 1), std::invalid_argument);
}

TEST_CASE("lemma 4 verdict: two-dimensional kernel matching the model span") {
  for (int m : {2, 3}) {
    HermitianContext ctx(m);
    const VerifierVerdict v = verify_lemma4(ctx, 5, 13);
    CHECK(v.holds);
    CHECK(v.numeric.at("kernel_dim") == doctest::Approx(2.0));
    CHECK(v.numeric.at("r1_span_residual") < 1e-8);
    CHECK(v.numeric.at("r2_span_residual") < 1e-8);
    CHECK(v.numeric.at("max_fit_residual") < 1e-8);
    CHECK(v.numeric.at("max_j_transfer_residual") < 1e-8);
  }
}

TEST_CASE("theorem A verdict holds and reports the rank evidence") {
  HermitianContext ctx(2);
  const VerifierVerdict v = verify_theorem_a(ctx, 25, 17);
  CHECK(v.holds);
  CHECK(v.numeric.at("kernel_dim") == doctest::Approx(0.0));
  CHECK(v.numeric.at("rank") == doctest::Approx(20.0));
  CHECK(v.numeric.at("singular_value_gap") > 1e6);
}

TEST_CASE("identity suite: models satisfy every applicable identity") {
  HermitianContext ctx(3);
  const IdentitySuiteReport rep = run_identity_suite(model_tensor(ctx, 1.0, 4.0), 40, 19);
  CHECK(rep.within_31);
  CHECK(rep.within_38);
  REQUIRE(rep.checks.size() == 10);
  for (const IdentityCheck& c : rep.checks) {
    if (c.name == "antiholo_chain") {
      CHECK(c.status == IdentityStatus::not_applicable);  // needs m >= 4
      continue;
    }
    CHECK(c.status == IdentityStatus::holds);
    CHECK(c.residual < 1e-9 * model_tensor(ctx, 1.0, 4.0).norm());
  }
  CHECK(rep.to_verdict().holds);
}

TEST_CASE("identity suite: m >= 3 identities are gated off at m = 2") {
  HermitianContext ctx(2);
  const IdentitySuiteReport rep = run_identity_suite(model_tensor(ctx, 0.0, 1.0), 20, 23);
  int not_applicable = 0;
  for (const IdentityCheck& c : rep.checks)
    if (c.status == IdentityStatus::not_applicable) ++not_applicable;
  CHECK(not_applicable == 5);  // four m>=3 identities and the m>=4 chain
  CHECK(rep.to_verdict().holds);
}

TEST_CASE("identity suite: generic tensors fail the hypotheses, not the suite") {
  HermitianContext ctx(2);
  const IdentitySuiteReport rep = run_identity_suite(random_projected(ctx, 29), 20, 23);
  CHECK(!rep.within_31);
  CHECK(!rep.within_38);
  for (const IdentityCheck& c : rep.checks)
    CHECK((c.status == IdentityStatus::hypothesis_not_satisfied ||
           c.status == IdentityStatus::not_applicable));
  const VerifierVerdict v = rep.to_verdict();
  CHECK(v.holds);  // nothing violated; hypotheses simply not met
  CHECK(v.notes.at("hypothesis_31") == "not satisfied");
}

TEST_CASE("identity suite: kernel elements activate their hypothesis") {
  HermitianContext ctx(2);
  const CurvatureTensor e31 = kernel_element(ctx, true, 41);
  const IdentitySuiteReport rep = run_identity_suite(e31, 30, 43);
  CHECK(rep.within_31);
  for (const IdentityCheck& c : rep.checks)
    if (c.hypothesis == "31") CHECK(c.status == IdentityStatus::holds);
  CHECK(rep.to_verdict().holds);
}

TEST_CASE("identity status names") {
  CHECK(std::string(to_string(IdentityStatus::holds)) == "holds");
  CHECK(std::string(to_string(IdentityStatus::violated)) == "violated");
  CHECK(std::string(to_string(IdentityStatus::hypothesis_not_satisfied)) ==
        "hypothesis not satisfied");
  CHECK(std::string(to_string(IdentityStatus::not_applicable)) == "not applicable");
}
}
