#pragma once

// Verdict-producing checks: the lemma/theorem verifiers that draw random
// kernel elements and test the claimed conclusions, plus the proof-step
// identity suite evaluated on a caller-supplied tensor.
//
// All verdicts are homogeneous of degree zero in the tensor: every residual
// is compared against verify_tol * ||R||, so scaling R by a positive
// constant never flips a verdict.

#include "curvlab/common.hpp"
#include "curvlab/constraints.hpp"
#include "curvlab/curvature.hpp"
#include "curvlab/hermitian_space.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace curvlab {

struct VerifierVerdict {
  std::string name;
  bool holds = true;
  std::vector<std::string> witnesses;        // offending samples; nonempty iff !holds
  std::map<std::string, double> numeric;     // residuals and estimates
  std::map<std::string, std::string> notes;  // statuses and statements
};

namespace detail {

inline void verdict_check(VerifierVerdict& v, bool ok, const std::string& witness) {
  if (ok) return;
  v.holds = false;
  v.witnesses.push_back(witness);
}

/// Aggregates a residual under `key`, keeping the worst value seen.
inline void record_worst(VerifierVerdict& v, const std::string& key, double value) {
  auto [it, fresh] = v.numeric.try_emplace(key, value);
  if (!fresh && value > it->second) it->second = value;
}

inline double norm_scale(const CurvatureTensor& R) {
  const double n = R.norm();
  return n > 0.0 ? n : 1.0;
}

inline double eval(const CurvatureTensor& R, const Vector& a, const Vector& b, const Vector& c,
                   const Vector& d) {
  return evaluate(R, a, b, c, d);
}

}  // namespace detail

/// Largest |R(X, JX, JX, Y)| over the structured frame batch and `samples`
/// random adapted pairs, relative to ||R||.  Small values certify membership
/// in the kernel of the condition-31 family.
inline double condition_31_residual(const CurvatureTensor& R, int samples, std::uint64_t seed) {
  const HermitianContext& ctx = R.context();
  double worst = 0.0;
  const auto frame = detail::orthonormal_frame(ctx);
  for (std::size_t a = 0; a < frame.size(); ++a) {
    const Vector jx = ctx.apply_J(frame[a]);
    for (std::size_t b = 0; b < frame.size(); ++b) {
      if (a == b || std::abs(ctx.ip(frame[a], frame[b])) >= detail::frame_orth_tol ||
          std::abs(ctx.ip(jx, frame[b])) >= detail::frame_orth_tol)
        continue;
      worst = std::max(worst, std::abs(detail::eval(R, frame[a], jx, jx, frame[b])));
    }
  }
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const auto [X, Y] = sample_adapted_pair(ctx, rng());
    const Vector jx = ctx.apply_J(X);
    worst = std::max(worst, std::abs(detail::eval(R, X, jx, jx, Y)));
  }
  return worst / detail::norm_scale(R);
}

/// Largest |R(X, Y, Y, Z)| over frame triples and `samples` random
/// orthonormal triples with g(X, JY) = 0, relative to ||R||.
inline double condition_38_residual(const CurvatureTensor& R, int samples, std::uint64_t seed) {
  const HermitianContext& ctx = R.context();
  double worst = 0.0;
  const auto frame = detail::orthonormal_frame(ctx);
  for (std::size_t a = 0; a < frame.size(); ++a)
    for (std::size_t b = 0; b < frame.size(); ++b) {
      if (a == b ||
          std::abs(ctx.ip(frame[a], ctx.apply_J(frame[b]))) >= detail::frame_orth_tol)
        continue;
      for (std::size_t c = 0; c < frame.size(); ++c) {
        if (c == a || c == b) continue;
        worst = std::max(worst,
                         std::abs(detail::eval(R, frame[a], frame[b], frame[b], frame[c])));
      }
    }
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    std::mt19937_64 local(rng());
    const Vector X = random_unit_vector(ctx, local);
    const Vector Y = unit_normal_complement(ctx, {X, ctx.apply_J(X)}, local);
    const Vector Z = unit_normal_complement(ctx, {X, Y}, local);
    worst = std::max(worst, std::abs(detail::eval(R, X, Y, Y, Z)));
  }
  return worst / detail::norm_scale(R);
}

/// Conclusion check: globally constant holomorphic sectional curvature plus
/// the J-swap invariance K(X,Y) = K(JX,JY) on sampled adapted pairs.
inline VerifierVerdict check_constant_holomorphic(const CurvatureTensor& R, int samples,
                                                  std::uint64_t seed,
                                                  double tol = verify_tol) {
  VerifierVerdict v{.name = "constant_holomorphic_curvature"};
  const HermitianContext& ctx = R.context();
  const double scale = detail::norm_scale(R);
  std::mt19937_64 rng(seed);

  const ConstancySummary holo = constancy_report(R, PlaneFamily::holomorphic,
                                                 std::max(samples, 1), rng());
  v.numeric["holomorphic_mean"] = holo.mean;
  v.numeric["holomorphic_deviation"] = holo.max_deviation;
  detail::verdict_check(v, holo.max_deviation <= tol * scale,
                        "holomorphic sectional curvature varies by " +
                            std::to_string(holo.max_deviation) + " around mean " +
                            std::to_string(holo.mean));

  double swap_worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const auto [X, Y] = sample_adapted_pair(ctx, rng());
    const Vector jx = ctx.apply_J(X), jy = ctx.apply_J(Y);
    swap_worst = std::max(swap_worst, std::abs(detail::eval(R, X, Y, Y, X) -
                                               detail::eval(R, jx, jy, jy, jx)));
  }
  v.numeric["j_swap_residual"] = swap_worst;
  detail::verdict_check(v, swap_worst <= tol * scale,
                        "K(X,Y) = K(JX,JY) fails by " + std::to_string(swap_worst) +
                            " on a sampled adapted pair");
  return v;
}

/// Conclusion check: invariance under the simultaneous J-substitution,
/// measured by rk_defect.
inline VerifierVerdict check_j_invariance(const CurvatureTensor& R,
                                          double tol = verify_tol) {
  VerifierVerdict v{.name = "j_invariant_curvature"};
  const double defect = rk_defect(R);
  v.numeric["rk_defect"] = defect;
  detail::verdict_check(v, defect <= tol * detail::norm_scale(R),
                        "R(JX,JY,JZ,JU) = R(X,Y,Z,U) fails with defect " +
                            std::to_string(defect));
  return v;
}

/// Conclusion check: constant antiholomorphic and holomorphic curvature and
/// membership in the two-parameter model family, with the fitted (K, c)
/// matching the constancy means.
inline VerifierVerdict check_model_membership(const CurvatureTensor& R, int samples,
                                              std::uint64_t seed,
                                              double tol = verify_tol) {
  VerifierVerdict v{.name = "model_family_membership"};
  const double scale = detail::norm_scale(R);
  std::mt19937_64 rng(seed);

  const ConstancySummary anti = constancy_report(R, PlaneFamily::antiholomorphic,
                                                 std::max(samples, 1), rng());
  v.numeric["antiholomorphic_mean"] = anti.mean;
  v.numeric["antiholomorphic_deviation"] = anti.max_deviation;
  detail::verdict_check(v, anti.max_deviation <= tol * scale,
                        "antiholomorphic sectional curvature varies by " +
                            std::to_string(anti.max_deviation));

  const ConstancySummary holo = constancy_report(R, PlaneFamily::holomorphic,
                                                 std::max(samples, 1), rng());
  v.numeric["holomorphic_mean"] = holo.mean;
  v.numeric["holomorphic_deviation"] = holo.max_deviation;
  detail::verdict_check(v, holo.max_deviation <= tol * scale,
                        "holomorphic sectional curvature varies by " +
                            std::to_string(holo.max_deviation));

  const ModelParameters fit = fit_model(R);
  v.numeric["fit_K"] = fit.K;
  v.numeric["fit_c"] = fit.c;
  v.numeric["fit_residual"] = fit.residual;
  detail::verdict_check(v, fit.residual <= tol * scale,
                        "distance to the model family is " + std::to_string(fit.residual));
  v.numeric["fit_K_vs_antiholomorphic_mean"] = std::abs(fit.K - anti.mean);
  v.numeric["fit_c_vs_holomorphic_mean"] = std::abs(fit.c - holo.mean);
  detail::verdict_check(v, std::abs(fit.K - anti.mean) <= tol * scale,
                        "fitted K disagrees with the antiholomorphic mean");
  detail::verdict_check(v, std::abs(fit.c - holo.mean) <= tol * scale,
                        "fitted c disagrees with the holomorphic mean");
  return v;
}

/// Unit-norm random combination of an orthonormal kernel basis.
inline CurvatureTensor random_kernel_element(const std::vector<CurvatureTensor>& basis,
                                             std::mt19937_64& rng) {
  if (basis.empty())
    throw std::invalid_argument("random_kernel_element: empty kernel basis");
  const Vector w = gaussian_vector(static_cast<int>(basis.size()), rng);
  CurvatureTensor out = w[0] * basis[0];
  for (std::size_t i = 1; i < basis.size(); ++i) out += w[static_cast<int>(i)] * basis[i];
  const double n = out.norm();
  if (n > 0.0) out *= 1.0 / n;
  return out;
}

namespace detail {

inline void merge_trial(VerifierVerdict& into, const VerifierVerdict& trial, int index,
                        std::initializer_list<const char*> worst_keys) {
  for (const char* key : worst_keys) {
    auto it = trial.numeric.find(key);
    if (it != trial.numeric.end()) record_worst(into, std::string("max_") + key, it->second);
  }
  for (const std::string& w : trial.witnesses)
    verdict_check(into, false, "element " + std::to_string(index) + ": " + w);
}

}  // namespace detail

/// Draws `trials` random unit elements of the condition-31 kernel and checks
/// the constant-holomorphic-curvature conclusion on each.
inline VerifierVerdict verify_lemma1(const HermitianContext& ctx, int trials,
                                     std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("verify_lemma1: trials must be >= 1");
  VerifierVerdict v{.name = "lemma 1"};
  v.notes["statement"] =
      "tensors with R(X,JX,JX,Y) = 0 on adapted pairs have constant holomorphic "
      "sectional curvature and J-swap invariant sectional curvature";
  std::mt19937_64 rng(seed);
  const auto ker = kernel(assemble_condition_31(ctx, recommended_sample_count(ctx), rng()));
  v.numeric["kernel_dim"] = static_cast<double>(ker.size());
  if (ker.empty()) {
    v.notes["kernel"] = "trivial; conclusion vacuous";
    return v;
  }
  for (int t = 0; t < trials; ++t) {
    const CurvatureTensor R = random_kernel_element(ker, rng);
    detail::merge_trial(v, check_constant_holomorphic(R, 60, rng()), t,
                        {"holomorphic_deviation", "j_swap_residual"});
  }
  return v;
}

/// Same kernel as verify_lemma1; checks the J-invariance conclusion.
inline VerifierVerdict verify_lemma3(const HermitianContext& ctx, int trials,
                                     std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("verify_lemma3: trials must be >= 1");
  VerifierVerdict v{.name = "lemma 3"};
  v.notes["statement"] =
      "tensors with R(X,JX,JX,Y) = 0 on adapted pairs satisfy "
      "R(JX,JY,JZ,JU) = R(X,Y,Z,U)";
  std::mt19937_64 rng(seed);
  const auto ker = kernel(assemble_condition_31(ctx, recommended_sample_count(ctx), rng()));
  v.numeric["kernel_dim"] = static_cast<double>(ker.size());
  if (ker.empty()) {
    v.notes["kernel"] = "trivial; conclusion vacuous";
    return v;
  }
  for (int t = 0; t < trials; ++t) {
    const CurvatureTensor R = random_kernel_element(ker, rng);
    detail::merge_trial(v, check_j_invariance(R), t, {"rk_defect"});
  }
  return v;
}

/// Condition-38 kernel: dimension 2, mutual span agreement with {R1, R2},
/// and the constant-curvature conclusions on random elements, including the
/// sampled deduction K(JX, Y) = K(X, Y).
inline VerifierVerdict verify_lemma4(const HermitianContext& ctx, int trials,
                                     std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("verify_lemma4: trials must be >= 1");
  VerifierVerdict v{.name = "lemma 4"};
  v.notes["statement"] =
      "tensors with R(X,Y,Y,Z) = 0 on the orthonormal family lie in the "
      "two-parameter model span and have constant antiholomorphic curvature";
  std::mt19937_64 rng(seed);
  const auto ker = kernel(assemble_condition_38(ctx, recommended_sample_count(ctx), rng()));
  v.numeric["kernel_dim"] = static_cast<double>(ker.size());
  detail::verdict_check(v, ker.size() == 2,
                        "kernel dimension is " + std::to_string(ker.size()) +
                            ", expected the two-parameter model span");

  // Mutual span agreement with {R1, R2}: project the models onto the kernel
  // span (the kernel basis is orthonormal) and the kernel elements onto the
  // model span (fit_model is that projection).
  auto span_residual = [&](const char* label, const CurvatureTensor& model) {
    CurvatureTensor rest = model;
    for (const CurvatureTensor& k : ker) rest -= inner(model, k) * k;
    const double rel = rest.norm() / model.norm();
    v.numeric[label] = rel;
    detail::verdict_check(v, rel <= verify_tol,
                          std::string(label) + " = " + std::to_string(rel));
  };
  span_residual("r1_span_residual", r1_tensor(ctx));
  span_residual("r2_span_residual", r2_tensor(ctx));
  if (ker.empty()) return v;

  for (int t = 0; t < trials; ++t) {
    const CurvatureTensor R = random_kernel_element(ker, rng);
    detail::merge_trial(v, check_model_membership(R, 60, rng()), t,
                        {"antiholomorphic_deviation", "holomorphic_deviation", "fit_residual",
                         "fit_K_vs_antiholomorphic_mean", "fit_c_vs_holomorphic_mean"});
    double transfer = 0.0;
    std::mt19937_64 pair_rng(rng());
    for (int s = 0; s < 60; ++s) {
      const auto [X, Y] = sample_adapted_pair(ctx, pair_rng());
      const Vector jx = ctx.apply_J(X);
      transfer = std::max(transfer, std::abs(detail::eval(R, X, Y, Y, X) -
                                             detail::eval(R, jx, Y, Y, jx)));
    }
    detail::record_worst(v, "max_j_transfer_residual", transfer);
    detail::verdict_check(v, transfer <= verify_tol * detail::norm_scale(R),
                          "element " + std::to_string(t) +
                              ": K(JX,Y) = K(X,Y) fails by " + std::to_string(transfer));
  }
  return v;
}

/// Sectional curvatures on planes at angles {0, pi/4, pi/2} determine the
/// tensor: the assembled system must have a trivial kernel.
inline VerifierVerdict verify_theorem_a(const HermitianContext& ctx, int n_samples_per_angle,
                                        std::uint64_t seed) {
  VerifierVerdict v{.name = "theorem A"};
  v.notes["statement"] =
      "a curvature tensor vanishing on all planes of angle 0, pi/4 and pi/2 is zero";
  const auto sys = assemble_theorem_a(ctx, n_samples_per_angle, seed);
  const RankSummary rs = rank_summary(sys);
  v.numeric["rank"] = static_cast<double>(rs.rank);
  v.numeric["kernel_dim"] = static_cast<double>(rs.kernel_dim);
  v.numeric["sigma_max"] = rs.sigma_max;
  v.numeric["smallest_retained"] = rs.smallest_retained;
  v.numeric["largest_discarded"] = rs.largest_discarded;
  v.numeric["singular_value_gap"] = rs.gap;
  detail::verdict_check(v, rs.kernel_dim == 0,
                        "kernel dimension is " + std::to_string(rs.kernel_dim));
  return v;
}

// ---------------------------------------------------------------------------
// Proof-step identity suite
// ---------------------------------------------------------------------------

enum class IdentityStatus { holds, violated, hypothesis_not_satisfied, not_applicable };

inline const char* to_string(IdentityStatus s) {
  switch (s) {
    case IdentityStatus::holds: return "holds";
    case IdentityStatus::violated: return "violated";
    case IdentityStatus::hypothesis_not_satisfied: return "hypothesis not satisfied";
    default: return "not applicable";
  }
}

struct IdentityCheck {
  std::string name;
  std::string hypothesis;  // which condition family the identity assumes
  IdentityStatus status = IdentityStatus::not_applicable;
  double residual = 0.0;   // max abs over samples; meaningful when run
  std::string note;
};

struct IdentitySuiteReport {
  double hypothesis_31_residual = 0.0;  // relative
  double hypothesis_38_residual = 0.0;
  bool within_31 = false;
  bool within_38 = false;
  std::vector<IdentityCheck> checks;

  VerifierVerdict to_verdict() const {
    VerifierVerdict v{.name = "identity suite"};
    v.numeric["hypothesis_31_residual"] = hypothesis_31_residual;
    v.numeric["hypothesis_38_residual"] = hypothesis_38_residual;
    v.notes["hypothesis_31"] = within_31 ? "satisfied" : "not satisfied";
    v.notes["hypothesis_38"] = within_38 ? "satisfied" : "not satisfied";
    for (const IdentityCheck& c : checks) {
      v.notes[c.name] = c.note.empty() ? to_string(c.status)
                                       : std::string(to_string(c.status)) + "; " + c.note;
      if (c.status == IdentityStatus::holds || c.status == IdentityStatus::violated)
        v.numeric[c.name + "_residual"] = c.residual;
      detail::verdict_check(v, c.status != IdentityStatus::violated,
                            c.name + " violated with max residual " +
                                std::to_string(c.residual));
    }
    return v;
  }
};

/// Evaluates the proof-step identities on R over `trials` sampled vector
/// tuples per identity.  Identities are gated on the hypothesis they assume:
/// a tensor outside the relevant kernel gets "hypothesis not satisfied"
/// rather than a violation, and identities needing more room than the
/// context offers (third directions, chained frames) are "not applicable".
inline IdentitySuiteReport run_identity_suite(const CurvatureTensor& R, int trials,
                                              std::uint64_t seed,
                                              double tol = verify_tol) {
  if (trials < 1) throw std::invalid_argument("run_identity_suite: trials must be >= 1");
  const HermitianContext& ctx = R.context();
  const int m = ctx.half_dim();
  const double scale = detail::norm_scale(R);
  std::mt19937_64 rng(seed);

  IdentitySuiteReport report;
  report.hypothesis_31_residual = condition_31_residual(R, trials, rng());
  report.hypothesis_38_residual = condition_38_residual(R, trials, rng());
  report.within_31 = report.hypothesis_31_residual <= tol;
  report.within_38 = report.hypothesis_38_residual <= tol;

  auto K = [&](const Vector& a, const Vector& b) { return detail::eval(R, a, b, b, a); };
  auto H = [&](const Vector& x) {
    const Vector jx = ctx.apply_J(x);
    return detail::eval(R, x, jx, jx, x);
  };

  enum Hypothesis { needs_31, needs_38 };
  auto run = [&](const char* name, Hypothesis hyp, int min_m, auto&& sample_residual) {
    IdentityCheck c{.name = name, .hypothesis = hyp == needs_31 ? "31" : "38"};
    const bool within = hyp == needs_31 ? report.within_31 : report.within_38;
    const double hyp_res =
        hyp == needs_31 ? report.hypothesis_31_residual : report.hypothesis_38_residual;
    if (m < min_m) {
      c.status = IdentityStatus::not_applicable;
      c.note = "needs m >= " + std::to_string(min_m);
    } else if (!within) {
      c.status = IdentityStatus::hypothesis_not_satisfied;
      c.note = "condition " + c.hypothesis + " residual " + std::to_string(hyp_res);
    } else {
      double worst = 0.0;
      for (int t = 0; t < trials; ++t)
        worst = std::max(worst, sample_residual(std::mt19937_64(rng())));
      c.residual = worst;
      c.status = worst <= tol * scale ? IdentityStatus::holds : IdentityStatus::violated;
    }
    report.checks.push_back(std::move(c));
  };

  // Identities over an adapted pair: unit X, Y with g(X,Y) = g(X,JY) = 0.
  auto adapted = [&](std::mt19937_64& r) {
    Vector X = random_unit_vector(ctx, r);
    Vector Y = unit_normal_complement(ctx, {X, ctx.apply_J(X)}, r);
    return std::pair<Vector, Vector>{std::move(X), std::move(Y)};
  };

  run("holo_difference_balance", needs_31, 2, [&](std::mt19937_64 r) {
    const auto [X, Y] = adapted(r);
    const Vector jx = ctx.apply_J(X), jy = ctx.apply_J(Y);
    return std::abs(H(X) - H(Y) + K(X, jy) - K(jx, Y));
  });

  run("holo_expansion", needs_31, 2, [&](std::mt19937_64 r) {
    const auto [X, Y] = adapted(r);
    const Vector jx = ctx.apply_J(X), jy = ctx.apply_J(Y);
    const double rhs =
        detail::eval(R, X, jx, jy, Y) + detail::eval(R, X, jy, jx, Y) + K(X, jy);
    return std::max(std::abs(H(Y) - rhs), std::abs(H(X) - rhs));
  });

  run("double_holo_balance", needs_38, 2, [&](std::mt19937_64 r) {
    const auto [X, Y] = adapted(r);
    const Vector jx = ctx.apply_J(X), jy = ctx.apply_J(Y);
    return std::abs(2.0 * H(X) -
                    (3.0 * detail::eval(R, X, jx, jy, Y) + K(X, Y) + K(X, jy)));
  });

  run("mixed_plane_coefficients", needs_38, 2, [&](std::mt19937_64 r) {
    const auto [X, Y] = adapted(r);
    const Vector jx = ctx.apply_J(X), jy = ctx.apply_J(Y);
    const double c = H(X), k = K(X, Y);
    const double f1 = std::abs(detail::eval(R, X, jx, jy, Y) - 2.0 / 3.0 * (c - k));
    const double f2 = std::abs(detail::eval(R, X, jy, jx, Y) - 1.0 / 3.0 * (c - k));
    const double f3 = std::abs(detail::eval(R, jx, jy, X, Y) - 1.0 / 3.0 * (k - c));
    return std::max({f1, f2, f3});
  });

  run("antiholo_j_invariance", needs_38, 2, [&](std::mt19937_64 r) {
    const auto [X, Y] = adapted(r);
    return std::abs(K(X, Y) - K(ctx.apply_J(X), Y));
  });

  // Identities needing a third direction Z orthogonal to X, JX, Y, JY.
  auto adapted_triple = [&](std::mt19937_64& r) {
    Vector X = random_unit_vector(ctx, r);
    const Vector jx = ctx.apply_J(X);
    Vector Y = unit_normal_complement(ctx, {X, jx}, r);
    Vector Z = unit_normal_complement(ctx, {X, jx, Y, ctx.apply_J(Y)}, r);
    return std::tuple<Vector, Vector, Vector>{std::move(X), std::move(Y), std::move(Z)};
  };

  run("antiholo_transfer", needs_38, 3, [&](std::mt19937_64 r) {
    const auto [X, Y, Z] = adapted_triple(r);
    return std::abs(K(X, Y) - K(Y, Z));
  });

  run("mixed_vanishing", needs_38, 3, [&](std::mt19937_64 r) {
    const auto [X, Y, Z] = adapted_triple(r);
    const Vector jx = ctx.apply_J(X);
    return std::max(std::abs(detail::eval(R, X, jx, Y, Z)),
                    std::abs(detail::eval(R, X, Y, Z, jx)));
  });

  run("cyclic_mixed_balance", needs_38, 3, [&](std::mt19937_64 r) {
    const auto [X, Y, Z] = adapted_triple(r);
    const Vector jx = ctx.apply_J(X);
    return std::abs(detail::eval(R, X, jx, Z, Y) + detail::eval(R, X, Z, jx, Y));
  });

  run("swap_mixed_balance", needs_38, 3, [&](std::mt19937_64 r) {
    const auto [X, Y, Z] = adapted_triple(r);
    const Vector jx = ctx.apply_J(X);
    return std::abs(detail::eval(R, X, Y, Z, jx) + detail::eval(R, X, Z, Y, jx));
  });

  // Chained equality of antiholomorphic curvatures across two independent
  // antiholomorphic planes, through auxiliary directions V, W, A.
  run("antiholo_chain", needs_38, 4, [&](std::mt19937_64 r) {
    const Vector X = random_unit_vector(ctx, r);
    const Vector jx = ctx.apply_J(X);
    const Vector Y = unit_normal_complement(ctx, {X, jx}, r);
    const Vector Z = random_unit_vector(ctx, r);
    const Vector jz = ctx.apply_J(Z);
    const Vector U = unit_normal_complement(ctx, {Z, jz}, r);
    const Vector V = unit_normal_complement(ctx, {X, jx, Z, jz}, r);
    const Vector jv = ctx.apply_J(V);
    const Vector W = unit_normal_complement(ctx, {X, jx, Z, jz, V, jv}, r);
    const Vector A = unit_normal_complement(ctx, {V, jv, Z, jz, U, ctx.apply_J(U)}, r);
    const double kxv = K(X, V), kvz = K(V, Z);
    return std::max({std::abs(kxv - K(V, W)), std::abs(K(V, W) - kvz),
                     std::abs(kvz - K(Z, A)), std::abs(K(Z, A) - K(Z, U)),
                     std::abs(kxv - K(X, Y)), std::abs(K(X, Y) - K(Z, U))});
  });

  return report;
}

inline VerifierVerdict verify_identity_suite(const CurvatureTensor& R, int trials,
                                             std::uint64_t seed,
                                             double tol = verify_tol) {
  return run_identity_suite(R, trials, seed, tol).to_verdict();
}

}  // namespace curvlab
