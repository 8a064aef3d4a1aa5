#pragma once

// Named families of curvature tensors on the canonical context, all fully
// deterministic: the same GeneratorSpec always reproduces the same tensor
// bit for bit.  These are the fixtures everything else is exercised on —
// model tensors with known (K, c), generic random tensors as negative
// controls, and random elements of the two constraint kernels.

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvlab/constraints.hpp"
#include "curvlab/curvature.hpp"
#include "curvlab/verifiers.hpp"

namespace curvlab {

struct GeneratorSpec {
  enum class Kind {
    space_form,          // K * R1: constant sectional curvature K
    complex_space_form,  // (c/4) * (R1 + R2): constant holomorphic curvature c
    model,               // model_tensor(K, c)
    random,              // unit-norm random curvature tensor
    random_rk,           // unit-norm random tensor with vanishing rk defect
    kernel_31,           // unit-norm random element of the kernel of rows
                         //   R(X, JX, JX, Y) = 0  (assemble_condition_31)
    kernel_38,           // unit-norm random element of the kernel of rows
                         //   R(X, Y, Y, Z) = 0   (assemble_condition_38)
    perturbed,           // model(K, c) + eps * random unit curvature direction
  };

  Kind kind = Kind::model;
  int m = 2;
  std::optional<double> K;
  std::optional<double> c;
  std::uint64_t seed = 0;
  std::optional<double> eps;

  // Throws std::invalid_argument when required parameters are missing or a
  // parameter is supplied that the kind does not use.
  void validate() const;
};

inline std::string kind_to_string(GeneratorSpec::Kind kind) {
  switch (kind) {
    case GeneratorSpec::Kind::space_form: return "space-form";
    case GeneratorSpec::Kind::complex_space_form: return "complex-space-form";
    case GeneratorSpec::Kind::model: return "model";
    case GeneratorSpec::Kind::random: return "random";
    case GeneratorSpec::Kind::random_rk: return "random-rk";
    case GeneratorSpec::Kind::kernel_31: return "kernel-31";
    case GeneratorSpec::Kind::kernel_38: return "kernel-38";
    case GeneratorSpec::Kind::perturbed: return "perturbed";
  }
  throw std::invalid_argument("unknown generator kind");
}

inline const std::vector<std::string>& generator_kind_names() {
  static const std::vector<std::string> names = {
      "space-form", "complex-space-form", "model",     "random",
      "random-rk",  "kernel-31",          "kernel-38", "perturbed"};
  return names;
}

inline GeneratorSpec::Kind kind_from_string(const std::string& token) {
  using Kind = GeneratorSpec::Kind;
  if (token == "space-form") return Kind::space_form;
  if (token == "complex-space-form") return Kind::complex_space_form;
  if (token == "model") return Kind::model;
  if (token == "random") return Kind::random;
  if (token == "random-rk") return Kind::random_rk;
  if (token == "kernel-31") return Kind::kernel_31;
  if (token == "kernel-38") return Kind::kernel_38;
  if (token == "perturbed") return Kind::perturbed;
  throw std::invalid_argument("unknown generator kind '" + token + "'");
}

inline void GeneratorSpec::validate() const {
  using Kind = GeneratorSpec::Kind;
  if (m < 2) throw std::invalid_argument("generator requires m >= 2");

  const std::string name = kind_to_string(kind);
  auto require = [&](const std::optional<double>& value, const char* flag) {
    if (!value)
      throw std::invalid_argument("kind '" + name + "' requires " + flag);
  };
  auto forbid = [&](const std::optional<double>& value, const char* flag) {
    if (value)
      throw std::invalid_argument("kind '" + name + "' does not use " + flag);
  };

  switch (kind) {
    case Kind::space_form:
      require(K, "K");
      forbid(c, "c");
      forbid(eps, "eps");
      break;
    case Kind::complex_space_form:
      require(c, "c");
      forbid(K, "K");
      forbid(eps, "eps");
      break;
    case Kind::model:
      require(K, "K");
      require(c, "c");
      forbid(eps, "eps");
      break;
    case Kind::random:
    case Kind::random_rk:
    case Kind::kernel_31:
    case Kind::kernel_38:
      forbid(K, "K");
      forbid(c, "c");
      forbid(eps, "eps");
      break;
    case Kind::perturbed:
      require(K, "K");
      require(c, "c");
      require(eps, "eps");
      if (*eps < 0.0)
        throw std::invalid_argument("perturbation size eps must be >= 0");
      break;
  }
}

namespace detail {

// Unit-norm random direction inside the curvature subspace: a Gaussian
// coefficient array projected onto the symmetry constraints and normalized.
// The projection of a generic draw is nonzero with probability one; the
// retry loop only guards against astronomically unlucky draws.
inline CurvatureTensor random_curvature_direction(const HermitianContext& ctx,
                                                  std::mt19937_64& rng) {
  const int dim = ctx.dim();
  const std::size_t total = static_cast<std::size_t>(dim) * dim * dim * dim;
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::vector<double> raw(total);
    for (double& x : raw) x = gauss(rng);
    CurvatureTensor T = project_to_curvature(raw, ctx);
    const double n = T.norm();
    if (n > 1e-8) return (1.0 / n) * T;
  }
  throw validation_error("failed to draw a nonzero curvature direction");
}

}  // namespace detail

// Adds eps times a seeded random unit curvature direction.  eps = 0 returns
// the input unchanged (bit for bit), so perturbation studies can include the
// unperturbed tensor in the same sweep.
inline CurvatureTensor perturb(const CurvatureTensor& R,
                               std::uint64_t direction_seed, double eps) {
  if (eps < 0.0) throw std::invalid_argument("perturbation size eps must be >= 0");
  if (eps == 0.0) return R;
  std::mt19937_64 rng(direction_seed);
  return R + eps * detail::random_curvature_direction(R.context(), rng);
}

inline CurvatureTensor generate(const GeneratorSpec& spec) {
  using Kind = GeneratorSpec::Kind;
  spec.validate();
  HermitianContext ctx(spec.m);
  std::mt19937_64 rng(spec.seed);

  switch (spec.kind) {
    case Kind::space_form:
      return model_tensor(ctx, *spec.K, *spec.K);
    case Kind::complex_space_form:
      return model_tensor(ctx, *spec.c / 4.0, *spec.c);
    case Kind::model:
      return model_tensor(ctx, *spec.K, *spec.c);
    case Kind::random:
      return detail::random_curvature_direction(ctx, rng);
    case Kind::random_rk: {
      // Averaging with the structure-conjugated tensor is a projection onto
      // the J-invariant subspace (conjugation is an involution), so the
      // result has vanishing rk defect while staying otherwise generic.
      for (int attempt = 0; attempt < 16; ++attempt) {
        const CurvatureTensor R = detail::random_curvature_direction(ctx, rng);
        const CurvatureTensor conj(ctx, conjugated_by_structure(R));
        const CurvatureTensor avg = 0.5 * (R + conj);
        const double n = avg.norm();
        if (n > 1e-8) return (1.0 / n) * avg;
      }
      throw validation_error("failed to draw a nonzero J-invariant tensor");
    }
    case Kind::kernel_31:
    case Kind::kernel_38: {
      const std::uint64_t assembly_seed = rng();
      const int samples = recommended_sample_count(ctx);
      const ConstraintSystem system =
          spec.kind == Kind::kernel_31
              ? assemble_condition_31(ctx, samples, assembly_seed)
              : assemble_condition_38(ctx, samples, assembly_seed);
      const std::vector<CurvatureTensor> ker = kernel(system);
      if (ker.empty())
        throw validation_error("constraint kernel is trivial; nothing to sample");
      return random_kernel_element(ker, rng);
    }
    case Kind::perturbed: {
      const CurvatureTensor base = model_tensor(ctx, *spec.K, *spec.c);
      return perturb(base, rng(), *spec.eps);
    }
  }
  throw std::invalid_argument("unknown generator kind");
}

}  // namespace curvlab
