#pragma once

// Shared aliases, tolerances and error types used across curvlab.
//
// Three tolerance regimes, kept deliberately distinct:
//   structure_tol  -- exactness of structural invariants (J*J = -I, metric
//                     compatibility, orthonormality of plane bases).  These
//                     hold to machine precision on valid inputs, so the
//                     threshold is tight.
//   rank_tol       -- relative singular-value cutoff for rank decisions in
//                     constraint systems and basis extraction.
//   verify_tol     -- relative threshold for verifier verdicts (residuals of
//                     identities and constancy checks, scaled by the tensor
//                     norm so that verdicts are homogeneous of degree zero).

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace curvlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double structure_tol = 1e-10;
inline constexpr double rank_tol = 1e-8;
inline constexpr double verify_tol = 1e-8;

/// A numerical invariant of an otherwise well-formed object failed (metric
/// not positive definite, tensor symmetry broken, ...).  Maps to exit code 1
/// in the command-line driver.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// An input document could not be parsed or has the wrong shape.  Maps to
/// exit code 2 in the command-line driver.
class format_error : public std::runtime_error {
 public:
  explicit format_error(const std::string& what) : std::runtime_error(what) {}
};

/// Standard normal draws, one value at a time.  All randomized routines in
/// curvlab take an explicit 64-bit seed and derive every draw from a local
/// mt19937_64, so identical seeds give bit-identical results.
inline Vector gaussian_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = normal(rng);
  return v;
}

}  // namespace curvlab
