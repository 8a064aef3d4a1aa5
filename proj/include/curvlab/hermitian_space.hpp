#pragma once

// Finite-dimensional almost Hermitian linear algebra: a Euclidean space of
// even dimension 2m carrying an orthogonal complex structure J.  Everything
// downstream (curvature tensors, constraint systems, verifiers) works over a
// HermitianContext built here.
//
// Conventions:
//   * the canonical structure acts on the standard basis as
//       J e_i = e_{i+m},  J e_{i+m} = -e_i   (0-based i < m),
//   * planes are stored by g-orthonormal bases {x, y},
//   * the angle of a plane is acos |g(x, Jy)|, which is basis independent,
//     so 0 means holomorphic (J-invariant) and pi/2 anti-holomorphic
//     (J maps the plane into its orthogonal complement).

#include "curvlab/common.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace curvlab {

namespace detail {

inline Matrix canonical_complex_structure(int m) {
  Matrix J = Matrix::Zero(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    J(i + m, i) = 1.0;   // J e_i = e_{i+m}
    J(i, i + m) = -1.0;  // J e_{i+m} = -e_i
  }
  return J;
}

}  // namespace detail

/// Immutable bundle (dim = 2m, metric g, complex structure J) with the
/// structural invariants checked on construction:
///   * J*J = -I entrywise within structure_tol,
///   * g symmetric positive definite,
///   * J orthogonal for g, i.e. J^T g J = g entrywise within structure_tol.
///
/// Cheap to copy (shared immutable state).  Two contexts are interchangeable
/// when their dimensions agree and their g and J matrices are bitwise equal.
class HermitianContext {
 public:
  /// Canonical context: g = I and the block structure J on R^{2m}.
  explicit HermitianContext(int m)
      : HermitianContext(m, detail::canonical_complex_structure(m),
                         Matrix::Identity(2 * m, 2 * m)) {}

  HermitianContext(int m, Matrix J, Matrix g) {
    if (m < 2) throw std::invalid_argument("HermitianContext: m must be >= 2");
    const int n = 2 * m;
    if (J.rows() != n || J.cols() != n)
      throw std::invalid_argument("HermitianContext: J must be " + std::to_string(n) + "x" +
                                  std::to_string(n));
    if (g.rows() != n || g.cols() != n)
      throw std::invalid_argument("HermitianContext: g must be " + std::to_string(n) + "x" +
                                  std::to_string(n));

    const double j_square = (J * J + Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
    if (j_square > structure_tol)
      throw validation_error("complex structure violates J*J = -I (residual " +
                             std::to_string(j_square) + ")");
    const double g_sym = (g - g.transpose()).cwiseAbs().maxCoeff();
    if (g_sym > structure_tol)
      throw validation_error("metric is not symmetric (residual " + std::to_string(g_sym) + ")");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (g + g.transpose()));
    const double min_eig = eig.eigenvalues().minCoeff();
    if (min_eig <= 0.0)
      throw validation_error("metric is not positive definite (min eigenvalue " +
                             std::to_string(min_eig) + ")");
    const double compat = (J.transpose() * g * J - g).cwiseAbs().maxCoeff();
    if (compat > structure_tol)
      throw validation_error("J is not orthogonal for g (residual " + std::to_string(compat) +
                             ")");

    data_ = std::make_shared<const Data>(m, std::move(g), std::move(J));
  }

  int half_dim() const { return data_->m; }
  int dim() const { return 2 * data_->m; }
  const Matrix& metric() const { return data_->g; }
  const Matrix& complex_structure() const { return data_->J; }

  double ip(const Vector& x, const Vector& y) const { return x.dot(data_->g * y); }
  double norm(const Vector& x) const { return std::sqrt(ip(x, x)); }
  Vector apply_J(const Vector& x) const { return data_->J * x; }

  bool interchangeable_with(const HermitianContext& other) const {
    if (data_ == other.data_) return true;
    return data_->m == other.data_->m && data_->g == other.data_->g &&
           data_->J == other.data_->J;
  }

  /// Memo slot for the orthonormal basis of the curvature subspace (filled
  /// lazily by curvature_subspace_basis; the basis depends only on dim, but
  /// caching per context keeps lifetimes trivial).
  template <typename Compute>
  const Matrix& curvature_basis_memo(Compute&& compute) const {
    std::call_once(data_->basis_once, [&] { data_->basis = compute(); });
    return data_->basis;
  }

 private:
  struct Data {
    Data(int m_, Matrix g_, Matrix J_) : m(m_), g(std::move(g_)), J(std::move(J_)) {}
    int m;
    Matrix g;
    Matrix J;
    mutable std::once_flag basis_once;
    mutable Matrix basis;
  };
  std::shared_ptr<const Data> data_;
};

/// g-orthonormalization with a second correction pass (classical modified
/// Gram-Schmidt is not quite enough at the tolerances we promise).  Throws
/// validation_error naming the first input vector that is linearly dependent
/// on its predecessors, judged by relative norm loss against rank_tol.
inline std::vector<Vector> gram_schmidt(const std::vector<Vector>& input,
                                        const HermitianContext& ctx) {
  std::vector<Vector> out;
  out.reserve(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    if (input[i].size() != ctx.dim())
      throw std::invalid_argument("gram_schmidt: vector " + std::to_string(i) +
                                  " has wrong dimension");
    Vector v = input[i];
    const double original = ctx.norm(v);
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& u : out) v -= ctx.ip(v, u) * u;
    const double remaining = ctx.norm(v);
    if (remaining <= rank_tol * std::max(original, 1e-300))
      throw validation_error("gram_schmidt: vector " + std::to_string(i) +
                             " is linearly dependent on its predecessors");
    out.push_back(v / remaining);
  }
  return out;
}

/// A 2-plane given by a g-orthonormal basis {x, y}; orthonormality is
/// validated on construction (Gram residual below structure_tol).
class Plane {
 public:
  Plane(Vector x, Vector y, HermitianContext ctx)
      : x_(std::move(x)), y_(std::move(y)), ctx_(std::move(ctx)) {
    if (x_.size() != ctx_.dim() || y_.size() != ctx_.dim())
      throw std::invalid_argument("Plane: basis vectors have wrong dimension");
    const double r = std::max({std::abs(ctx_.ip(x_, x_) - 1.0), std::abs(ctx_.ip(y_, y_) - 1.0),
                               std::abs(ctx_.ip(x_, y_))});
    if (r > structure_tol)
      throw validation_error("Plane: basis is not orthonormal (Gram residual " +
                             std::to_string(r) + ")");
  }

  /// Orthonormalizes a spanning pair first; rejects dependent spans.
  static Plane from_span(const Vector& a, const Vector& b, const HermitianContext& ctx) {
    auto basis = gram_schmidt({a, b}, ctx);
    return Plane(std::move(basis[0]), std::move(basis[1]), ctx);
  }

  const Vector& x() const { return x_; }
  const Vector& y() const { return y_; }
  const HermitianContext& context() const { return ctx_; }

 private:
  Vector x_, y_;
  HermitianContext ctx_;
};

/// Angle theta in [0, pi/2] with cos(theta) = |g(x, Jy)|.  Invariant under
/// orthonormal changes of the plane basis.
inline double kahler_angle(const Plane& p) {
  double c = std::abs(p.context().ip(p.x(), p.context().apply_J(p.y())));
  if (c > 1.0) c = 1.0;  // clip roundoff before acos
  return std::acos(c);
}

/// Random unit vector (Gaussian direction, g-normalized).
inline Vector random_unit_vector(const HermitianContext& ctx, std::mt19937_64& rng) {
  for (;;) {
    Vector v = gaussian_vector(ctx.dim(), rng);
    const double n = ctx.norm(v);
    if (n > 1e-8) return v / n;
  }
}

/// Random unit vector g-orthogonal to every vector in `avoid`.  The avoided
/// family need not be orthonormal; its span must not fill the whole space.
inline Vector unit_normal_complement(const HermitianContext& ctx, const std::vector<Vector>& avoid,
                                     std::mt19937_64& rng) {
  std::vector<Vector> frame;
  for (const Vector& a : avoid) {
    Vector v = a;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& u : frame) v -= ctx.ip(v, u) * u;
    const double n = ctx.norm(v);
    if (n > rank_tol * std::max(ctx.norm(a), 1e-300)) frame.push_back(v / n);
  }
  if (static_cast<int>(frame.size()) >= ctx.dim())
    throw std::invalid_argument("unit_normal_complement: orthogonal complement is trivial");
  for (;;) {
    Vector v = gaussian_vector(ctx.dim(), rng);
    for (int pass = 0; pass < 2; ++pass)
      for (const Vector& u : frame) v -= ctx.ip(v, u) * u;
    const double n = ctx.norm(v);
    if (n > 1e-8) return v / n;
  }
}

/// Plane with prescribed angle: x random unit, y = cos(theta) Jx +
/// sin(theta) u for a random unit u orthogonal to both x and Jx.
inline Plane plane_with_angle(double theta, const HermitianContext& ctx, std::uint64_t seed) {
  if (theta < 0.0 || theta > std::acos(-1.0) / 2 + 1e-12)
    throw std::invalid_argument("plane_with_angle: theta must lie in [0, pi/2]");
  std::mt19937_64 rng(seed);
  const Vector x = random_unit_vector(ctx, rng);
  const Vector jx = ctx.apply_J(x);
  const Vector u = unit_normal_complement(ctx, {x, jx}, rng);
  return Plane(x, std::cos(theta) * jx + std::sin(theta) * u, ctx);
}

/// An "adapted" pair: unit x and unit y orthogonal to both x and Jx, exactly
/// the quantifier pattern of the constraint families and most identities.
inline std::pair<Vector, Vector> sample_adapted_pair(const HermitianContext& ctx,
                                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vector x = random_unit_vector(ctx, rng);
  Vector y = unit_normal_complement(ctx, {x, ctx.apply_J(x)}, rng);
  return {std::move(x), std::move(y)};
}

enum class SubspaceType { holomorphic, antiholomorphic, neither };

inline const char* to_string(SubspaceType t) {
  switch (t) {
    case SubspaceType::holomorphic: return "holomorphic";
    case SubspaceType::antiholomorphic: return "antiholomorphic";
    default: return "neither";
  }
}

/// Classifies span(basis): holomorphic iff J maps it into itself (requires
/// even dimension), anti-holomorphic iff J maps it into its g-orthogonal
/// complement (possible only up to dimension m).  Dependent input is
/// rejected by gram_schmidt.
inline SubspaceType classify_subspace(const std::vector<Vector>& basis,
                                      const HermitianContext& ctx) {
  if (basis.empty()) throw std::invalid_argument("classify_subspace: empty basis");
  const std::vector<Vector> frame = gram_schmidt(basis, ctx);
  double inside = 0.0;   // largest norm of the projection of J u onto the span
  double outside = 0.0;  // largest norm of the part of J u leaving the span
  for (const Vector& u : frame) {
    Vector w = ctx.apply_J(u);
    Vector proj = Vector::Zero(ctx.dim());
    for (const Vector& v : frame) proj += ctx.ip(w, v) * v;
    inside = std::max(inside, ctx.norm(proj));
    outside = std::max(outside, ctx.norm(w - proj));
  }
  if (outside <= structure_tol && frame.size() % 2 == 0) return SubspaceType::holomorphic;
  if (inside <= structure_tol && static_cast<int>(frame.size()) <= ctx.half_dim())
    return SubspaceType::antiholomorphic;
  return SubspaceType::neither;
}

}  // namespace curvlab
