#pragma once

// Linear constraint systems over the curvature subspace.
//
// The space of algebraic curvature tensors on R^dim has dimension
// dim^2 (dim^2 - 1) / 12; an orthonormal coefficient basis for it is
// computed once per context (SVD of the projected symmetric wedge-pair
// spanning set) and memoized.  A ConstraintSystem stores rows of linear
// functionals expressed in that basis, so kernels are plain SVD null spaces
// of modest matrices instead of dim^4-sized problems.
//
// Three row families are provided (the numeric tags 31 and 38 are the
// tool's fixed vocabulary for them, shared with the CLI's generator kinds):
//   condition 31:  R(X, JX, JX, Y) = 0   for unit X and unit Y
//                  orthogonal to X and JX;
//   condition 38:  R(X, Y, Y, Z) = 0     for orthonormal X, Y, Z with
//                  g(X, JY) = 0 (Z need not avoid JX or JY);
//   plane-angle sampling: rows T(x, y, y, x) over planes with Kaehler angle
//   in {0, pi/4, pi/2} (via the normal form y = cos(t) Jx + sin(t) u), whose
//   trivial kernel certifies that sectional curvatures at those three
//   angles determine the tensor.
//
// Every assembler emits a deterministic structured batch (frame-aligned
// arguments and two-term combinations) before the seeded random rows, so
// axis-aligned structure cannot slip through a random batch.

#include "curvlab/common.hpp"
#include "curvlab/curvature.hpp"
#include "curvlab/hermitian_space.hpp"

#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace curvlab {

inline int curvature_space_dimension(int dim) {
  return dim * dim * (dim * dim - 1) / 12;
}

/// Random rows to request per system so that rows comfortably oversample
/// the unknowns (3x the subspace dimension).
inline int recommended_sample_count(const HermitianContext& ctx) {
  return 3 * curvature_space_dimension(ctx.dim());
}

namespace detail {

inline Matrix compute_curvature_basis(const HermitianContext& ctx) {
  const int d = ctx.dim();
  const std::size_t d4 = static_cast<std::size_t>(d) * d * d * d;

  // Enumerate wedges e_a ^ e_b (a < b) and span the pair-symmetric products
  // w_p (x) w_q + w_q (x) w_p, then project; the images span the curvature
  // subspace exactly.
  std::vector<std::pair<int, int>> wedges;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) wedges.emplace_back(a, b);
  const int n2 = static_cast<int>(wedges.size());

  Matrix span(d4, static_cast<std::size_t>(n2) * (n2 + 1) / 2);
  int col = 0;
  std::vector<double> s(d4);
  for (int p = 0; p < n2; ++p)
    for (int q = p; q < n2; ++q) {
      std::fill(s.begin(), s.end(), 0.0);
      const auto [a, b] = wedges[p];
      const auto [c, e] = wedges[q];
      // (e_a ^ e_b)_{ij} (e_c ^ e_e)_{kl}, symmetrized in the two pairs
      for (int sign1 = 0; sign1 < 2; ++sign1)
        for (int sign2 = 0; sign2 < 2; ++sign2) {
          const int i = sign1 ? b : a, j = sign1 ? a : b;
          const int k = sign2 ? e : c, l = sign2 ? c : e;
          const double v = (sign1 == sign2) ? 1.0 : -1.0;
          s[tensor_index(d, i, j, k, l)] += v;
          s[tensor_index(d, k, l, i, j)] += v;
        }
      project_raw(s, d);
      for (std::size_t n = 0; n < d4; ++n) span(n, col) = s[n];
      ++col;
    }

  Eigen::BDCSVD<Matrix> svd(span, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = sv.size() ? sv[0] * rank_tol : 0.0;
  int rank = 0;
  while (rank < sv.size() && sv[rank] > cutoff) ++rank;
  if (rank != curvature_space_dimension(d))
    throw validation_error("curvature basis extraction found rank " + std::to_string(rank) +
                           ", expected " + std::to_string(curvature_space_dimension(d)));
  return svd.matrixU().leftCols(rank);
}

}  // namespace detail

/// Orthonormal coefficient basis of the curvature subspace, dim^4 x N with
/// N = dim^2 (dim^2 - 1) / 12, memoized on the context.
inline const Matrix& curvature_subspace_basis(const HermitianContext& ctx) {
  return ctx.curvature_basis_memo([&] { return detail::compute_curvature_basis(ctx); });
}

/// Coordinates of a tensor in the curvature subspace basis.
inline Vector coordinates_of(const CurvatureTensor& R) {
  const Matrix& basis = curvature_subspace_basis(R.context());
  return basis.transpose() * Eigen::Map<const Vector>(R.coefficients().data(),
                                                      R.coefficients().size());
}

inline CurvatureTensor tensor_from_coordinates(const HermitianContext& ctx, const Vector& v) {
  const Matrix& basis = curvature_subspace_basis(ctx);
  if (v.size() != basis.cols())
    throw std::invalid_argument("tensor_from_coordinates: coordinate size mismatch");
  const Vector c = basis * v;
  return CurvatureTensor(ctx, std::vector<double>(c.data(), c.data() + c.size()));
}

struct ConstraintSystem {
  HermitianContext ctx;
  Matrix rows;                          // n x N, coordinates in the curvature basis
  std::vector<std::string> provenance;  // one label per row, "structured ..." first
  int structured_count = 0;

  /// The shared orthonormal curvature basis the rows are expressed in.
  const Matrix& basis() const { return curvature_subspace_basis(ctx); }
};

namespace detail {

/// Row of the functional R -> R(X, Y, Z, U) in curvature-basis coordinates.
inline Vector functional_row(const HermitianContext& ctx, const Vector& X, const Vector& Y,
                             const Vector& Z, const Vector& U) {
  const int d = ctx.dim();
  Vector w(static_cast<std::size_t>(d) * d * d * d);
  std::size_t n = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double xy = X[i] * Y[j];
      for (int k = 0; k < d; ++k) {
        const double xyz = xy * Z[k];
        for (int l = 0; l < d; ++l) w[n++] = xyz * U[l];
      }
    }
  return curvature_subspace_basis(ctx).transpose() * w;
}

inline ConstraintSystem pack_rows(HermitianContext ctx, std::vector<Vector> rows,
                                  std::vector<std::string> provenance, int structured) {
  ConstraintSystem sys{std::move(ctx), Matrix(), std::move(provenance), structured};
  const int n = static_cast<int>(rows.size());
  const int width = n ? static_cast<int>(rows[0].size())
                      : curvature_space_dimension(sys.ctx.dim());
  sys.rows.resize(n, width);
  for (int r = 0; r < n; ++r) sys.rows.row(r) = rows[r].transpose();
  return sys;
}

inline std::vector<Vector> orthonormal_frame(const HermitianContext& ctx) {
  std::vector<Vector> basis;
  for (int i = 0; i < ctx.dim(); ++i) basis.push_back(Vector::Unit(ctx.dim(), i));
  return gram_schmidt(basis, ctx);
}

constexpr double frame_orth_tol = 1e-12;

}  // namespace detail

/// Rows R(X, JX, JX, Y) for unit X and unit Y with g(X,Y) = g(JX,Y) = 0.
inline ConstraintSystem assemble_condition_31(const HermitianContext& ctx, int n_samples,
                                              std::uint64_t seed) {
  if (n_samples < 0) throw std::invalid_argument("assemble_condition_31: n_samples < 0");
  const auto frame = detail::orthonormal_frame(ctx);
  const int d = ctx.dim();
  std::vector<Vector> rows;
  std::vector<std::string> labels;

  auto push = [&](const Vector& X, const Vector& Y, std::string label) {
    const Vector JX = ctx.apply_J(X);
    rows.push_back(detail::functional_row(ctx, X, JX, JX, Y));
    labels.push_back(std::move(label));
  };
  auto admissible = [&](const Vector& X, const Vector& Y) {
    return std::abs(ctx.ip(X, Y)) < detail::frame_orth_tol &&
           std::abs(ctx.ip(ctx.apply_J(X), Y)) < detail::frame_orth_tol;
  };

  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      if (a != b && admissible(frame[a], frame[b]))
        push(frame[a], frame[b],
             "structured frame (" + std::to_string(a) + "," + std::to_string(b) + ")");
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      for (int sign = 0; sign < 2; ++sign) {
        const Vector X = inv_sqrt2 * (frame[a] + (sign ? -1.0 : 1.0) * frame[b]);
        for (int c = 0; c < d; ++c)
          if (c != a && c != b && admissible(X, frame[c]))
            push(X, frame[c],
                 "structured combo (" + std::to_string(a) + (sign ? "-" : "+") +
                     std::to_string(b) + "," + std::to_string(c) + ")");
      }
  const int structured = static_cast<int>(rows.size());

  std::mt19937_64 rng(seed);
  for (int s = 0; s < n_samples; ++s) {
    const auto [X, Y] = sample_adapted_pair(ctx, rng());
    push(X, Y, "random " + std::to_string(s));
  }
  return detail::pack_rows(ctx, std::move(rows), std::move(labels), structured);
}

/// Rows R(X, Y, Y, Z) for orthonormal X, Y, Z with g(X, JY) = 0; Z is only
/// required to be orthogonal to X and Y.  The functional is linear in X and
/// Z, so structured two-term combinations are taken in the Y slot, where
/// they add fresh (quadratic) information.
inline ConstraintSystem assemble_condition_38(const HermitianContext& ctx, int n_samples,
                                              std::uint64_t seed) {
  if (n_samples < 0) throw std::invalid_argument("assemble_condition_38: n_samples < 0");
  const auto frame = detail::orthonormal_frame(ctx);
  const int d = ctx.dim();
  std::vector<Vector> rows;
  std::vector<std::string> labels;

  auto push = [&](const Vector& X, const Vector& Y, const Vector& Z, std::string label) {
    rows.push_back(detail::functional_row(ctx, X, Y, Y, Z));
    labels.push_back(std::move(label));
  };
  auto j_orth = [&](const Vector& X, const Vector& Y) {
    return std::abs(ctx.ip(X, ctx.apply_J(Y))) < detail::frame_orth_tol;
  };

  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      if (a == b || !j_orth(frame[a], frame[b])) continue;
      for (int c = 0; c < d; ++c)
        if (c != a && c != b)
          push(frame[a], frame[b], frame[c],
               "structured frame (" + std::to_string(a) + "," + std::to_string(b) + "," +
                   std::to_string(c) + ")");
    }
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      if (b == a || !j_orth(frame[a], frame[b])) continue;
      for (int e = b + 1; e < d; ++e) {
        if (e == a || !j_orth(frame[a], frame[e])) continue;
        for (int sign = 0; sign < 2; ++sign) {
          const Vector Y = inv_sqrt2 * (frame[b] + (sign ? -1.0 : 1.0) * frame[e]);
          for (int c = 0; c < d; ++c)
            if (c != a && c != b && c != e)
              push(frame[a], Y, frame[c],
                   "structured combo (" + std::to_string(a) + "," + std::to_string(b) +
                       (sign ? "-" : "+") + std::to_string(e) + "," + std::to_string(c) + ")");
        }
      }
    }
  const int structured = static_cast<int>(rows.size());

  std::mt19937_64 rng(seed);
  for (int s = 0; s < n_samples; ++s) {
    std::mt19937_64 local(rng());
    const Vector X = random_unit_vector(ctx, local);
    const Vector Y = unit_normal_complement(ctx, {X, ctx.apply_J(X)}, local);
    const Vector Z = unit_normal_complement(ctx, {X, Y}, local);
    push(X, Y, Z, "random " + std::to_string(s));
  }
  return detail::pack_rows(ctx, std::move(rows), std::move(labels), structured);
}

inline const std::vector<double>& standard_plane_angles() {
  static const std::vector<double> angles{0.0, std::numbers::pi / 4, std::numbers::pi / 2};
  return angles;
}

/// Rows T -> K_T(p) = T(x, y, y, x) over planes drawn at the given angles,
/// both frame-aligned and random.  A trivial kernel for the full
/// three-angle system certifies that the sectional curvatures of planes at
/// angles 0, pi/4 and pi/2 determine the whole tensor; dropping the pi/4
/// family must reopen a kernel.
inline ConstraintSystem assemble_theorem_a(
    const HermitianContext& ctx, int n_samples_per_angle, std::uint64_t seed,
    const std::vector<double>& angles = standard_plane_angles()) {
  if (n_samples_per_angle < 0)
    throw std::invalid_argument("assemble_theorem_a: n_samples_per_angle < 0");
  if (angles.empty()) throw std::invalid_argument("assemble_theorem_a: no angles given");
  const auto frame = detail::orthonormal_frame(ctx);
  const int d = ctx.dim();

  std::vector<Plane> planes;
  std::vector<std::string> labels;
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  for (double theta : angles) {
    const std::string at = "angle " + std::to_string(theta);
    if (theta < detail::frame_orth_tol) {
      for (int a = 0; a < d; ++a) {
        planes.emplace_back(frame[a], ctx.apply_J(frame[a]), ctx);
        labels.push_back("structured " + at + " frame " + std::to_string(a));
      }
      for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
          for (int sign = 0; sign < 2; ++sign) {
            const Vector X = inv_sqrt2 * (frame[a] + (sign ? -1.0 : 1.0) * frame[b]);
            planes.emplace_back(X, ctx.apply_J(X), ctx);
            labels.push_back("structured " + at + " combo (" + std::to_string(a) +
                             (sign ? "-" : "+") + std::to_string(b) + ")");
          }
    } else {
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          if (b == a ||
              std::abs(ctx.ip(frame[a], ctx.apply_J(frame[b]))) >= detail::frame_orth_tol)
            continue;
          const Vector y =
              std::cos(theta) * ctx.apply_J(frame[a]) + std::sin(theta) * frame[b];
          planes.emplace_back(frame[a], y, ctx);
          labels.push_back("structured " + at + " frame (" + std::to_string(a) + "," +
                           std::to_string(b) + ")");
        }
    }
  }
  const int structured = static_cast<int>(planes.size());

  std::mt19937_64 rng(seed);
  for (double theta : angles)
    for (int s = 0; s < n_samples_per_angle; ++s) {
      planes.push_back(plane_with_angle(theta, ctx, rng()));
      labels.push_back("random angle " + std::to_string(theta) + " sample " +
                       std::to_string(s));
    }

  std::vector<Vector> rows;
  rows.reserve(planes.size());
  for (const Plane& p : planes)
    rows.push_back(detail::functional_row(ctx, p.x(), p.y(), p.y(), p.x()));
  return detail::pack_rows(ctx, std::move(rows), std::move(labels), structured);
}

struct RankSummary {
  int rank = 0;
  int kernel_dim = 0;
  double sigma_max = 0.0;
  double smallest_retained = 0.0;
  double largest_discarded = 0.0;
  /// Separation between retained and discarded singular values; the
  /// denominator is floored at sigma_max * machine epsilon so the ratio is
  /// meaningful when nothing was discarded.
  double gap = 0.0;
};

namespace detail {

inline Eigen::BDCSVD<Matrix> system_svd(const ConstraintSystem& sys) {
  return Eigen::BDCSVD<Matrix>(sys.rows, Eigen::ComputeFullV);
}

inline int svd_rank(const Eigen::VectorXd& sv, double tol) {
  if (sv.size() == 0 || sv[0] <= 0.0) return 0;
  int rank = 0;
  while (rank < sv.size() && sv[rank] > tol * sv[0]) ++rank;
  return rank;
}

}  // namespace detail

inline RankSummary rank_summary(const ConstraintSystem& sys, double tol = rank_tol) {
  const int width = static_cast<int>(sys.rows.cols());
  RankSummary out;
  if (sys.rows.rows() == 0) {
    out.kernel_dim = width;
    return out;
  }
  const auto svd = detail::system_svd(sys);
  const auto& sv = svd.singularValues();
  out.rank = detail::svd_rank(sv, tol);
  out.kernel_dim = width - out.rank;
  out.sigma_max = sv.size() ? sv[0] : 0.0;
  out.smallest_retained = out.rank > 0 ? sv[out.rank - 1] : 0.0;
  out.largest_discarded = out.rank < sv.size() ? sv[out.rank] : 0.0;
  const double floor = out.sigma_max * std::numeric_limits<double>::epsilon();
  if (out.rank > 0)
    out.gap = out.smallest_retained / std::max(out.largest_discarded, floor);
  return out;
}

/// Orthonormal basis of the null space, returned as curvature tensors.
/// An empty system has the whole curvature subspace as kernel.
inline std::vector<CurvatureTensor> kernel(const ConstraintSystem& sys,
                                           double tol = rank_tol) {
  const int width = static_cast<int>(sys.rows.cols());
  std::vector<CurvatureTensor> out;
  if (sys.rows.rows() == 0) {
    const Matrix& basis = curvature_subspace_basis(sys.ctx);
    for (int c = 0; c < basis.cols(); ++c)
      out.push_back(tensor_from_coordinates(sys.ctx, Vector::Unit(width, c)));
    return out;
  }
  const auto svd = detail::system_svd(sys);
  const int rank = detail::svd_rank(svd.singularValues(), tol);
  const Matrix& V = svd.matrixV();
  for (int c = rank; c < width; ++c)
    out.push_back(tensor_from_coordinates(sys.ctx, V.col(c)));
  return out;
}

}  // namespace curvlab
