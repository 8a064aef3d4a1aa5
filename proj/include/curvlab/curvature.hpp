#pragma once

// Algebraic curvature tensors on a HermitianContext, stored as dense
// coefficient arrays R[i][j][k][l] = R(e_i, e_j, e_k, e_l) in row-major
// order.  A valid tensor satisfies
//   property 1: R(X,Y,Z,U) = -R(Y,X,Z,U)
//   property 2: R(X,Y,Z,U) + R(Y,Z,X,U) + R(Z,X,Y,U) = 0   (first Bianchi)
//   property 3: R(X,Y,Z,U) = -R(X,Y,U,Z)
// and, as a consequence that we check rather than assume,
//   pair symmetry: R(X,Y,Z,U) = R(Z,U,X,Y).
//
// The two model tensors attached to the structure (g, J), with
// om(X,Y) = g(X, JY):
//   R1(X,Y,Z,U) = g(X,U) g(Y,Z) - g(X,Z) g(Y,U)
//   R2(X,Y,Z,U) = om(X,U) om(Y,Z) - om(X,Z) om(Y,U) - 2 om(X,Y) om(Z,U)
// and the two-parameter model family
//   model(K, c) = K R1 + ((c - K)/3) R2,
// which has constant holomorphic sectional curvature c and constant
// anti-holomorphic sectional curvature K.

#include "curvlab/common.hpp"
#include "curvlab/hermitian_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace curvlab {

struct SymmetryResiduals {
  double antisym_first = 0.0;   // property 1
  double bianchi = 0.0;         // property 2
  double antisym_second = 0.0;  // property 3
  double pair_symmetry = 0.0;

  double max() const {
    return std::max({antisym_first, bianchi, antisym_second, pair_symmetry});
  }

  /// Human-readable list of the properties whose residual exceeds tol,
  /// empty string when all pass.
  std::string violations(double tol) const {
    std::string out;
    auto add = [&](double r, const char* name) {
      if (r <= tol) return;
      if (!out.empty()) out += ", ";
      out += name;
      out += " (residual " + std::to_string(r) + ")";
    };
    add(antisym_first, "property 1");
    add(bianchi, "property 2");
    add(antisym_second, "property 3");
    add(pair_symmetry, "pair symmetry");
    return out;
  }
};

namespace detail {

inline std::size_t tensor_index(int d, int i, int j, int k, int l) {
  return ((static_cast<std::size_t>(i) * d + j) * d + k) * d + l;
}

inline SymmetryResiduals symmetry_residuals_raw(const std::vector<double>& c, int d) {
  SymmetryResiduals r;
  auto at = [&](int i, int j, int k, int l) { return c[tensor_index(d, i, j, k, l)]; };
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const double v = at(i, j, k, l);
          r.antisym_first = std::max(r.antisym_first, std::abs(v + at(j, i, k, l)));
          r.antisym_second = std::max(r.antisym_second, std::abs(v + at(i, j, l, k)));
          r.pair_symmetry = std::max(r.pair_symmetry, std::abs(v - at(k, l, i, j)));
          r.bianchi = std::max(r.bianchi, std::abs(v + at(j, k, i, l) + at(k, i, j, l)));
        }
  return r;
}

}  // namespace detail

class CurvatureTensor {
 public:
  /// Takes ownership of a dense coefficient array of size dim^4.  By default
  /// the curvature invariants are verified (residuals against structure_tol);
  /// pass validate = false only for coefficients already known to lie in the
  /// curvature subspace (projection output, arithmetic on valid tensors).
  CurvatureTensor(HermitianContext ctx, std::vector<double> coeffs, bool validate = true)
      : ctx_(std::move(ctx)), dim_(ctx_.dim()), c_(std::move(coeffs)) {
    const std::size_t want = static_cast<std::size_t>(dim_) * dim_ * dim_ * dim_;
    if (c_.size() != want)
      throw std::invalid_argument("CurvatureTensor: expected " + std::to_string(want) +
                                  " coefficients, got " + std::to_string(c_.size()));
    if (validate) {
      const std::string bad = symmetry_residuals().violations(structure_tol);
      if (!bad.empty()) throw validation_error("curvature invariants violated: " + bad);
    }
  }

  static CurvatureTensor unchecked(HermitianContext ctx, std::vector<double> coeffs) {
    return CurvatureTensor(std::move(ctx), std::move(coeffs), false);
  }

  static CurvatureTensor zero(const HermitianContext& ctx) {
    const int d = ctx.dim();
    return unchecked(ctx, std::vector<double>(static_cast<std::size_t>(d) * d * d * d, 0.0));
  }

  int dim() const { return dim_; }
  const HermitianContext& context() const { return ctx_; }
  const std::vector<double>& coefficients() const { return c_; }

  double operator()(int i, int j, int k, int l) const {
    return c_[detail::tensor_index(dim_, i, j, k, l)];
  }

  SymmetryResiduals symmetry_residuals() const {
    return detail::symmetry_residuals_raw(c_, dim_);
  }

  double norm() const {
    return std::sqrt(std::inner_product(c_.begin(), c_.end(), c_.begin(), 0.0));
  }

  CurvatureTensor& operator+=(const CurvatureTensor& o) { return combine(o, 1.0); }
  CurvatureTensor& operator-=(const CurvatureTensor& o) { return combine(o, -1.0); }
  CurvatureTensor& operator*=(double s) {
    for (double& v : c_) v *= s;
    return *this;
  }

  friend CurvatureTensor operator+(CurvatureTensor a, const CurvatureTensor& b) { return a += b; }
  friend CurvatureTensor operator-(CurvatureTensor a, const CurvatureTensor& b) { return a -= b; }
  friend CurvatureTensor operator*(double s, CurvatureTensor a) { return a *= s; }

 private:
  CurvatureTensor& combine(const CurvatureTensor& o, double s) {
    if (!ctx_.interchangeable_with(o.ctx_))
      throw std::invalid_argument("CurvatureTensor: mixing tensors from different contexts");
    for (std::size_t n = 0; n < c_.size(); ++n) c_[n] += s * o.c_[n];
    return *this;
  }

  HermitianContext ctx_;
  int dim_;
  std::vector<double> c_;
};

/// Entrywise (Frobenius-style) inner product of coefficient arrays.
inline double inner(const CurvatureTensor& a, const CurvatureTensor& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("inner: tensors have different dimensions");
  return std::inner_product(a.coefficients().begin(), a.coefficients().end(),
                            b.coefficients().begin(), 0.0);
}

/// Multilinear evaluation R(X,Y,Z,U) by staged contraction (one slot at a
/// time), O(dim^4) instead of the naive quadruple sum per term.
inline double evaluate(const CurvatureTensor& R, const Vector& X, const Vector& Y,
                       const Vector& Z, const Vector& U) {
  const int d = R.dim();
  if (X.size() != d || Y.size() != d || Z.size() != d || U.size() != d)
    throw std::invalid_argument("evaluate: argument dimension mismatch");
  const std::vector<double>& c = R.coefficients();
  std::vector<double> t3(static_cast<std::size_t>(d) * d * d, 0.0);
  for (int i = 0; i < d; ++i) {
    const double xi = X[i];
    if (xi == 0.0) continue;
    const std::size_t base = static_cast<std::size_t>(i) * d * d * d;
    for (std::size_t n = 0; n < t3.size(); ++n) t3[n] += xi * c[base + n];
  }
  std::vector<double> t2(static_cast<std::size_t>(d) * d, 0.0);
  for (int j = 0; j < d; ++j) {
    const double yj = Y[j];
    if (yj == 0.0) continue;
    const std::size_t base = static_cast<std::size_t>(j) * d * d;
    for (std::size_t n = 0; n < t2.size(); ++n) t2[n] += yj * t3[base + n];
  }
  double out = 0.0;
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l) out += Z[k] * U[l] * t2[static_cast<std::size_t>(k) * d + l];
  return out;
}

inline CurvatureTensor r1_tensor(const HermitianContext& ctx) {
  const int d = ctx.dim();
  const Matrix& g = ctx.metric();
  std::vector<double> c(static_cast<std::size_t>(d) * d * d * d);
  std::size_t n = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) c[n++] = g(i, l) * g(j, k) - g(i, k) * g(j, l);
  return CurvatureTensor(ctx, std::move(c));
}

inline CurvatureTensor r2_tensor(const HermitianContext& ctx) {
  const int d = ctx.dim();
  const Matrix om = ctx.metric() * ctx.complex_structure();  // om(i,j) = g(e_i, J e_j)
  std::vector<double> c(static_cast<std::size_t>(d) * d * d * d);
  std::size_t n = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          c[n++] = om(i, l) * om(j, k) - om(i, k) * om(j, l) - 2.0 * om(i, j) * om(k, l);
  return CurvatureTensor(ctx, std::move(c));
}

/// model(K, c) = K R1 + ((c - K)/3) R2.  K = c gives (c/4)(R1 + R2) scaled:
/// the constant-sectional-curvature tensor c R1 appears at c = K, and the
/// complex space form of constant holomorphic curvature c at K = c/4.
inline CurvatureTensor model_tensor(const HermitianContext& ctx, double K, double c) {
  CurvatureTensor out = K * r1_tensor(ctx);
  out += ((c - K) / 3.0) * r2_tensor(ctx);
  return out;
}

inline double sectional_curvature(const CurvatureTensor& R, const Plane& p) {
  if (!R.context().interchangeable_with(p.context()))
    throw std::invalid_argument("sectional_curvature: plane from a different context");
  return evaluate(R, p.x(), p.y(), p.y(), p.x());
}

/// H(X) = K(X, JX) for the normalized direction of X.
inline double holomorphic_sectional_curvature(const CurvatureTensor& R, const Vector& X) {
  const HermitianContext& ctx = R.context();
  const double n = ctx.norm(X);
  if (!(n > 0.0))
    throw std::invalid_argument("holomorphic_sectional_curvature: zero direction");
  const Vector x = X / n;
  const Vector jx = ctx.apply_J(x);
  return evaluate(R, x, jx, jx, x);
}

namespace detail {

/// Contracts one slot of a dim^4 array with a matrix:
/// out[... p ...] = sum_q M(q, p) in[... q ...] with p in position `slot`.
inline std::vector<double> contract_slot(const std::vector<double>& in, int d, int slot,
                                         const Matrix& M) {
  std::vector<double> out(in.size(), 0.0);
  std::size_t stride = 1;
  for (int s = slot + 1; s < 4; ++s) stride *= d;
  const std::size_t block = stride * d;  // span of the contracted slot
  for (std::size_t outer = 0; outer < in.size(); outer += block)
    for (int q = 0; q < d; ++q)
      for (int p = 0; p < d; ++p) {
        const double m = M(q, p);
        if (m == 0.0) continue;
        const std::size_t src = outer + q * stride;
        const std::size_t dst = outer + p * stride;
        for (std::size_t r = 0; r < stride; ++r) out[dst + r] += m * in[src + r];
      }
  return out;
}

}  // namespace detail

/// Coefficients of the J-conjugate (X,Y,Z,U) -> R(JX, JY, JZ, JU).
inline std::vector<double> conjugated_by_structure(const CurvatureTensor& R) {
  std::vector<double> c = R.coefficients();
  const Matrix& J = R.context().complex_structure();
  for (int slot = 0; slot < 4; ++slot) c = detail::contract_slot(c, R.dim(), slot, J);
  return c;
}

/// Largest entrywise deviation from the Kaehler-type symmetry
/// R(JX,JY,JZ,JU) = R(X,Y,Z,U) over all basis quadruples.
inline double rk_defect(const CurvatureTensor& R) {
  const std::vector<double> conj = conjugated_by_structure(R);
  const std::vector<double>& c = R.coefficients();
  double worst = 0.0;
  for (std::size_t n = 0; n < c.size(); ++n) worst = std::max(worst, std::abs(conj[n] - c[n]));
  return worst;
}

namespace detail {

/// Orthogonal projection of a raw dim^4 array onto the curvature subspace:
/// antisymmetrize both pairs, symmetrize the pair exchange, then remove the
/// cyclic (Bianchi) part b(S)_ijkl = (S_ijkl + S_jkil + S_kijl)/3, which on
/// pair-symmetric biforms is the orthogonal projection onto 4-forms.  The
/// final re-symmetrization only cleans roundoff: exactly, S - b(S) already
/// has all three symmetries again.
inline void project_raw(std::vector<double>& s, int d) {
  auto id = [d](int i, int j, int k, int l) { return tensor_index(d, i, j, k, l); };
  std::vector<double> t(s.size());
  auto symmetrize = [&] {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l)
            t[id(i, j, k, l)] = 0.5 * (s[id(i, j, k, l)] - s[id(j, i, k, l)]);
    s.swap(t);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l)
            t[id(i, j, k, l)] = 0.5 * (s[id(i, j, k, l)] - s[id(i, j, l, k)]);
    s.swap(t);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l)
            t[id(i, j, k, l)] = 0.5 * (s[id(i, j, k, l)] + s[id(k, l, i, j)]);
    s.swap(t);
  };
  symmetrize();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const double b =
              (s[id(i, j, k, l)] + s[id(j, k, i, l)] + s[id(k, i, j, l)]) / 3.0;
          t[id(i, j, k, l)] = s[id(i, j, k, l)] - b;
        }
  s.swap(t);
  symmetrize();
}

}  // namespace detail

/// Orthogonal projection of an arbitrary 4-index array onto the space of
/// algebraic curvature tensors.  Idempotent; fixes valid tensors.
inline CurvatureTensor project_to_curvature(std::vector<double> raw,
                                            const HermitianContext& ctx) {
  const int d = ctx.dim();
  const std::size_t want = static_cast<std::size_t>(d) * d * d * d;
  if (raw.size() != want)
    throw std::invalid_argument("project_to_curvature: expected " + std::to_string(want) +
                                " coefficients, got " + std::to_string(raw.size()));
  detail::project_raw(raw, d);
  return CurvatureTensor(ctx, std::move(raw));
}

struct ModelParameters {
  double K = 0.0;        // anti-holomorphic sectional curvature of the fit
  double c = 0.0;        // holomorphic sectional curvature of the fit
  double residual = 0.0; // Frobenius norm of R - model(K, c)
};

/// Least-squares projection onto span{R1, R2} via the 2x2 Gram system,
/// reported in the (K, c) parametrization of the model family.
inline ModelParameters fit_model(const CurvatureTensor& R) {
  const HermitianContext& ctx = R.context();
  const CurvatureTensor r1 = r1_tensor(ctx);
  const CurvatureTensor r2 = r2_tensor(ctx);
  const double g11 = inner(r1, r1);
  const double g12 = inner(r1, r2);
  const double g22 = inner(r2, r2);
  const double b1 = inner(r1, R);
  const double b2 = inner(r2, R);
  const double det = g11 * g22 - g12 * g12;  // R1, R2 independent for m >= 2
  const double a = (b1 * g22 - b2 * g12) / det;
  const double b = (g11 * b2 - g12 * b1) / det;
  ModelParameters fit;
  fit.K = a;
  fit.c = a + 3.0 * b;  // model(K, c) = K R1 + ((c - K)/3) R2
  fit.residual = (R - (a * r1 + b * r2)).norm();
  return fit;
}

enum class PlaneFamily { holomorphic, antiholomorphic };

struct ConstancySummary {
  double mean = 0.0;
  double max_deviation = 0.0;  // max |K_i - mean| over the batch
  int plane_count = 0;
};

/// Sectional-curvature constancy over a plane family: a deterministic sweep
/// of frame-aligned planes of the requested angle plus n_samples seeded
/// random planes.  The deterministic part guards against randomness that
/// happens to miss axis-aligned structure.
inline ConstancySummary constancy_report(const CurvatureTensor& R, PlaneFamily family,
                                         int n_samples, std::uint64_t seed) {
  if (n_samples < 1)
    throw std::invalid_argument("constancy_report: n_samples must be >= 1");
  const HermitianContext& ctx = R.context();
  const int d = ctx.dim();

  std::vector<Vector> basis;
  for (int i = 0; i < d; ++i) basis.push_back(Vector::Unit(d, i));
  const std::vector<Vector> frame = gram_schmidt(basis, ctx);

  std::vector<double> values;
  if (family == PlaneFamily::holomorphic) {
    for (const Vector& u : frame)
      values.push_back(sectional_curvature(R, Plane(u, ctx.apply_J(u), ctx)));
  } else {
    for (std::size_t a = 0; a < frame.size(); ++a)
      for (std::size_t b = a + 1; b < frame.size(); ++b)
        if (std::abs(ctx.ip(frame[a], ctx.apply_J(frame[b]))) < 1e-12)
          values.push_back(sectional_curvature(R, Plane(frame[a], frame[b], ctx)));
  }

  const double theta =
      family == PlaneFamily::holomorphic ? 0.0 : std::acos(-1.0) / 2;
  std::mt19937_64 rng(seed);
  for (int s = 0; s < n_samples; ++s)
    values.push_back(sectional_curvature(R, plane_with_angle(theta, ctx, rng())));

  ConstancySummary out;
  out.plane_count = static_cast<int>(values.size());
  for (double v : values) out.mean += v;
  out.mean /= out.plane_count;
  for (double v : values) out.max_deviation = std::max(out.max_deviation, std::abs(v - out.mean));
  return out;
}

}  // namespace curvlab
