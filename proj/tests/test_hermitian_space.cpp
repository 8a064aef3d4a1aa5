#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "curvlab/hermitian_space.hpp"
#include "test_helpers.hpp"

using namespace curvlab;

TEST_SUITE("hermitian_space") {

TEST_CASE("canonical context satisfies the structural identities exactly") {
  for (int m : {2, 3, 4}) {
    HermitianContext ctx(m);
    const int d = 2 * m;
    CHECK(ctx.dim() == d);
    CHECK(ctx.half_dim() == m);
    CHECK((ctx.complex_structure() * ctx.complex_structure() + Matrix::Identity(d, d))
              .cwiseAbs()
              .maxCoeff() == 0.0);
    CHECK(ctx.metric() == Matrix::Identity(d, d));
    // J sends e_i to e_{i+m} and e_{i+m} to -e_i.
    for (int i = 0; i < m; ++i) {
      CHECK(ctx.apply_J(Vector::Unit(d, i)) == Vector::Unit(d, i + m));
      CHECK(ctx.apply_J(Vector::Unit(d, i + m)) == -Vector::Unit(d, i));
    }
  }
}

TEST_CASE("constructor rejects broken inputs") {
  CHECK_THROWS_AS(HermitianContext(1), std::invalid_argument);

  const int m = 2, d = 4;
  const Matrix J = detail::canonical_complex_structure(m);
  const Matrix I = Matrix::Identity(d, d);

  CHECK_THROWS_AS(HermitianContext(m, Matrix::Identity(3, 3), I), std::invalid_argument);
  CHECK_THROWS_AS(HermitianContext(m, J, Matrix::Identity(5, 5)), std::invalid_argument);

  // J*J != -I
  CHECK_THROWS_AS(HermitianContext(m, I, I), validation_error);

  // non-symmetric metric
  Matrix g_asym = I;
  g_asym(0, 1) = 0.5;
  CHECK_THROWS_AS(HermitianContext(m, J, g_asym), validation_error);

  // symmetric but not positive definite
  Matrix g_indef = I;
  g_indef(3, 3) = -1.0;
  CHECK_THROWS_AS(HermitianContext(m, J, g_indef), validation_error);

  // SPD but incompatible with J: J^T g J swaps the first and second blocks
  Matrix g_incompat = I;
  g_incompat(0, 0) = 2.0;
  CHECK_THROWS_AS(HermitianContext(m, J, g_incompat), validation_error);
}

TEST_CASE("non-canonical compatible metric is accepted") {
  // diag(a, b, a, b) commutes with the canonical block J at m = 2.
  Matrix g = Matrix::Identity(4, 4);
  g(0, 0) = g(2, 2) = 2.0;
  g(1, 1) = g(3, 3) = 3.0;
  HermitianContext ctx(2, detail::canonical_complex_structure(2), g);
  CHECK(ctx.ip(Vector::Unit(4, 0), Vector::Unit(4, 0)) == 2.0);
  CHECK(ctx.norm(Vector::Unit(4, 1)) == doctest::Approx(std::sqrt(3.0)));
  CHECK(!ctx.interchangeable_with(HermitianContext(2)));
  CHECK(ctx.interchangeable_with(HermitianContext(2, detail::canonical_complex_structure(2), g)));
}

TEST_CASE("gram_schmidt produces a g-orthonormal family spanning the input") {
  HermitianContext ctx(3);
  std::mt19937_64 rng(7);
  std::vector<Vector> input;
  for (int i = 0; i < 4; ++i) input.push_back(testhelp::random_vector(6, rng));

  const auto frame = gram_schmidt(input, ctx);
  REQUIRE(frame.size() == 4);
  for (std::size_t a = 0; a < frame.size(); ++a)
    for (std::size_t b = 0; b <= a; ++b)
      CHECK(ctx.ip(frame[a], frame[b]) == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-13));

  // Triangular span: input[k] lies in span(frame[0..k]).
  for (std::size_t k = 0; k < input.size(); ++k) {
    Vector rest = input[k];
    for (std::size_t a = 0; a <= k; ++a) rest -= ctx.ip(rest, frame[a]) * frame[a];
    CHECK(ctx.norm(rest) < 1e-10 * ctx.norm(input[k]));
  }
}

TEST_CASE("gram_schmidt rejects dependent input naming the offender") {
  HermitianContext ctx(2);
  const Vector a = Vector::Unit(4, 0), b = Vector::Unit(4, 1);
  try {
    gram_schmidt({a, b, a + 2.0 * b}, ctx);
    FAIL("expected validation_error");
  } catch (const validation_error& e) {
    CHECK(std::string(e.what()).find("vector 2") != std::string::npos);
  }
}

TEST_CASE("planes validate orthonormality and from_span normalizes") {
  HermitianContext ctx(2);
  const Vector e0 = Vector::Unit(4, 0), e1 = Vector::Unit(4, 1);
  CHECK_NOTHROW(Plane(e0, e1, ctx));
  CHECK_THROWS_AS(Plane(e0, 2.0 * e1, ctx), validation_error);
  CHECK_THROWS_AS(Plane(e0, (e0 + e1) / std::sqrt(2.0), ctx), validation_error);

  const Plane p = Plane::from_span(3.0 * e0, e0 + e1, ctx);
  CHECK(ctx.ip(p.x(), p.y()) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(ctx.norm(p.x()) == doctest::Approx(1.0));
  CHECK(ctx.norm(p.y()) == doctest::Approx(1.0));
  CHECK_THROWS_AS(Plane::from_span(e0, -2.0 * e0, ctx), validation_error);
}

TEST_CASE("kahler_angle hits the extremes and matches its defining formula") {
  HermitianContext ctx(2);
  const Vector e0 = Vector::Unit(4, 0), e1 = Vector::Unit(4, 1);
  CHECK(kahler_angle(Plane(e0, ctx.apply_J(e0), ctx)) == doctest::Approx(0.0));
  CHECK(kahler_angle(Plane(e0, e1, ctx)) ==
        doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("plane_with_angle reproduces the requested angle") {
  for (int m : {2, 3}) {
    HermitianContext ctx(m);
    for (double theta : {0.0, 0.3, std::numbers::pi / 4, std::numbers::pi / 2})
      for (std::uint64_t seed : {11u, 12u, 13u}) {
        // acos near the endpoints turns rounding noise in the cosine into
        // sqrt(eps)-sized angle noise, so the bound is absolute
        const double angle = kahler_angle(plane_with_angle(theta, ctx, seed));
        CHECK(std::abs(angle - theta) < 1e-7);
      }
  }
  CHECK_THROWS_AS(plane_with_angle(-0.1, HermitianContext(2), 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(plane_with_angle(2.0, HermitianContext(2), 0),
                  std::invalid_argument);
}

TEST_CASE("kahler_angle is invariant under in-plane rotations of the basis") {
  HermitianContext ctx(3);
  const Plane p = plane_with_angle(0.7, ctx, 99);
  const double reference = kahler_angle(p);
  for (double phi : {0.3, 1.1, 2.9}) {
    const Vector a = std::cos(phi) * p.x() + std::sin(phi) * p.y();
    const Vector b = -std::sin(phi) * p.x() + std::cos(phi) * p.y();
    CHECK(kahler_angle(Plane::from_span(a, b, ctx)) ==
          doctest::Approx(reference).epsilon(1e-12));
  }
}

TEST_CASE("random sampling is deterministic, normalized and orthogonal") {
  HermitianContext ctx(3);
  std::mt19937_64 rng_a(42), rng_b(42);
  const Vector va = random_unit_vector(ctx, rng_a);
  const Vector vb = random_unit_vector(ctx, rng_b);
  CHECK(va == vb);
  CHECK(ctx.norm(va) == doctest::Approx(1.0).epsilon(1e-14));

  std::mt19937_64 rng(5);
  const Vector x = random_unit_vector(ctx, rng);
  const Vector n = unit_normal_complement(ctx, {x, ctx.apply_J(x)}, rng);
  CHECK(ctx.norm(n) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(ctx.ip(n, x)) < 1e-12);
  CHECK(std::abs(ctx.ip(n, ctx.apply_J(x))) < 1e-12);

  const auto [X, Y] = sample_adapted_pair(ctx, 77);
  CHECK(ctx.norm(X) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(ctx.norm(Y) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::abs(ctx.ip(X, Y)) < 1e-12);
  CHECK(std::abs(ctx.ip(ctx.apply_J(X), Y)) < 1e-12);

  // avoid family filling the space leaves no complement
  HermitianContext small(2);
  std::vector<Vector> all;
  for (int i = 0; i < 4; ++i) all.push_back(Vector::Unit(4, i));
  std::mt19937_64 rng2(1);
  CHECK_THROWS_AS(unit_normal_complement(small, all, rng2), std::invalid_argument);
}

TEST_CASE("classify_subspace recognizes the three cases") {
  HermitianContext ctx(2);
  const Vector e0 = Vector::Unit(4, 0), e1 = Vector::Unit(4, 1);
  const Vector je0 = ctx.apply_J(e0), je1 = ctx.apply_J(e1);

  CHECK(classify_subspace({e0, je0}, ctx) == SubspaceType::holomorphic);
  CHECK(classify_subspace({e0, e1}, ctx) == SubspaceType::antiholomorphic);
  CHECK(classify_subspace({e1}, ctx) == SubspaceType::antiholomorphic);
  // span{e1, (Je1 + e2)/sqrt 2}: J e1 has a component inside and outside
  CHECK(classify_subspace({e1, ((je1 + je0) / std::sqrt(2.0))}, ctx) ==
        SubspaceType::neither);
  // the whole space is J-invariant
  CHECK(classify_subspace({e0, e1, je0, je1}, ctx) == SubspaceType::holomorphic);

  CHECK(std::string(to_string(SubspaceType::holomorphic)) == "holomorphic");
  CHECK(std::string(to_string(SubspaceType::antiholomorphic)) == "antiholomorphic");
  CHECK(std::string(to_string(SubspaceType::neither)) == "neither");
  CHECK_THROWS_AS(classify_subspace({}, ctx), std::invalid_argument);
  CHECK_THROWS_AS(classify_subspace({e0, 2.0 * e0}, ctx), validation_error);
}
}
