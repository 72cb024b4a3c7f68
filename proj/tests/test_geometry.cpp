#include "geo3/errors.hpp"
#include "geo3/geometry.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace geo3;

namespace {

// Flat R^3 with a frame that twists with x: curvature must still vanish.
FrameField twisted_flat_frame(const ChartPtr & chart)
{
  auto x = ScalarField::coordinate(chart, 0);
  const ScalarField c = cos(x * x);
  const ScalarField s = sin(x * x);
  return FrameField({VectorField(chart, {1.0, 0.0, 0.0}), VectorField(chart, {0.0, c, s}),
                     VectorField(chart, {0.0, -s, c})},
                    MetricField::euclidean(chart));
}

// Upper half-space model of H^3, coordinates (x, y, z), z > 0.
FrameField hyperbolic_frame(ChartPtr & chart)
{
  chart = Chart::coordinate(
    "h3", {"x", "y", "z"}, [](const Vec & v) { return v(2) > 0.0; },
    {make_vec({-1.0, -1.0, 0.5}), make_vec({1.0, 1.0, 2.0}), {}});
  auto z = ScalarField::coordinate(chart, 2);
  const ScalarField w = 1.0 / (z * z);
  return FrameField({VectorField(chart, {z, 0.0, 0.0}), VectorField(chart, {0.0, z, 0.0}),
                     VectorField(chart, {0.0, 0.0, z})},
                    MetricField::diagonal(chart, {w, w, w}));
}

}  // namespace

TEST_CASE("coordinate frame of R^3 has vanishing structure functions and curvature")
{
  auto chart = test::r3_chart();
  const FrameField f({coordinate_field(chart, 0), coordinate_field(chart, 1), coordinate_field(chart, 2)},
                     MetricField::euclidean(chart));
  for (const auto & p : sample_points(chart, 5, 1)) {
    const auto s = structure_functions(f, p);
    CHECK(s.c.max_abs_diff(FrameTensor<3>{}) == 0.0);
    CHECK(riemann_frame(f, p).r.max_abs_diff(FrameTensor<4>{}) == 0.0);
  }
}

TEST_CASE("a twisting orthonormal frame of flat space is flat")
{
  auto chart = test::r3_chart();
  const FrameField f = twisted_flat_frame(chart);
  for (const auto & p : sample_points(chart, 10, 2)) {
    const auto s = structure_functions(f, p);
    CHECK(s.residual <= 1e-14);
    const auto G = koszul_connection(s);
    const auto d = connection_defects(G, s);
    CHECK(d.metric_compatibility <= 1e-14);
    CHECK(d.torsion <= 1e-14);
    CHECK(riemann_from(s, G).r.max_abs_diff(FrameTensor<4>{}) <= 1e-12);
  }
}

TEST_CASE("hyperbolic space has constant sectional curvature -1")
{
  ChartPtr chart;
  const FrameField f = hyperbolic_frame(chart);
  const auto expected = curvature_from_sectional(-1.0, -1.0, -1.0);
  for (const auto & p : sample_points(chart, 10, 3)) {
    const auto R = riemann_frame(f, p);
    CHECK(R.r.max_abs_diff(expected.r) <= 1e-12);
    CHECK(curvature_symmetry_defects(R).max() <= 1e-12);
    CHECK((ricci(R) + 2.0 * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("curvature_from_sectional satisfies every curvature symmetry")
{
  const auto R = curvature_from_sectional(0.3, -1.7, 2.5);
  CHECK(curvature_symmetry_defects(R).max() == 0.0);
  CHECK(R(0, 1, 0, 1) == 0.3);
  CHECK(R(0, 2, 0, 2) == -1.7);
  CHECK(R(1, 2, 1, 2) == 2.5);
  CHECK(R(0, 1, 1, 0) == -0.3);
  const Eigen::Matrix3d ric = ricci(R);
  CHECK(ric(0, 0) == doctest::Approx(0.3 - 1.7));
  CHECK(ric(1, 1) == doctest::Approx(0.3 + 2.5));
  CHECK(ric(2, 2) == doctest::Approx(-1.7 + 2.5));
}

TEST_CASE("rotating a frame rotates its curvature tensor")
{
  ChartPtr chart;
  const FrameField f = hyperbolic_frame(chart);
  std::mt19937_64 rng(17);
  const Eigen::Matrix3d a = test::random_rotation(rng);
  const FrameField g = rotate_frame(f, a);
  for (const auto & p : sample_points(chart, 3, 4)) {
    CHECK(g.orthonormality_defect(p) <= 1e-14);
    CHECK(curvature_symmetry_defects(riemann_frame(g, p)).max() <= 1e-12);
    // Constant curvature is rotation invariant.
    CHECK(riemann_frame(g, p).r.max_abs_diff(curvature_from_sectional(-1.0, -1.0, -1.0).r) <= 1e-12);
  }
}

TEST_CASE("non-orthonormal frames are rejected")
{
  auto chart = test::r3_chart();
  const FrameField f({coordinate_field(chart, 0), ScalarField(2.0) * coordinate_field(chart, 1),
                      coordinate_field(chart, 2)},
                     MetricField::euclidean(chart));
  const ChartPoint p(chart, make_vec({0.0, 0.0, 0.0}));
  CHECK(f.orthonormality_defect(p) == doctest::Approx(3.0));
  CHECK_THROWS_AS(structure_functions(f, p), InvariantViolation);
}

TEST_CASE("degenerate metrics are rejected")
{
  auto chart = test::r3_chart();
  auto x = ScalarField::coordinate(chart, 0);
  const MetricField g = MetricField::diagonal(chart, {x * x, 1.0, 1.0});
  CHECK_THROWS_AS(g.require_positive_definite(ChartPoint(chart, make_vec({0.0, 0.0, 0.0}))), InvariantViolation);
  CHECK_NOTHROW(g.require_positive_definite(ChartPoint(chart, make_vec({0.5, 0.0, 0.0}))));
}
