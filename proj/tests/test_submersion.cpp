#include "geo3/catalog.hpp"
#include "geo3/errors.hpp"
#include "geo3/submersion.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace geo3;

namespace {

// (R^3, Euclidean) -> (R^2, Euclidean) along a linear map (x, y, z) -> (x, a y).
SubmersionSpec scaled_projection(double a)
{
  auto chart = test::r3_chart();
  auto x = ScalarField::coordinate(chart, 0);
  auto y = ScalarField::coordinate(chart, 1);
  SubmersionSpec spec;
  spec.id = "scaled";
  spec.total.id = "r3";
  spec.total.chart = chart;
  spec.total.frame = FrameField({coordinate_field(chart, 0), coordinate_field(chart, 1), coordinate_field(chart, 2)},
                                MetricField::euclidean(chart));
  auto base = Chart::coordinate(
    "r2", {"u", "v"}, [](const Vec &) { return true; }, {Vec::Constant(2, -1.0), Vec::Constant(2, 1.0), {}});
  spec.base = {base, MetricField::euclidean(base)};
  spec.map = {x, a * y};
  spec.canonical_vertical = coordinate_field(chart, 2);
  return spec;
}

SubmersionSpec without_closed_forms(SubmersionSpec spec)
{
  spec.closed_form_frame.reset();
  spec.closed_form_data.reset();
  return spec;
}

}  // namespace

TEST_CASE("validate_submersion")
{
  SUBCASE("BCV projections pass")
  {
    for (auto [m, l] : {std::pair{0.0, 0.0}, {1.0, 2.0}, {-1.0, 1.0}, {0.3, -0.7}}) {
      const auto spec = bcv_projection({m, l});
      const auto r = validate_submersion(spec, sample_points(spec.total.chart, 50, 1));
      CHECK(r.passed());
      CHECK(r.points == 50);
    }
  }
  SUBCASE("Hopf map passes")
  {
    for (double eps : {0.5, 1.0, 2.0}) {
      const auto spec = hopf_map(eps);
      CHECK(validate_submersion(spec, sample_points(spec.total.chart, 50, 2)).passed());
    }
  }
  SUBCASE("a scaled linear map fails with |d pi(e2)| = 2")
  {
    const auto spec = scaled_projection(2.0);
    const auto r = validate_submersion(spec, sample_points(spec.total.chart, 10, 3));
    CHECK_FALSE(r.passed());
    CHECK(r.max_norm_e2 == doctest::Approx(2.0));
    CHECK(r.unit_norm == doctest::Approx(1.0));
  }
  SUBCASE("rank deficiency is a structural failure")
  {
    auto spec = scaled_projection(1.0);
    spec.map[1] = spec.map[0];
    CHECK_THROWS_AS(validate_submersion(spec, sample_points(spec.total.chart, 3, 4)), StructuralFailure);
  }
}

TEST_CASE("natural frames")
{
  SUBCASE("Nil: e3 = (1 + x^2)^(-1/2) d/dy")
  {
    const auto spec = nil_projection();
    const ChartPoint p(spec.total.chart, make_vec({1.0, 0.3, -0.2}));
    const Vec e3 = eval_vector(natural_frame(spec, p)[2], p);
    CHECK(e3(0) == 0.0);
    CHECK(e3(1) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(e3(2) == 0.0);
  }
  SUBCASE("cylindrical: e3 = (1/rho) d/dtheta")
  {
    const auto spec = cylinder_axial_projection();
    const ChartPoint p(spec.total.chart, make_vec({2.0, 0.0, 0.5}));
    const Vec e3 = eval_vector(natural_frame(spec, p)[2], p);
    CHECK(e3(2) == doctest::Approx(0.5));
  }
  SUBCASE("BCV: e3 = d/dz")
  {
    const auto spec = bcv_projection({-1.0, 1.0});
    const ChartPoint p(spec.total.chart, make_vec({0.2, 0.1, 0.0}));
    const Vec e3 = eval_vector(natural_frame(spec, p)[2], p);
    CHECK((e3 - make_vec({0.0, 0.0, 1.0})).norm() == 0.0);
  }
  SUBCASE("Gram-Schmidt reproduces the closed-form vertical and stays natural")
  {
    for (const auto & spec : {nil_projection(), bcv_projection({-1.0, 1.0}), cylinder_axial_projection()}) {
      CAPTURE(spec.id);
      const auto gs = without_closed_forms(spec);
      for (const auto & p : sample_points(spec.total.chart, 10, 5)) {
        const auto f = natural_frame(gs, p);
        CHECK(f.orthonormality_defect(p) <= 1e-12);
        const Vec a = eval_vector(f[2], p);
        const Vec b = eval_vector(natural_frame(spec, p)[2], p);
        CHECK((a - b).norm() <= 1e-12);
      }
      CHECK(validate_submersion(gs, sample_points(spec.total.chart, 10, 6)).passed());
      CHECK(identity_report(gs, sample_points(spec.total.chart, 10, 7)).rc_overall() <= 1e-7);
    }
  }
  SUBCASE("Gram-Schmidt needs a coordinate chart")
  {
    const auto spec = without_closed_forms(hopf_map(0.5));
    const ChartPoint p = sample_points(spec.total.chart, 1, 8).front();
    CHECK_THROWS_AS(natural_frame(spec, p), UsageError);
  }
}

TEST_CASE("integrability data")
{
  SUBCASE("Nil at x = 1")
  {
    const auto spec = nil_projection();
    const ChartPoint p(spec.total.chart, make_vec({1.0, 0.0, 0.0}));
    const auto d = integrability_data(natural_frame(spec, p), p).value;
    CHECK(d.f2 == doctest::Approx(0.5));
    CHECK(d.kappa1 == doctest::Approx(-0.5));
    CHECK(std::abs(d.sigma) <= 1e-14);
    CHECK(std::abs(d.f1) <= 1e-14);
    CHECK(std::abs(d.kappa2) <= 1e-14);
    CHECK(std::abs(d.f3) <= 1e-14);
  }
  SUBCASE("Nil closed forms at several x")
  {
    const auto spec = nil_projection();
    for (double x : {-1.7, -0.4, 0.3, 2.0}) {
      const ChartPoint p(spec.total.chart, make_vec({x, 0.2, 0.1}));
      const auto d = integrability_data(natural_frame(spec, p), p).value;
      const double q = 1.0 + x * x;
      CHECK(d.f2 == doctest::Approx(x / q));
      CHECK(d.kappa1 == doctest::Approx(-x / q));
      CHECK(d.sigma == doctest::Approx((1.0 - x * x) / (2.0 * q)));
    }
  }
  SUBCASE("cylindrical at rho = 2")
  {
    const auto spec = cylinder_axial_projection();
    const ChartPoint p(spec.total.chart, make_vec({2.0, 0.4, 1.0}));
    const auto d = integrability_data(natural_frame(spec, p), p).value;
    CHECK(d.kappa1 == doctest::Approx(-0.5));
    CHECK(std::abs(d.f1) + std::abs(d.f2) + std::abs(d.f3) + std::abs(d.kappa2) + std::abs(d.sigma) <= 1e-14);
  }
  SUBCASE("BCV at the origin")
  {
    for (double l : {0.0, 1.0, -2.0}) {
      const auto spec = bcv_projection({0.7, l});
      const ChartPoint p(spec.total.chart, make_vec({0.0, 0.0, 0.3}));
      const auto d = integrability_data(natural_frame(spec, p), p).value;
      CHECK(std::abs(d.f1) <= 1e-14);
      CHECK(std::abs(d.f2) <= 1e-14);
      CHECK(d.sigma * d.sigma == doctest::Approx(l * l / 4.0));
    }
  }
  SUBCASE("Berger data of the Hopf map")
  {
    for (double eps : {0.5, -0.5, 2.0}) {
      const auto spec = hopf_map(eps);
      const ChartPoint p = sample_points(spec.total.chart, 1, 9).front();
      const auto d = integrability_data(natural_frame(spec, p), p).value;
      CHECK(d.sigma * d.sigma == doctest::Approx(eps * eps).epsilon(1e-12));
      CHECK(d.f3 == doctest::Approx(-2.0 / std::abs(eps)));
    }
  }
  SUBCASE("a frame that tilts the vertical is not natural")
  {
    const auto spec = bcv_projection({1.0, 1.0});
    const ChartPoint p(spec.total.chart, make_vec({0.3, -0.4, 0.0}));
    const auto tilted = rotate_frame(spec.total.frame, FrameRotation::plane(0, 2, 0.5).matrix());
    CHECK_THROWS_AS(integrability_data(tilted, p), InvariantViolation);
  }
}

TEST_CASE("tension and harmonicity")
{
  SUBCASE("BCV projections are harmonic in all seven cases")
  {
    for (auto [m, l] : {std::pair{0.0, 0.0}, {0.25, 1.0}, {1.0, 0.0}, {-1.0, 0.0}, {1.0, 1.0}, {-1.0, 1.0}, {0.0, 1.0}}) {
      const auto spec = bcv_projection({m, l});
      const auto v = is_harmonic(spec, sample_points(spec.total.chart, 200, 10));
      CHECK(v.harmonic());
      CHECK(v.max_tension <= 1e-12);
    }
  }
  SUBCASE("Nil: not harmonic, |tau| = |x| / (1 + x^2)")
  {
    const auto spec = nil_projection();
    const auto pts = sample_points(spec.total.chart, 50, 11);
    CHECK(is_harmonic(spec, pts).verdict == Verdict::NonHarmonic);
    for (const auto & p : pts) {
      const double x = p[0];
      CHECK(tension_field(spec, p).norm == doctest::Approx(std::abs(x) / (1.0 + x * x)).epsilon(1e-12));
    }
  }
  SUBCASE("H^2 x R onto (y, z) is not harmonic")
  {
    const auto spec = hyperbolic_product_projection();
    CHECK(is_harmonic(spec, sample_points(spec.total.chart, 50, 12)).verdict == Verdict::NonHarmonic);
  }
  SUBCASE("|tau|^2 = kappa1^2 + kappa2^2")
  {
    for (const auto & spec : catalog()) {
      for (const auto & p : sample_points(spec.total.chart, 10, 13)) {
        const auto f = natural_frame(spec, p);
        const auto d = integrability_data(f, p).value;
        const double t = tension_field(spec, f, p).norm;
        CHECK(std::abs(t * t - (d.kappa1 * d.kappa1 + d.kappa2 * d.kappa2)) <= 1e-9);
      }
    }
  }
  SUBCASE("verdict thresholds")
  {
    const HarmonicTolerances tol;
    CHECK(classify_kappa(0.0, tol) == Verdict::Harmonic);
    CHECK(classify_kappa(1e-8, tol) == Verdict::Harmonic);
    CHECK(classify_kappa(1e-6, tol) == Verdict::Inconclusive);
    CHECK(classify_kappa(1e-4, tol) == Verdict::NonHarmonic);
    CHECK(classify_kappa(0.0, {1e-20, 1e-4}) == Verdict::Inconclusive);
  }
}

TEST_CASE("energy density")
{
  const auto bcv = bcv_projection({-1.0, 1.0});
  for (const auto & p : sample_points(bcv.total.chart, 10, 14)) { CHECK(energy_density(bcv, p) == doctest::Approx(1.0)); }
  const auto scaled = scaled_projection(2.0);
  CHECK(energy_density(scaled, sample_points(scaled.total.chart, 1, 15).front()) == doctest::Approx(2.5));
  const auto hopf = hopf_map(0.5);
  for (const auto & p : sample_points(hopf.total.chart, 10, 16)) { CHECK(energy_density(hopf, p) == doctest::Approx(1.0)); }
}

TEST_CASE("base Gauss curvature")
{
  const auto bcv = bcv_projection({-1.0, 0.5});
  for (const auto & p : sample_points(bcv.total.chart, 20, 17)) {
    CHECK(std::abs(base_gauss_curvature(bcv, p) + 4.0) <= 1e-9);
    // Engine path, without the closed-form data.
    CHECK(std::abs(base_gauss_curvature(integrability_data(natural_frame(bcv, p), p)) + 4.0) <= 1e-9);
  }
  const auto flat = bcv_projection({0.0, 0.0});
  CHECK(base_gauss_curvature(flat, sample_points(flat.total.chart, 1, 18).front()) == 0.0);
  const auto hopf = hopf_map(0.7);
  for (const auto & p : sample_points(hopf.total.chart, 10, 19)) {
    CHECK(std::abs(base_gauss_curvature(integrability_data(natural_frame(hopf, p), p)) - 4.0) <= 1e-9);
  }
  const auto nil = nil_projection();
  for (const auto & p : sample_points(nil.total.chart, 10, 20)) {
    const double x2 = p[0] * p[0];
    CHECK(base_gauss_curvature(nil, p) == doctest::Approx((1.0 - 2.0 * x2) / ((1.0 + x2) * (1.0 + x2))));
  }
}

TEST_CASE("curvature identities")
{
  SUBCASE("every catalog entry at 100 points")
  {
    for (const auto & spec : catalog()) {
      CAPTURE(spec.id);
      const auto r = curvature_identity_residuals(spec, sample_points(spec.total.chart, 100, 21));
      CHECK(r.rc_overall() <= 1e-7);
      CHECK(r.data_agreement <= 1e-9);
      CHECK(r.frame_residual <= 1e-10);
    }
  }
  SUBCASE("Nil, second identity")
  {
    const auto spec = nil_projection();
    const ChartPoint p(spec.total.chart, make_vec({1.0, 0.0, 0.0}));
    const auto f = natural_frame(spec, p);
    const auto d = integrability_data(f, p);
    const double rhs = d.d(0).kappa1 + d.value.sigma * d.value.sigma - d.value.kappa1 * d.value.kappa1 + d.value.kappa2 * d.value.f1;
    CHECK(std::abs(riemann_frame(f, p)(0, 2, 0, 2) - rhs) <= 1e-12);
  }
  SUBCASE("flat projection: both sides vanish")
  {
    const auto spec = bcv_projection({0.0, 0.0});
    const auto r = identity_report(spec, sample_points(spec.total.chart, 10, 22));
    for (const auto & rec : r.records) {
      for (double v : rec.rc) { CHECK(v == 0.0); }
    }
  }
}

TEST_CASE("harmonic curvature system")
{
  SUBCASE("holds for BCV projections")
  {
    for (auto [m, l] : {std::pair{1.0, 1.0}, {-1.0, 1.0}, {0.0, 2.0}}) {
      const auto spec = bcv_projection({m, l});
      CHECK(harmonic_system_residuals(spec, sample_points(spec.total.chart, 50, 23)).rc0_overall() <= 1e-8);
    }
  }
  SUBCASE("holds for the non-harmonic cylindrical projection")
  {
    const auto spec = cylinder_axial_projection();
    const auto r = harmonic_system_residuals(spec, sample_points(spec.total.chart, 50, 24));
    CHECK(r.rc0_overall() <= 1e-8);
    CHECK(r.verdict.verdict == Verdict::NonHarmonic);
  }
  SUBCASE("fails for Nil at x = 1")
  {
    const auto spec = nil_projection();
    const std::vector<ChartPoint> pts{ChartPoint(spec.total.chart, make_vec({1.0, 0.0, 0.0}))};
    CHECK(harmonic_system_residuals(spec, pts).rc0_overall() > 0.1);
  }
}

TEST_CASE("property: tension and kappa give the same verdict")
{
  for (const auto & spec : catalog()) {
    const auto r = identity_report(spec, sample_points(spec.total.chart, 50, 25));
    const HarmonicTolerances tol;
    CHECK((r.verdict.max_kappa <= tol.harmonic) == (r.verdict.max_tension <= tol.harmonic));
  }
}

TEST_CASE("property: sigma != 0 and the harmonic system force harmonicity")
{
  for (const auto & spec : catalog()) {
    const auto r = identity_report(spec, sample_points(spec.total.chart, 50, 26));
    if (r.sigma_min_abs >= 0.01 && r.rc0_overall() <= 1e-8) {
      CAPTURE(spec.id);
      CHECK(r.verdict.harmonic());
    }
  }
}

TEST_CASE("property: R(e1,e2,e1,e2) = K^N - 3 sigma^2 for harmonic entries")
{
  for (const auto & spec : catalog()) {
    if (!spec.expected.harmonic) { continue; }
    for (const auto & p : sample_points(spec.total.chart, 20, 27)) {
      const auto f = natural_frame(spec, p);
      const auto d = integrability_data(f, p);
      const double s = d.value.sigma;
      CHECK(std::abs(riemann_frame(f, p)(0, 1, 0, 1) - (base_gauss_curvature(d) - 3.0 * s * s)) <= 1e-7);
    }
  }
}

TEST_CASE("property: verdict and K^N do not depend on the horizontal frame")
{
  for (const auto & spec : catalog()) {
    CAPTURE(spec.id);
    const auto pts = sample_points(spec.total.chart, 30, 28);
    const auto base = identity_report(spec, pts);
    for (double angle : {0.3, 1.1}) {
      const auto r = identity_report(spec, pts, {{}, angle});
      CHECK(r.verdict.verdict == base.verdict.verdict);
      CHECK(r.rc_overall() <= 1e-7);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(std::abs(r.records[i].gauss_curvature - base.records[i].gauss_curvature) <= 2e-7);
      }
    }
  }
}
