#include "geo3/calculus.hpp"
#include "geo3/errors.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace geo3;

namespace {

ChartPtr cylinder_chart()
{
  return Chart::coordinate(
    "cyl", {"rho", "z", "theta"}, [](const Vec & x) { return x(0) > 0.0; },
    {make_vec({0.1, -1.0, -3.0}), make_vec({2.0, 1.0, 3.0}), {}});
}

}  // namespace

TEST_CASE("eval_jet of a constant field")
{
  auto chart = test::r3_chart();
  const ChartPoint p(chart, make_vec({0.3, -0.2, 0.9}));
  const auto j = eval_jet(ScalarField(1.0), p);
  CHECK(j.value() == 1.0);
  CHECK(j.gradient().isZero(0.0));
  CHECK(j.hessian().isZero(0.0));
}

TEST_CASE("eval_jet of F = 1 + m(x^2 + y^2) with m = 1")
{
  auto chart = test::r3_chart();
  auto x = ScalarField::coordinate(chart, 0);
  auto y = ScalarField::coordinate(chart, 1);
  const ScalarField F = 1.0 + 1.0 * (x * x + y * y);
  const ChartPoint p(chart, make_vec({1.0, 0.0, 0.0}));
  const auto j = eval_jet(F, p);
  CHECK(j.value() == doctest::Approx(2.0));
  CHECK(j.gradient()(0) == doctest::Approx(2.0));
  CHECK(j.gradient()(1) == doctest::Approx(0.0));
  CHECK(j.gradient()(2) == doctest::Approx(0.0));
  CHECK(j.hessian()(0, 0) == doctest::Approx(2.0));
  CHECK(j.hessian()(1, 1) == doctest::Approx(2.0));
  CHECK(j.hessian()(2, 2) == doctest::Approx(0.0));

  // Same field through the finite-difference oracle.
  const auto fd = fd_oracle(F, p);
  CHECK(jet_discrepancy(j, fd) <= 1e-6);
}

TEST_CASE("eval_jet of a linear field p = y")
{
  auto chart = test::r3_chart();
  const ChartPoint p(chart, make_vec({0.0, 1.0, 0.0}));
  const auto j = eval_jet(ScalarField::coordinate(chart, 1), p);
  CHECK(j.value() == 1.0);
  CHECK(j.gradient()(0) == 0.0);
  CHECK(j.gradient()(1) == 1.0);
  CHECK(j.gradient()(2) == 0.0);
}

TEST_CASE("points outside a chart domain are rejected")
{
  auto cyl = cylinder_chart();
  CHECK_THROWS_AS(ChartPoint(cyl, make_vec({-1.0, 0.0, 0.0})), DomainError);
  CHECK_THROWS_AS(ChartPoint(cyl, make_vec({1.0, 0.0})), DomainError);
}

TEST_CASE("evaluating a field at a point of another chart is a usage error")
{
  auto a = test::r3_chart();
  auto cyl = cylinder_chart();
  const ChartPoint p(cyl, make_vec({1.0, 0.0, 0.0}));
  CHECK_THROWS_AS(eval_jet(ScalarField::coordinate(a, 0), p), UsageError);
  CHECK_THROWS_AS(ScalarField::coordinate(a, 0) + ScalarField::coordinate(cyl, 0), UsageError);
}

TEST_CASE("lie_bracket of constant coordinate fields vanishes")
{
  auto chart = test::r3_chart();
  const ChartPoint p(chart, make_vec({0.1, 0.2, 0.3}));
  const Vec b = lie_bracket(coordinate_field(chart, 0), coordinate_field(chart, 2), p);
  CHECK(b.isZero(0.0));
}

TEST_CASE("lie_bracket of the Nil frame: [e1, e3] = -x/(1+x^2) e3")
{
  auto chart = test::r3_chart(2.0);
  auto x = ScalarField::coordinate(chart, 0);
  const ScalarField s = sqrt(1.0 + x * x);
  const VectorField e1 = coordinate_field(chart, 0);
  const VectorField e3(chart, {0.0, 1.0 / s, 0.0});
  const ChartPoint p(chart, make_vec({1.0, 0.4, -0.7}));
  const Vec b = lie_bracket(e1, e3, p);
  const Vec expected = -0.5 * eval_vector(e3, p);
  CHECK((b - expected).norm() <= 1e-15);
}

TEST_CASE("lie_bracket of the BCV frame with m = 0, l = 1: [E1, E2] = E3")
{
  auto chart = test::r3_chart();
  auto x = ScalarField::coordinate(chart, 0);
  auto y = ScalarField::coordinate(chart, 1);
  const VectorField E1(chart, {1.0, 0.0, -0.5 * y});
  const VectorField E2(chart, {0.0, 1.0, 0.5 * x});
  for (const auto & c : {make_vec({0.0, 0.0, 0.0}), make_vec({0.8, -0.3, 0.5})}) {
    const ChartPoint p(chart, c);
    const Vec b = lie_bracket(E1, E2, p);
    CHECK(b(0) == doctest::Approx(0.0));
    CHECK(b(1) == doctest::Approx(0.0));
    CHECK(b(2) == doctest::Approx(1.0));
  }
}

TEST_CASE("directional derivatives")
{
  auto chart = test::r3_chart();
  auto x = ScalarField::coordinate(chart, 0);
  auto y = ScalarField::coordinate(chart, 1);
  const ChartPoint origin(chart, make_vec({0.0, 0.0, 0.0}));

  SUBCASE("of a constant field is zero")
  {
    const VectorField X(chart, {x, y * y, 3.0});
    CHECK(directional_derivative(X, ScalarField(5.0), origin) == 0.0);
  }

  SUBCASE("E1(f2) for BCV m = 1, l = 0 at the origin is 2")
  {
    const double m = 1.0;
    const ScalarField F = 1.0 + m * (x * x + y * y);
    const VectorField E1(chart, {F, 0.0, 0.0});
    CHECK(directional_derivative(E1, 2.0 * m * x, origin) == doctest::Approx(2.0));
  }

  SUBCASE("d/drho of -1/rho at rho = 2 is 1/4")
  {
    auto cyl = cylinder_chart();
    auto rho = ScalarField::coordinate(cyl, 0);
    const ChartPoint p(cyl, make_vec({2.0, 0.3, 1.0}));
    CHECK(directional_derivative(coordinate_field(cyl, 0), -1.0 / rho, p) == doctest::Approx(0.25));
  }

  SUBCASE("chart mismatch")
  {
    auto cyl = cylinder_chart();
    CHECK_THROWS_AS(
      directional_derivative(coordinate_field(cyl, 0), x, origin), UsageError);
  }
}

TEST_CASE("fd_oracle on x^2 y at (1,1,0)")
{
  auto chart = test::r3_chart();
  auto x = ScalarField::coordinate(chart, 0);
  auto y = ScalarField::coordinate(chart, 1);
  const ChartPoint p(chart, make_vec({1.0, 1.0, 0.0}));
  const auto j = fd_oracle(x * x * y, p, 1e-4);
  CHECK(std::abs(j.gradient()(0) - 2.0) <= 1e-7);
  CHECK(std::abs(j.gradient()(1) - 1.0) <= 1e-7);
  CHECK(std::abs(j.gradient()(2) - 0.0) <= 1e-7);
}

TEST_CASE("fd_oracle of a constant is exactly zero")
{
  auto chart = test::r3_chart();
  const ChartPoint p(chart, make_vec({0.2, 0.1, -0.5}));
  const auto j = fd_oracle(ScalarField(3.25), p);
  CHECK(j.value() == 3.25);
  CHECK(j.gradient().isZero(0.0));
  CHECK(j.hessian().isZero(0.0));
}

TEST_CASE("fd_oracle refuses stencils that leave the domain")
{
  auto cyl = cylinder_chart();
  auto rho = ScalarField::coordinate(cyl, 0);
  const ChartPoint near_axis(cyl, make_vec({1e-4, 0.0, 0.0}));
  CHECK_THROWS_AS(fd_oracle(1.0 / rho, near_axis), DomainError);
  const ChartPoint inside(cyl, make_vec({0.5, 0.0, 0.0}));
  CHECK_NOTHROW(fd_oracle(1.0 / rho, inside));
}

TEST_CASE("symbolic derivative agrees with the jet gradient")
{
  auto chart = test::r3_chart();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const ScalarField f = test::random_field(chart, rng);
    const auto pts = sample_points(chart, 5, 100 + static_cast<unsigned>(trial));
    for (const auto & p : pts) {
      const auto j = eval_jet(f, p);
      for (int a = 0; a < 3; ++a) {
        const auto da = eval_jet(derivative(f, a), p);
        CHECK(std::abs(da.value() - j.gradient()(a)) <= 1e-13);
        for (int b = 0; b < 3; ++b) { CHECK(std::abs(da.gradient()(b) - j.hessian()(a, b)) <= 1e-12); }
      }
    }
  }
}

TEST_CASE("property: jet engine agrees with the finite-difference oracle")
{
  auto chart = test::r3_chart();
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const ScalarField f = test::random_field(chart, rng);
    for (const auto & p : sample_points(chart, 10, 7 + static_cast<unsigned>(trial))) {
      CHECK(jet_discrepancy(eval_jet(f, p), fd_oracle(f, p)) <= 1e-5);
    }
  }
}

TEST_CASE("property: lie bracket is antisymmetric and bracket_field matches lie_bracket")
{
  auto chart = test::r3_chart();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const VectorField X(chart, {test::random_field(chart, rng), test::random_field(chart, rng),
                                test::random_field(chart, rng)});
    const VectorField Y(chart, {test::random_field(chart, rng), test::random_field(chart, rng),
                                test::random_field(chart, rng)});
    const VectorField XY = bracket_field(X, Y);
    for (const auto & p : sample_points(chart, 5, 40 + static_cast<unsigned>(trial))) {
      const Vec a = lie_bracket(X, Y, p);
      const Vec b = lie_bracket(Y, X, p);
      CHECK((a + b).cwiseAbs().maxCoeff() <= 1e-14);
      CHECK((a - eval_vector(XY, p)).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}
