#include "geo3/calculus.hpp"

#include "geo3/errors.hpp"

#include <algorithm>
#include <cmath>

namespace geo3 {

namespace {

void require_chart(const ChartPtr & field_chart, const ChartPoint & p)
{
  if (field_chart && field_chart != p.chart() && field_chart->id() != p.chart_id()) {
    throw UsageError("field on chart " + field_chart->id() + " evaluated at point of chart " + p.chart_id());
  }
}

void require_same_chart(const VectorField & X, const VectorField & Y)
{
  common_chart(X.chart(), Y.chart());
}

}  // namespace

Jet2<double> eval_jet(const ScalarField & field, const ChartPoint & p)
{
  require_chart(field.chart(), p);
  return field.jet(p.coords());
}

double eval_value(const ScalarField & field, const ChartPoint & p)
{
  require_chart(field.chart(), p);
  return field.value(p.coords());
}

Vec eval_vector(const VectorField & X, const ChartPoint & p)
{
  require_chart(X.chart(), p);
  return X.value(p.coords());
}

Vec lie_bracket(const VectorField & X, const VectorField & Y, const ChartPoint & p)
{
  require_same_chart(X, Y);
  require_chart(X.chart(), p);
  const int n = X.dim();
  Vec xv(n), yv(n);
  Mat dx(n, n), dy(n, n);  // d(k, j) = d_j V^k
  for (int k = 0; k < n; ++k) {
    const auto jx = X[k].jet(p.coords());
    const auto jy = Y[k].jet(p.coords());
    xv(k) = jx.value();
    yv(k) = jy.value();
    dx.row(k) = jx.gradient().transpose();
    dy.row(k) = jy.gradient().transpose();
  }
  return dy * xv - dx * yv;
}

VectorField bracket_field(const VectorField & X, const VectorField & Y)
{
  require_same_chart(X, Y);
  const int n = X.dim();
  std::vector<ScalarField> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    ScalarField acc(0.0);
    for (int j = 0; j < n; ++j) {
      acc = acc + X[j] * derivative(Y[k], j) - Y[j] * derivative(X[k], j);
    }
    out.push_back(acc);
  }
  return VectorField(X.chart(), std::move(out));
}

double directional_derivative(const VectorField & X, const ScalarField & f, const ChartPoint & p)
{
  common_chart(X.chart(), f.chart());
  require_chart(X.chart(), p);
  const auto jf = f.jet(p.coords());
  return jf.gradient().dot(X.value(p.coords()));
}

ScalarField directional_derivative_field(const VectorField & X, const ScalarField & f)
{
  common_chart(X.chart(), f.chart());
  ScalarField acc(0.0);
  for (int j = 0; j < X.dim(); ++j) { acc = acc + X[j] * derivative(f, j); }
  return acc;
}

double fd_step(double coordinate) { return 1e-4 * (1.0 + std::abs(coordinate)); }

Jet2<double> fd_oracle(const ScalarField & field, const ChartPoint & p, double h)
{
  require_chart(field.chart(), p);
  const Vec & x = p.coords();
  const int n = p.dim();
  const auto & chart = *p.chart();

  Vec step(n);
  for (int i = 0; i < n; ++i) { step(i) = h > 0.0 ? h : fd_step(x(i)); }

  // Every point of the {-2h, 0, 2h}^n lattice must be admissible.
  int total = 1;
  for (int i = 0; i < n; ++i) { total *= 3; }
  for (int code = 0; code < total; ++code) {
    Vec y = x;
    int c = code;
    for (int i = 0; i < n; ++i, c /= 3) { y(i) += 2.0 * step(i) * static_cast<double>(c % 3 - 1); }
    if (!chart.extends_to(y)) {
      throw DomainError("finite-difference stencil leaves the domain of chart " + chart.id());
    }
  }

  auto f = [&](const Vec & y) { return field.value(y); };
  const double f0 = f(x);

  // Central differences with steps k * h.
  auto central = [&](double k, Vec & grad, Mat & hess) {
    grad.resize(n);
    hess.resize(n, n);
    for (int i = 0; i < n; ++i) {
      const double s = k * step(i);
      Vec xp = x, xm = x;
      xp(i) += s;
      xm(i) -= s;
      const double fp = f(xp), fm = f(xm);
      grad(i) = (fp - fm) / (2.0 * s);
      hess(i, i) = (fp - 2.0 * f0 + fm) / (s * s);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        auto at = [&](double si, double sj) {
          Vec y = x;
          y(i) += si * k * step(i);
          y(j) += sj * k * step(j);
          return f(y);
        };
        const double v = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * k * k * step(i) * step(j));
        hess(i, j) = v;
        hess(j, i) = v;
      }
    }
  };

  // Richardson extrapolation of the h and 2h estimates cancels the h^2 error term.
  Vec g1, g2;
  Mat h1, h2;
  central(1.0, g1, h1);
  central(2.0, g2, h2);
  const Vec grad = (4.0 * g1 - g2) / 3.0;
  const Mat hess = (4.0 * h1 - h2) / 3.0;
  return Jet2<double>(f0, grad, hess);
}

double jet_discrepancy(const Jet2<double> & a, const Jet2<double> & b)
{
  auto rel = [](double u, double v) { return std::abs(u - v) / std::max(1.0, std::abs(u)); };
  double worst = rel(a.value(), b.value());
  for (int i = 0; i < a.dim(); ++i) {
    worst = std::max(worst, rel(a.gradient()(i), b.gradient()(i)));
    for (int j = 0; j < a.dim(); ++j) {
      worst = std::max(worst, rel(a.hessian()(i, j), b.hessian()(i, j)));
    }
  }
  return worst;
}

}  // namespace geo3
