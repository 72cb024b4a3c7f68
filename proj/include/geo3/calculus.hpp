#pragma once

#include "geo3/chart.hpp"
#include "geo3/field.hpp"
#include "geo3/jet.hpp"

namespace geo3 {

/// Value, gradient and Hessian of `field` at `p` from the jet engine.
/// Throws UsageError on chart mismatch and DomainError outside the chart.
Jet2<double> eval_jet(const ScalarField & field, const ChartPoint & p);

double eval_value(const ScalarField & field, const ChartPoint & p);

/// Components of X at p.
Vec eval_vector(const VectorField & X, const ChartPoint & p);

/// Components of [X, Y] at p: [X,Y]^k = X^j d_j Y^k - Y^j d_j X^k.
Vec lie_bracket(const VectorField & X, const VectorField & Y, const ChartPoint & p);

/// [X, Y] as a composed field (its jets carry derivatives of the bracket).
VectorField bracket_field(const VectorField & X, const VectorField & Y);

/// X(f) at p.
double directional_derivative(const VectorField & X, const ScalarField & f, const ChartPoint & p);

/// X(f) as a composed field.
ScalarField directional_derivative_field(const VectorField & X, const ScalarField & f);

/// Default finite-difference step for one coordinate value.
double fd_step(double coordinate);

/// Central-difference jet, Richardson-extrapolated over steps h and 2h, used as
/// an independent oracle. `h <= 0` selects the
/// per-coordinate default step 1e-4 * (1 + |x_i|).
/// Throws DomainError unless every point within 2h of p (per coordinate) lies
/// in the chart's field domain.
Jet2<double> fd_oracle(const ScalarField & field, const ChartPoint & p, double h = 0.0);

/// max |a - b| / max(1, |a|) over value, gradient and Hessian entries.
double jet_discrepancy(const Jet2<double> & a, const Jet2<double> & b);

}  // namespace geo3
