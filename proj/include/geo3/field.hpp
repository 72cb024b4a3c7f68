#pragma once

// Scalar and vector fields on a chart.
//
// A ScalarField is an immutable expression graph over the chart coordinates.
// It evaluates either to a plain double or to a second-order jet by forward
// propagation through every node. `derivative` builds the graph of a partial
// derivative, so derivative-valued quantities (bracket components, structure
// functions) can themselves be composed into fields and differentiated again.

#include "geo3/chart.hpp"
#include "geo3/jet.hpp"

#include <memory>
#include <vector>

namespace geo3 {

class ScalarField
{
public:
  struct Node;

  /// The zero constant.
  ScalarField();

  /// Chart-free constant; adopts the chart of whatever it is combined with.
  ScalarField(double constant);  // NOLINT(google-explicit-constructor)

  static ScalarField coordinate(const ChartPtr & chart, int index);

  /// Null for chart-free constants.
  const ChartPtr & chart() const { return chart_; }

  bool is_constant() const;
  double constant_value() const;

  /// Number of distinct nodes in the expression graph.
  std::size_t node_count() const;

  /// Raw evaluation; no domain checks.
  double value(const Vec & x) const;
  Jet2<double> jet(const Vec & x) const;

  const std::shared_ptr<const Node> & node() const { return node_; }

  ScalarField(std::shared_ptr<const Node> node, ChartPtr chart);

private:
  std::shared_ptr<const Node> node_;
  ChartPtr chart_;
};

ScalarField operator+(const ScalarField & a, const ScalarField & b);
ScalarField operator-(const ScalarField & a, const ScalarField & b);
ScalarField operator*(const ScalarField & a, const ScalarField & b);
ScalarField operator/(const ScalarField & a, const ScalarField & b);
ScalarField operator-(const ScalarField & a);

ScalarField exp(const ScalarField & a);
ScalarField log(const ScalarField & a);
ScalarField sqrt(const ScalarField & a);
ScalarField sin(const ScalarField & a);
ScalarField cos(const ScalarField & a);
ScalarField pow(const ScalarField & a, double exponent);

/// d f / d x^axis as a new field.
ScalarField derivative(const ScalarField & f, int axis);

/// Chart that results from combining two fields; throws UsageError on mismatch.
ChartPtr common_chart(const ChartPtr & a, const ChartPtr & b);

class VectorField
{
public:
  VectorField() = default;
  VectorField(ChartPtr chart, std::vector<ScalarField> components);

  const ChartPtr & chart() const { return chart_; }
  int dim() const { return static_cast<int>(components_.size()); }
  const ScalarField & operator[](int i) const { return components_[static_cast<std::size_t>(i)]; }
  const std::vector<ScalarField> & components() const { return components_; }

  Vec value(const Vec & x) const;

private:
  ChartPtr chart_;
  std::vector<ScalarField> components_;
};

VectorField operator+(const VectorField & a, const VectorField & b);
VectorField operator-(const VectorField & a, const VectorField & b);
VectorField operator*(const ScalarField & f, const VectorField & v);

/// The coordinate vector field d/dx^axis.
VectorField coordinate_field(const ChartPtr & chart, int axis);

}  // namespace geo3
