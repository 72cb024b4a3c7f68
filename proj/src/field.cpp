#include "geo3/field.hpp"

#include "geo3/errors.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace geo3 {

enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Exp, Log, Sqrt, Sin, Cos, Pow };

struct ScalarField::Node
{
  Op op{Op::Const};
  double constant{0.0};  // Const value, or Pow exponent
  int index{0};          // Var coordinate index
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

namespace {

using NodePtr = std::shared_ptr<const ScalarField::Node>;

NodePtr make_const(double c)
{
  auto n = std::make_shared<ScalarField::Node>();
  n->op = Op::Const;
  n->constant = c;
  return n;
}

bool is_const(const NodePtr & n, double c) { return n->op == Op::Const && n->constant == c; }

NodePtr make_unary(Op op, NodePtr a, double k = 0.0)
{
  if (a->op == Op::Const) {
    const double u = a->constant;
    switch (op) {
      case Op::Neg: return make_const(-u);
      case Op::Exp: return make_const(std::exp(u));
      case Op::Log: return make_const(std::log(u));
      case Op::Sqrt: return make_const(std::sqrt(u));
      case Op::Sin: return make_const(std::sin(u));
      case Op::Cos: return make_const(std::cos(u));
      case Op::Pow: return make_const(std::pow(u, k));
      default: break;
    }
  }
  if (op == Op::Pow && k == 1.0) { return a; }
  if (op == Op::Pow && k == 0.0) { return make_const(1.0); }
  if (op == Op::Neg && a->op == Op::Neg) { return a->a; }
  auto n = std::make_shared<ScalarField::Node>();
  n->op = op;
  n->constant = k;
  n->a = std::move(a);
  return n;
}

NodePtr make_binary(Op op, NodePtr a, NodePtr b)
{
  if (a->op == Op::Const && b->op == Op::Const) {
    const double u = a->constant;
    const double v = b->constant;
    switch (op) {
      case Op::Add: return make_const(u + v);
      case Op::Sub: return make_const(u - v);
      case Op::Mul: return make_const(u * v);
      case Op::Div: return make_const(u / v);
      default: break;
    }
  }
  switch (op) {
    case Op::Add:
      if (is_const(a, 0.0)) { return b; }
      if (is_const(b, 0.0)) { return a; }
      break;
    case Op::Sub:
      if (is_const(b, 0.0)) { return a; }
      if (is_const(a, 0.0)) { return make_unary(Op::Neg, b); }
      break;
    case Op::Mul:
      if (is_const(a, 0.0) || is_const(b, 0.0)) { return make_const(0.0); }
      if (is_const(a, 1.0)) { return b; }
      if (is_const(b, 1.0)) { return a; }
      if (is_const(a, -1.0)) { return make_unary(Op::Neg, b); }
      if (is_const(b, -1.0)) { return make_unary(Op::Neg, a); }
      break;
    case Op::Div:
      if (is_const(a, 0.0)) { return make_const(0.0); }
      if (is_const(b, 1.0)) { return a; }
      break;
    default: break;
  }
  auto n = std::make_shared<ScalarField::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

class ValueEval
{
public:
  explicit ValueEval(const Vec & x) : x_(x) {}

  double operator()(const NodePtr & n)
  {
    if (n->op == Op::Const) { return n->constant; }
    if (n->op == Op::Var) { return x_(n->index); }
    if (auto it = memo_.find(n.get()); it != memo_.end()) { return it->second; }
    double r = 0.0;
    switch (n->op) {
      case Op::Add: r = (*this)(n->a) + (*this)(n->b); break;
      case Op::Sub: r = (*this)(n->a) - (*this)(n->b); break;
      case Op::Mul: r = (*this)(n->a) * (*this)(n->b); break;
      case Op::Div: r = (*this)(n->a) / (*this)(n->b); break;
      case Op::Neg: r = -(*this)(n->a); break;
      case Op::Exp: r = std::exp((*this)(n->a)); break;
      case Op::Log: r = std::log((*this)(n->a)); break;
      case Op::Sqrt: r = std::sqrt((*this)(n->a)); break;
      case Op::Sin: r = std::sin((*this)(n->a)); break;
      case Op::Cos: r = std::cos((*this)(n->a)); break;
      case Op::Pow: r = std::pow((*this)(n->a), n->constant); break;
      default: break;
    }
    memo_.emplace(n.get(), r);
    return r;
  }

private:
  const Vec & x_;
  std::unordered_map<const ScalarField::Node *, double> memo_;
};

class JetEval
{
public:
  explicit JetEval(const Vec & x) : x_(x), dim_(static_cast<int>(x.size())) {}

  const Jet2<double> & operator()(const NodePtr & n)
  {
    if (auto it = memo_.find(n.get()); it != memo_.end()) { return it->second; }
    Jet2<double> r;
    switch (n->op) {
      case Op::Const: r = Jet2<double>(n->constant, dim_); break;
      case Op::Var: r = Jet2<double>::variable(x_(n->index), n->index, dim_); break;
      case Op::Add: r = (*this)(n->a) + (*this)(n->b); break;
      case Op::Sub: r = (*this)(n->a) - (*this)(n->b); break;
      case Op::Mul: r = (*this)(n->a) * (*this)(n->b); break;
      case Op::Div: r = (*this)(n->a) / (*this)(n->b); break;
      case Op::Neg: r = -(*this)(n->a); break;
      case Op::Exp: r = exp((*this)(n->a)); break;
      case Op::Log: r = log((*this)(n->a)); break;
      case Op::Sqrt: r = sqrt((*this)(n->a)); break;
      case Op::Sin: r = sin((*this)(n->a)); break;
      case Op::Cos: r = cos((*this)(n->a)); break;
      case Op::Pow: r = pow((*this)(n->a), n->constant); break;
    }
    return memo_.emplace(n.get(), std::move(r)).first->second;
  }

private:
  const Vec & x_;
  int dim_;
  std::unordered_map<const ScalarField::Node *, Jet2<double>> memo_;
};

class Differentiator
{
public:
  explicit Differentiator(int axis) : axis_(axis) {}

  NodePtr operator()(const NodePtr & n)
  {
    if (auto it = memo_.find(n.get()); it != memo_.end()) { return it->second; }
    NodePtr r;
    const auto & u = n->a;
    const auto & v = n->b;
    switch (n->op) {
      case Op::Const: r = make_const(0.0); break;
      case Op::Var: r = make_const(n->index == axis_ ? 1.0 : 0.0); break;
      case Op::Add: r = make_binary(Op::Add, (*this)(u), (*this)(v)); break;
      case Op::Sub: r = make_binary(Op::Sub, (*this)(u), (*this)(v)); break;
      case Op::Mul:
        r = make_binary(
          Op::Add, make_binary(Op::Mul, (*this)(u), v), make_binary(Op::Mul, u, (*this)(v)));
        break;
      case Op::Div: {
        // (u/v)' = u'/v - u v' / v^2
        auto first = make_binary(Op::Div, (*this)(u), v);
        auto second = make_binary(
          Op::Div, make_binary(Op::Mul, u, (*this)(v)), make_binary(Op::Mul, v, v));
        r = make_binary(Op::Sub, first, second);
        break;
      }
      case Op::Neg: r = make_unary(Op::Neg, (*this)(u)); break;
      case Op::Exp: r = make_binary(Op::Mul, n, (*this)(u)); break;
      case Op::Log: r = make_binary(Op::Div, (*this)(u), u); break;
      case Op::Sqrt:
        r = make_binary(Op::Div, (*this)(u), make_binary(Op::Mul, make_const(2.0), n));
        break;
      case Op::Sin: r = make_binary(Op::Mul, make_unary(Op::Cos, u), (*this)(u)); break;
      case Op::Cos:
        r = make_unary(Op::Neg, make_binary(Op::Mul, make_unary(Op::Sin, u), (*this)(u)));
        break;
      case Op::Pow: {
        const double k = n->constant;
        auto dpow = make_binary(Op::Mul, make_const(k), make_unary(Op::Pow, u, k - 1.0));
        r = make_binary(Op::Mul, dpow, (*this)(u));
        break;
      }
    }
    memo_.emplace(n.get(), r);
    return r;
  }

private:
  int axis_;
  std::unordered_map<const ScalarField::Node *, NodePtr> memo_;
};

}  // namespace

ChartPtr common_chart(const ChartPtr & a, const ChartPtr & b)
{
  if (!a) { return b; }
  if (!b) { return a; }
  if (a != b && a->id() != b->id()) {
    throw UsageError("fields live on different charts: " + a->id() + " vs " + b->id());
  }
  return a;
}

ScalarField::ScalarField() : node_(make_const(0.0)) {}

ScalarField::ScalarField(double constant) : node_(make_const(constant)) {}

ScalarField::ScalarField(std::shared_ptr<const Node> node, ChartPtr chart)
: node_(std::move(node)), chart_(std::move(chart))
{}

ScalarField ScalarField::coordinate(const ChartPtr & chart, int index)
{
  if (!chart || index < 0 || index >= chart->dim()) {
    throw UsageError("coordinate index out of range");
  }
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->index = index;
  return ScalarField(std::move(n), chart);
}

bool ScalarField::is_constant() const { return node_->op == Op::Const; }

double ScalarField::constant_value() const
{
  if (!is_constant()) { throw UsageError("field is not constant"); }
  return node_->constant;
}

std::size_t ScalarField::node_count() const
{
  std::unordered_set<const Node *> seen;
  std::vector<const Node *> stack{node_.get()};
  while (!stack.empty()) {
    const Node * n = stack.back();
    stack.pop_back();
    if (!n || !seen.insert(n).second) { continue; }
    stack.push_back(n->a.get());
    stack.push_back(n->b.get());
  }
  return seen.size();
}

double ScalarField::value(const Vec & x) const { return ValueEval(x)(node_); }

Jet2<double> ScalarField::jet(const Vec & x) const { return JetEval(x)(node_); }

ScalarField operator+(const ScalarField & a, const ScalarField & b)
{
  return ScalarField(make_binary(Op::Add, a.node(), b.node()), common_chart(a.chart(), b.chart()));
}

ScalarField operator-(const ScalarField & a, const ScalarField & b)
{
  return ScalarField(make_binary(Op::Sub, a.node(), b.node()), common_chart(a.chart(), b.chart()));
}

ScalarField operator*(const ScalarField & a, const ScalarField & b)
{
  return ScalarField(make_binary(Op::Mul, a.node(), b.node()), common_chart(a.chart(), b.chart()));
}

ScalarField operator/(const ScalarField & a, const ScalarField & b)
{
  return ScalarField(make_binary(Op::Div, a.node(), b.node()), common_chart(a.chart(), b.chart()));
}

ScalarField operator-(const ScalarField & a) { return ScalarField(make_unary(Op::Neg, a.node()), a.chart()); }

ScalarField exp(const ScalarField & a) { return ScalarField(make_unary(Op::Exp, a.node()), a.chart()); }
ScalarField log(const ScalarField & a) { return ScalarField(make_unary(Op::Log, a.node()), a.chart()); }
ScalarField sqrt(const ScalarField & a) { return ScalarField(make_unary(Op::Sqrt, a.node()), a.chart()); }
ScalarField sin(const ScalarField & a) { return ScalarField(make_unary(Op::Sin, a.node()), a.chart()); }
ScalarField cos(const ScalarField & a) { return ScalarField(make_unary(Op::Cos, a.node()), a.chart()); }

ScalarField pow(const ScalarField & a, double exponent)
{
  return ScalarField(make_unary(Op::Pow, a.node(), exponent), a.chart());
}

ScalarField derivative(const ScalarField & f, int axis)
{
  if (f.chart() && (axis < 0 || axis >= f.chart()->dim())) {
    throw UsageError("derivative axis out of range for chart " + f.chart()->id());
  }
  return ScalarField(Differentiator(axis)(f.node()), f.chart());
}

VectorField::VectorField(ChartPtr chart, std::vector<ScalarField> components)
: chart_(std::move(chart)), components_(std::move(components))
{
  if (!chart_ || static_cast<int>(components_.size()) != chart_->dim()) {
    throw UsageError("vector field needs one component per chart coordinate");
  }
  for (const auto & c : components_) { common_chart(chart_, c.chart()); }
}

Vec VectorField::value(const Vec & x) const
{
  Vec v(dim());
  for (int i = 0; i < dim(); ++i) { v(i) = components_[static_cast<std::size_t>(i)].value(x); }
  return v;
}

namespace {

template <typename F>
VectorField combine(const VectorField & a, const VectorField & b, F f)
{
  auto chart = common_chart(a.chart(), b.chart());
  std::vector<ScalarField> out;
  out.reserve(static_cast<std::size_t>(a.dim()));
  for (int i = 0; i < a.dim(); ++i) { out.push_back(f(a[i], b[i])); }
  return VectorField(chart, std::move(out));
}

}  // namespace

VectorField operator+(const VectorField & a, const VectorField & b)
{
  return combine(a, b, [](const ScalarField & u, const ScalarField & v) { return u + v; });
}

VectorField operator-(const VectorField & a, const VectorField & b)
{
  return combine(a, b, [](const ScalarField & u, const ScalarField & v) { return u - v; });
}

VectorField operator*(const ScalarField & f, const VectorField & v)
{
  auto chart = common_chart(f.chart(), v.chart());
  std::vector<ScalarField> out;
  out.reserve(static_cast<std::size_t>(v.dim()));
  for (int i = 0; i < v.dim(); ++i) { out.push_back(f * v[i]); }
  return VectorField(chart, std::move(out));
}

VectorField coordinate_field(const ChartPtr & chart, int axis)
{
  std::vector<ScalarField> c(static_cast<std::size_t>(chart->dim()), ScalarField(0.0));
  c[static_cast<std::size_t>(axis)] = ScalarField(1.0);
  return VectorField(chart, std::move(c));
}

}  // namespace geo3
