#pragma once

// Truncated Taylor jets for forward-mode differentiation of scalar fields.
//
// Jet1 carries (value, gradient); Jet2 additionally carries the Hessian.
// Both are templated on the scalar type and sized at runtime up to four
// variables, which covers the 3-dimensional coordinate charts and the
// ambient 4-coordinate representation of the 3-sphere.

#include <Eigen/Core>

#include <cassert>
#include <cmath>

namespace geo3 {

inline constexpr int kMaxDim = 4;

template <typename Scalar>
using DimVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, 0, kMaxDim, 1>;

template <typename Scalar>
using DimMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

using Vec = DimVector<double>;
using Mat = DimMatrix<double>;

template <typename Scalar>
class Jet1
{
public:
  using Vector = DimVector<Scalar>;

  Jet1() = default;

  Jet1(Scalar value, int dim) : value_(value), grad_(Vector::Zero(dim)) {}

  Jet1(Scalar value, Vector grad) : value_(value), grad_(std::move(grad)) {}

  static Jet1 variable(Scalar value, int index, int dim)
  {
    Jet1 j(value, dim);
    j.grad_(index) = Scalar(1);
    return j;
  }

  int dim() const { return static_cast<int>(grad_.size()); }
  const Scalar & value() const { return value_; }
  const Vector & gradient() const { return grad_; }

  Jet1 & operator+=(const Jet1 & o)
  {
    value_ += o.value_;
    grad_ += o.grad_;
    return *this;
  }

  Jet1 & operator-=(const Jet1 & o)
  {
    value_ -= o.value_;
    grad_ -= o.grad_;
    return *this;
  }

  Jet1 & operator*=(const Jet1 & o)
  {
    grad_ = o.value_ * grad_ + value_ * o.grad_;
    value_ *= o.value_;
    return *this;
  }

  Jet1 & operator*=(Scalar s)
  {
    value_ *= s;
    grad_ *= s;
    return *this;
  }

  // Applies a smooth univariate function given f(u), f'(u).
  Jet1 chain(Scalar f, Scalar df) const { return Jet1(f, (df * grad_).eval()); }

private:
  Scalar value_{0};
  Vector grad_;
};

template <typename Scalar>
Jet1<Scalar> operator+(Jet1<Scalar> a, const Jet1<Scalar> & b) { return a += b; }
template <typename Scalar>
Jet1<Scalar> operator-(Jet1<Scalar> a, const Jet1<Scalar> & b) { return a -= b; }
template <typename Scalar>
Jet1<Scalar> operator*(Jet1<Scalar> a, const Jet1<Scalar> & b) { return a *= b; }
template <typename Scalar>
Jet1<Scalar> operator*(Jet1<Scalar> a, Scalar s) { return a *= s; }
template <typename Scalar>
Jet1<Scalar> operator*(Scalar s, Jet1<Scalar> a) { return a *= s; }
template <typename Scalar>
Jet1<Scalar> operator-(const Jet1<Scalar> & a) { return a * Scalar(-1); }

/// Second-order jet: value, gradient and symmetric Hessian.
template <typename Scalar>
class Jet2
{
public:
  using Vector = DimVector<Scalar>;
  using Matrix = DimMatrix<Scalar>;

  Jet2() = default;

  Jet2(Scalar value, int dim)
  : value_(value), grad_(Vector::Zero(dim)), hess_(Matrix::Zero(dim, dim))
  {}

  /// Symmetrizes the Hessian on construction.
  Jet2(Scalar value, Vector grad, const Matrix & hess)
  : value_(value), grad_(std::move(grad)), hess_((hess + hess.transpose()) * Scalar(0.5))
  {
    assert(grad_.size() == hess_.rows() && hess_.rows() == hess_.cols());
  }

  static Jet2 variable(Scalar value, int index, int dim)
  {
    Jet2 j(value, dim);
    j.grad_(index) = Scalar(1);
    return j;
  }

  int dim() const { return static_cast<int>(grad_.size()); }
  const Scalar & value() const { return value_; }
  const Vector & gradient() const { return grad_; }
  const Matrix & hessian() const { return hess_; }

  /// (f, grad f) truncated to first order.
  Jet1<Scalar> first() const { return Jet1<Scalar>(value_, grad_); }

  /// (d_i f, grad d_i f): the first-order jet of a partial derivative.
  Jet1<Scalar> partial(int i) const
  {
    return Jet1<Scalar>(grad_(i), Vector(hess_.row(i).transpose()));
  }

  Jet2 & operator+=(const Jet2 & o)
  {
    value_ += o.value_;
    grad_ += o.grad_;
    hess_ += o.hess_;
    return *this;
  }

  Jet2 & operator-=(const Jet2 & o)
  {
    value_ -= o.value_;
    grad_ -= o.grad_;
    hess_ -= o.hess_;
    return *this;
  }

  Jet2 & operator*=(const Jet2 & o)
  {
    const Matrix cross = grad_ * o.grad_.transpose();
    hess_ = o.value_ * hess_ + value_ * o.hess_ + cross + cross.transpose();
    grad_ = o.value_ * grad_ + value_ * o.grad_;
    value_ *= o.value_;
    return *this;
  }

  Jet2 & operator*=(Scalar s)
  {
    value_ *= s;
    grad_ *= s;
    hess_ *= s;
    return *this;
  }

  Jet2 & operator+=(Scalar s)
  {
    value_ += s;
    return *this;
  }

  /// Composition with a univariate function given f(u), f'(u), f''(u).
  Jet2 chain(Scalar f, Scalar df, Scalar d2f) const
  {
    Jet2 r;
    r.value_ = f;
    r.grad_ = df * grad_;
    r.hess_ = df * hess_ + d2f * (grad_ * grad_.transpose());
    return r;
  }

private:
  Scalar value_{0};
  Vector grad_;
  Matrix hess_;
};

template <typename Scalar>
Jet2<Scalar> operator+(Jet2<Scalar> a, const Jet2<Scalar> & b) { return a += b; }
template <typename Scalar>
Jet2<Scalar> operator-(Jet2<Scalar> a, const Jet2<Scalar> & b) { return a -= b; }
template <typename Scalar>
Jet2<Scalar> operator*(Jet2<Scalar> a, const Jet2<Scalar> & b) { return a *= b; }
template <typename Scalar>
Jet2<Scalar> operator*(Jet2<Scalar> a, Scalar s) { return a *= s; }
template <typename Scalar>
Jet2<Scalar> operator*(Scalar s, Jet2<Scalar> a) { return a *= s; }
template <typename Scalar>
Jet2<Scalar> operator+(Jet2<Scalar> a, Scalar s) { return a += s; }
template <typename Scalar>
Jet2<Scalar> operator-(const Jet2<Scalar> & a) { return a * Scalar(-1); }

template <typename Scalar>
Jet2<Scalar> reciprocal(const Jet2<Scalar> & a)
{
  const Scalar u = a.value();
  const Scalar inv = Scalar(1) / u;
  return a.chain(inv, -inv * inv, Scalar(2) * inv * inv * inv);
}

template <typename Scalar>
Jet2<Scalar> operator/(const Jet2<Scalar> & a, const Jet2<Scalar> & b)
{
  return a * reciprocal(b);
}

template <typename Scalar>
Jet2<Scalar> exp(const Jet2<Scalar> & a)
{
  using std::exp;
  const Scalar e = exp(a.value());
  return a.chain(e, e, e);
}

template <typename Scalar>
Jet2<Scalar> log(const Jet2<Scalar> & a)
{
  using std::log;
  const Scalar u = a.value();
  return a.chain(log(u), Scalar(1) / u, Scalar(-1) / (u * u));
}

template <typename Scalar>
Jet2<Scalar> sqrt(const Jet2<Scalar> & a)
{
  using std::sqrt;
  const Scalar s = sqrt(a.value());
  return a.chain(s, Scalar(0.5) / s, Scalar(-0.25) / (s * a.value()));
}

template <typename Scalar>
Jet2<Scalar> sin(const Jet2<Scalar> & a)
{
  using std::cos, std::sin;
  const Scalar s = sin(a.value());
  return a.chain(s, cos(a.value()), -s);
}

template <typename Scalar>
Jet2<Scalar> cos(const Jet2<Scalar> & a)
{
  using std::cos, std::sin;
  const Scalar c = cos(a.value());
  return a.chain(c, -sin(a.value()), -c);
}

/// u^k for a constant real exponent; the base must be positive unless k is integral.
template <typename Scalar>
Jet2<Scalar> pow(const Jet2<Scalar> & a, Scalar k)
{
  using std::pow;
  const Scalar u = a.value();
  // Non-negative integral exponents must not produce 0 * inf at u = 0.
  const bool integral = k >= 0 && k == std::floor(k);
  const Scalar df = (integral && k < 1) ? Scalar(0) : k * pow(u, k - 1);
  const Scalar d2f = (integral && k < 2) ? Scalar(0) : k * (k - 1) * pow(u, k - 2);
  return a.chain(pow(u, k), df, d2f);
}

}  // namespace geo3
