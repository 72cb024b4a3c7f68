#pragma once

// Metrics, orthonormal frames and frame-based curvature.
//
// Index conventions (0-based in code, frame vectors e_0, e_1, e_2):
//   [e_i, e_j]        = sum_k c(i,j,k) e_k
//   nabla_{e_i} e_j   = sum_k gamma(i,j,k) e_k
//   R(X,Y)Z           = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
//   r(i,j,k,l)        = R(e_i,e_j,e_k,e_l) = g(R(e_k,e_l) e_j, e_i)
//   Ric(X,Y)          = sum_i R(Y,e_i,X,e_i)

#include "geo3/calculus.hpp"
#include "geo3/chart.hpp"
#include "geo3/field.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>

namespace geo3 {

/// Dense table indexed by Rank frame indices in {0,1,2}.
template <int Rank>
class FrameTensor
{
public:
  static constexpr int kSize = Rank == 1 ? 3 : Rank == 2 ? 9 : Rank == 3 ? 27 : 81;

  FrameTensor() { data_.fill(0.0); }

  template <typename... I>
  double & operator()(I... idx)
  {
    static_assert(sizeof...(I) == Rank);
    return data_[offset(idx...)];
  }

  template <typename... I>
  double operator()(I... idx) const
  {
    static_assert(sizeof...(I) == Rank);
    return data_[offset(idx...)];
  }

  const std::array<double, kSize> & data() const { return data_; }
  std::array<double, kSize> & data() { return data_; }

  /// Largest absolute entrywise difference.
  double max_abs_diff(const FrameTensor & o) const
  {
    double m = 0.0;
    for (int i = 0; i < kSize; ++i) { m = std::max(m, std::abs(data_[i] - o.data_[i])); }
    return m;
  }

private:
  template <typename... I>
  static int offset(I... idx)
  {
    int off = 0;
    ((off = off * 3 + static_cast<int>(idx)), ...);
    return off;
  }

  std::array<double, kSize> data_;
};

class MetricField
{
public:
  MetricField() = default;

  /// `entries` holds the dim x dim matrix row-major; only the upper triangle is read.
  MetricField(ChartPtr chart, const std::vector<ScalarField> & entries);

  static MetricField euclidean(const ChartPtr & chart);

  /// Diagonal metric from per-coordinate coefficients.
  static MetricField diagonal(const ChartPtr & chart, const std::vector<ScalarField> & diag);

  const ChartPtr & chart() const { return chart_; }
  int dim() const { return chart_ ? chart_->dim() : 0; }
  const ScalarField & operator()(int a, int b) const
  {
    return entries_[static_cast<std::size_t>(a * dim() + b)];
  }

  Mat value(const ChartPoint & p) const;

  double inner(const Vec & u, const Vec & v, const ChartPoint & p) const;

  /// g(u, v) as a composed field.
  ScalarField inner(const VectorField & u, const VectorField & v) const;

  /// Smallest eigenvalue at p.
  double min_eigenvalue(const ChartPoint & p) const;

  /// Throws InvariantViolation unless the smallest eigenvalue exceeds 1e-12.
  void require_positive_definite(const ChartPoint & p) const;

private:
  ChartPtr chart_;
  std::vector<ScalarField> entries_;
};

/// Ordered orthonormal triple of vector fields.
class FrameField
{
public:
  FrameField() = default;
  FrameField(std::array<VectorField, 3> e, MetricField metric, int orientation = 1);

  const VectorField & operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  const std::array<VectorField, 3> & vectors() const { return e_; }
  const MetricField & metric() const { return metric_; }
  const ChartPtr & chart() const { return metric_.chart(); }
  int orientation() const { return orientation_; }

  /// Frame vectors at p as the columns of a dim x 3 matrix.
  Eigen::Matrix<double, Eigen::Dynamic, 3, 0, kMaxDim, 3> values(const ChartPoint & p) const;

  /// max_{ij} |g(e_i, e_j) - delta_ij| at p.
  double orthonormality_defect(const ChartPoint & p) const;

  /// Sign of det[e_0 e_1 e_2] (coordinate charts) or det[x e_0 e_1 e_2] (ambient sphere).
  int orientation_at(const ChartPoint & p) const;

private:
  std::array<VectorField, 3> e_;
  MetricField metric_;
  int orientation_{1};
};

/// The frame e'_i = sum_j a(i,j) e_j for a constant matrix a.
FrameField rotate_frame(const FrameField & frame, const Eigen::Matrix3d & a);

struct StructureFunctions
{
  FrameTensor<3> c;            ///< c(i,j,k), antisymmetric in (i,j)
  FrameTensor<4> along_frame;  ///< along_frame(l,i,j,k) = e_l(c(i,j,k))
  double residual{0.0};        ///< g-norm of the bracket part outside span{e_k}
};

struct ConnectionCoefficients
{
  FrameTensor<3> gamma;        ///< gamma(i,j,k) = g(nabla_{e_i} e_j, e_k)
  FrameTensor<4> along_frame;  ///< along_frame(l,i,j,k) = e_l(gamma(i,j,k))
};

struct CurvatureTensor
{
  FrameTensor<4> r;  ///< r(i,j,k,l) = g(R(e_k,e_l) e_j, e_i)

  double operator()(int i, int j, int k, int l) const { return r(i, j, k, l); }
};

struct CurvatureSymmetryDefects
{
  double antisymmetry_first{0.0};   ///< |R_ijkl + R_jikl|
  double antisymmetry_second{0.0};  ///< |R_ijkl + R_ijlk|
  double pair_symmetry{0.0};        ///< |R_ijkl - R_klij|
  double bianchi{0.0};              ///< |R_ijkl + R_iklj + R_iljk|

  double max() const;
};

struct ConnectionDefects
{
  double metric_compatibility{0.0};  ///< |gamma(i,j,k) + gamma(i,k,j)|
  double torsion{0.0};               ///< |gamma(i,j,k) - gamma(j,i,k) - c(i,j,k)|
};

/// Frame orthonormality tolerance used by `structure_functions`.
inline constexpr double kOrthonormalityTolerance = 1e-9;

/// Decomposes [e_i, e_j](p) in the frame via the metric, with frame
/// derivatives of every coefficient. Throws InvariantViolation when the frame
/// is not orthonormal at p or the metric is degenerate.
StructureFunctions structure_functions(const FrameField & frame, const ChartPoint & p);

/// Orthonormal-frame Koszul formula gamma_ij^k = (c_ij^k - c_jk^i + c_ki^j) / 2.
ConnectionCoefficients koszul_connection(const StructureFunctions & c);

ConnectionDefects connection_defects(const ConnectionCoefficients & gamma, const StructureFunctions & c);

/// Curvature from the connection, its frame derivatives and the brackets.
CurvatureTensor riemann_from(const StructureFunctions & c, const ConnectionCoefficients & gamma);

CurvatureTensor riemann_frame(const FrameField & frame, const ChartPoint & p);

Eigen::Matrix3d ricci(const CurvatureTensor & R);

Eigen::Matrix3d ricci_frame(const FrameField & frame, const ChartPoint & p);

CurvatureSymmetryDefects curvature_symmetry_defects(const CurvatureTensor & R);

/// Full curvature table of a frame that diagonalizes the curvature operator,
/// from the three sectional curvatures K(e_0,e_1), K(e_0,e_2), K(e_1,e_2).
CurvatureTensor curvature_from_sectional(double k01, double k02, double k12);

}  // namespace geo3
