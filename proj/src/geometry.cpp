#include "geo3/geometry.hpp"

#include "geo3/errors.hpp"

#include <sstream>

namespace geo3 {

namespace {

constexpr double kEigenvalueFloor = 1e-12;

using Jet1d = Jet1<double>;
using Jet2d = Jet2<double>;

}  // namespace

// --- MetricField -----------------------------------------------------------

MetricField::MetricField(ChartPtr chart, const std::vector<ScalarField> & entries) : chart_(std::move(chart))
{
  const int n = dim();
  if (static_cast<int>(entries.size()) != n * n) {
    throw UsageError("metric needs dim*dim entries on chart " + chart_->id());
  }
  entries_.resize(entries.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      const auto & e = entries[static_cast<std::size_t>(a * n + b)];
      common_chart(chart_, e.chart());
      entries_[static_cast<std::size_t>(a * n + b)] = e;
      entries_[static_cast<std::size_t>(b * n + a)] = e;
    }
  }
}

MetricField MetricField::euclidean(const ChartPtr & chart)
{
  return diagonal(chart, std::vector<ScalarField>(static_cast<std::size_t>(chart->dim()), ScalarField(1.0)));
}

MetricField MetricField::diagonal(const ChartPtr & chart, const std::vector<ScalarField> & diag)
{
  const int n = chart->dim();
  std::vector<ScalarField> e(static_cast<std::size_t>(n * n), ScalarField(0.0));
  for (int a = 0; a < n; ++a) { e[static_cast<std::size_t>(a * n + a)] = diag[static_cast<std::size_t>(a)]; }
  return MetricField(chart, e);
}

Mat MetricField::value(const ChartPoint & p) const
{
  const int n = dim();
  Mat g(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      g(a, b) = g(b, a) = eval_value((*this)(a, b), p);
    }
  }
  return g;
}

double MetricField::inner(const Vec & u, const Vec & v, const ChartPoint & p) const
{
  return u.dot(value(p) * v);
}

ScalarField MetricField::inner(const VectorField & u, const VectorField & v) const
{
  ScalarField acc(0.0);
  for (int a = 0; a < dim(); ++a) {
    for (int b = 0; b < dim(); ++b) { acc = acc + (*this)(a, b) * u[a] * v[b]; }
  }
  return acc;
}

double MetricField::min_eigenvalue(const ChartPoint & p) const
{
  const Eigen::MatrixXd g = value(p);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void MetricField::require_positive_definite(const ChartPoint & p) const
{
  const double lambda = min_eigenvalue(p);
  if (!(lambda > kEigenvalueFloor)) {
    std::ostringstream os;
    os << "metric on chart " << p.chart_id() << " is degenerate at point (";
    for (int i = 0; i < p.dim(); ++i) { os << (i ? ", " : "") << p[i]; }
    os << "): smallest eigenvalue " << lambda;
    throw InvariantViolation(os.str());
  }
}

// --- FrameField ------------------------------------------------------------

FrameField::FrameField(std::array<VectorField, 3> e, MetricField metric, int orientation)
: e_(std::move(e)), metric_(std::move(metric)), orientation_(orientation >= 0 ? 1 : -1)
{
  for (const auto & v : e_) {
    common_chart(metric_.chart(), v.chart());
    if (v.dim() != metric_.dim()) { throw UsageError("frame vector dimension mismatch"); }
  }
}

Eigen::Matrix<double, Eigen::Dynamic, 3, 0, kMaxDim, 3> FrameField::values(const ChartPoint & p) const
{
  Eigen::Matrix<double, Eigen::Dynamic, 3, 0, kMaxDim, 3> m(metric_.dim(), 3);
  for (int i = 0; i < 3; ++i) { m.col(i) = eval_vector(e_[static_cast<std::size_t>(i)], p); }
  return m;
}

double FrameField::orthonormality_defect(const ChartPoint & p) const
{
  const auto e = values(p);
  const Eigen::Matrix3d gram = e.transpose() * metric_.value(p) * e;
  return (gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
}

int FrameField::orientation_at(const ChartPoint & p) const
{
  const auto e = values(p);
  double det = 0.0;
  if (e.rows() == 3) {
    det = Eigen::Matrix3d(e).determinant();
  } else {
    Eigen::Matrix4d m;
    m.col(0) = p.coords();
    m.rightCols<3>() = e;
    det = m.determinant();
  }
  return det >= 0.0 ? 1 : -1;
}

FrameField rotate_frame(const FrameField & frame, const Eigen::Matrix3d & a)
{
  std::array<VectorField, 3> out;
  for (int i = 0; i < 3; ++i) {
    VectorField acc = ScalarField(a(i, 0)) * frame[0];
    for (int j = 1; j < 3; ++j) { acc = acc + ScalarField(a(i, j)) * frame[j]; }
    out[static_cast<std::size_t>(i)] = acc;
  }
  const int sign = a.determinant() >= 0.0 ? 1 : -1;
  return FrameField(std::move(out), frame.metric(), sign * frame.orientation());
}

// --- Structure functions and connection -------------------------------------

StructureFunctions structure_functions(const FrameField & frame, const ChartPoint & p)
{
  const auto & metric = frame.metric();
  const int n = metric.dim();
  metric.require_positive_definite(p);

  const double defect = frame.orthonormality_defect(p);
  if (defect > kOrthonormalityTolerance) {
    std::ostringstream os;
    os << "frame is not orthonormal at point of chart " << p.chart_id() << " (defect " << defect << ")";
    throw InvariantViolation(os.str());
  }

  std::array<std::vector<Jet2d>, 3> e;
  for (int i = 0; i < 3; ++i) {
    for (int a = 0; a < n; ++a) { e[static_cast<std::size_t>(i)].push_back(eval_jet(frame[i][a], p)); }
  }
  std::vector<Jet1d> g(static_cast<std::size_t>(n * n));
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      g[static_cast<std::size_t>(a * n + b)] = g[static_cast<std::size_t>(b * n + a)] =
        eval_jet(metric(a, b), p).first();
    }
  }
  auto comp = [&](int i, int a) -> const Jet2d & {
    return e[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
  };

  const Mat gv = metric.value(p);
  StructureFunctions s;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      std::vector<Jet1d> br(static_cast<std::size_t>(n), Jet1d(0.0, n));
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          br[static_cast<std::size_t>(a)] += comp(i, b).first() * comp(j, a).partial(b);
          br[static_cast<std::size_t>(a)] -= comp(j, b).first() * comp(i, a).partial(b);
        }
      }
      Vec rest(n);
      for (int a = 0; a < n; ++a) { rest(a) = br[static_cast<std::size_t>(a)].value(); }
      for (int k = 0; k < 3; ++k) {
        Jet1d ck(0.0, n);
        for (int a = 0; a < n; ++a) {
          for (int b = 0; b < n; ++b) {
            ck += g[static_cast<std::size_t>(a * n + b)] * br[static_cast<std::size_t>(a)] * comp(k, b).first();
          }
        }
        s.c(i, j, k) = ck.value();
        s.c(j, i, k) = -ck.value();
        for (int l = 0; l < 3; ++l) {
          double d = 0.0;
          for (int a = 0; a < n; ++a) { d += comp(l, a).value() * ck.gradient()(a); }
          s.along_frame(l, i, j, k) = d;
          s.along_frame(l, j, i, k) = -d;
        }
        for (int a = 0; a < n; ++a) { rest(a) -= ck.value() * comp(k, a).value(); }
      }
      s.residual = std::max(s.residual, std::sqrt(std::max(0.0, rest.dot(gv * rest))));
    }
  }
  return s;
}

ConnectionCoefficients koszul_connection(const StructureFunctions & s)
{
  ConnectionCoefficients out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        out.gamma(i, j, k) = 0.5 * (s.c(i, j, k) - s.c(j, k, i) + s.c(k, i, j));
        for (int l = 0; l < 3; ++l) {
          out.along_frame(l, i, j, k) =
            0.5 * (s.along_frame(l, i, j, k) - s.along_frame(l, j, k, i) + s.along_frame(l, k, i, j));
        }
      }
    }
  }
  return out;
}

ConnectionDefects connection_defects(const ConnectionCoefficients & G, const StructureFunctions & s)
{
  ConnectionDefects d;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        d.metric_compatibility = std::max(d.metric_compatibility, std::abs(G.gamma(i, j, k) + G.gamma(i, k, j)));
        d.torsion = std::max(d.torsion, std::abs(G.gamma(i, j, k) - G.gamma(j, i, k) - s.c(i, j, k)));
      }
    }
  }
  return d;
}

// --- Curvature --------------------------------------------------------------

CurvatureTensor riemann_from(const StructureFunctions & s, const ConnectionCoefficients & G)
{
  // op(i,j,k,m): e_m-component of R(e_i,e_j) e_k
  FrameTensor<4> op;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int m = 0; m < 3; ++m) {
          double v = G.along_frame(i, j, k, m) - G.along_frame(j, i, k, m);
          for (int l = 0; l < 3; ++l) {
            v += G.gamma(j, k, l) * G.gamma(i, l, m) - G.gamma(i, k, l) * G.gamma(j, l, m) -
                 s.c(i, j, l) * G.gamma(l, k, m);
          }
          op(i, j, k, m) = v;
        }
      }
    }
  }
  CurvatureTensor R;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        for (int d = 0; d < 3; ++d) { R.r(a, b, c, d) = op(c, d, b, a); }
      }
    }
  }
  return R;
}

CurvatureTensor riemann_frame(const FrameField & frame, const ChartPoint & p)
{
  const auto s = structure_functions(frame, p);
  return riemann_from(s, koszul_connection(s));
}

Eigen::Matrix3d ricci(const CurvatureTensor & R)
{
  Eigen::Matrix3d ric = Eigen::Matrix3d::Zero();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int i = 0; i < 3; ++i) { ric(a, b) += R(b, i, a, i); }
    }
  }
  return ric;
}

Eigen::Matrix3d ricci_frame(const FrameField & frame, const ChartPoint & p)
{
  return ricci(riemann_frame(frame, p));
}

double CurvatureSymmetryDefects::max() const
{
  return std::max({antisymmetry_first, antisymmetry_second, pair_symmetry, bianchi});
}

CurvatureSymmetryDefects curvature_symmetry_defects(const CurvatureTensor & R)
{
  CurvatureSymmetryDefects d;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) {
          const double v = R(i, j, k, l);
          d.antisymmetry_first = std::max(d.antisymmetry_first, std::abs(v + R(j, i, k, l)));
          d.antisymmetry_second = std::max(d.antisymmetry_second, std::abs(v + R(i, j, l, k)));
          d.pair_symmetry = std::max(d.pair_symmetry, std::abs(v - R(k, l, i, j)));
          d.bianchi = std::max(d.bianchi, std::abs(v + R(i, k, l, j) + R(i, l, j, k)));
        }
      }
    }
  }
  return d;
}

CurvatureTensor curvature_from_sectional(double k01, double k02, double k12)
{
  CurvatureTensor R;
  const double k[3][3] = {{0.0, k01, k02}, {k01, 0.0, k12}, {k02, k12, 0.0}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) { continue; }
      R.r(i, j, i, j) = k[i][j];
      R.r(i, j, j, i) = -k[i][j];
    }
  }
  return R;
}

}  // namespace geo3
