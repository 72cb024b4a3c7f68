#include "geo3/spaces.hpp"

#include "geo3/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace geo3 {

namespace {

std::string format_param(double v)
{
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

FrameTensor<3> antisymmetric_brackets(double c012, double c120, double c201)
{
  FrameTensor<3> c;
  c(0, 1, 2) = c012;
  c(1, 0, 2) = -c012;
  c(1, 2, 0) = c120;
  c(2, 1, 0) = -c120;
  c(2, 0, 1) = c201;
  c(0, 2, 1) = -c201;
  return c;
}

}  // namespace

// --- BCV -------------------------------------------------------------------

SpaceDescriptor bcv_space(const BCVParams & params)
{
  const double m = params.m;
  const double l = params.l;
  auto domain = [m](const Vec & v) { return 1.0 + m * (v(0) * v(0) + v(1) * v(1)) > 0.0; };
  auto margin = [m](const Vec & v) { return 1.0 + m * (v(0) * v(0) + v(1) * v(1)) >= 0.05; };
  auto chart = Chart::coordinate(
    "bcv(m=" + format_param(m) + ",l=" + format_param(l) + ")", {"x", "y", "z"}, domain,
    {Vec::Constant(3, -1.0), Vec::Constant(3, 1.0), margin});

  auto x = ScalarField::coordinate(chart, 0);
  auto y = ScalarField::coordinate(chart, 1);
  const ScalarField F = 1.0 + m * (x * x + y * y);

  // g = (dx^2 + dy^2) / F^2 + theta^2, theta = dz + (l/2)(y dx - x dy) / F
  const ScalarField tx = 0.5 * l * y / F;
  const ScalarField ty = -0.5 * l * x / F;
  const ScalarField inv_f2 = 1.0 / (F * F);
  MetricField metric(chart, {inv_f2 + tx * tx, tx * ty, tx,
                             tx * ty, inv_f2 + ty * ty, ty,
                             tx, ty, 1.0});

  const VectorField E1(chart, {F, 0.0, -0.5 * l * y});
  const VectorField E2(chart, {0.0, F, 0.5 * l * x});
  const VectorField E3(chart, {0.0, 0.0, 1.0});

  SpaceDescriptor s;
  s.id = "bcv";
  s.name = "M^3_{m,l} = " + case_geometry(classify_bcv(params));
  s.params = params;
  s.chart = chart;
  s.frame = FrameField({E1, E2, E3}, metric);

  s.expected.brackets = [m, l](const ChartPoint & p) {
    FrameTensor<3> c;
    const double xv = p[0], yv = p[1];
    c(0, 1, 0) = -2.0 * m * yv;
    c(0, 1, 1) = 2.0 * m * xv;
    c(0, 1, 2) = l;
    for (int k = 0; k < 3; ++k) { c(1, 0, k) = -c(0, 1, k); }
    return c;
  };
  s.expected.connection = [m, l](const ChartPoint & p) {
    FrameTensor<3> G;
    const double xv = p[0], yv = p[1];
    G(0, 0, 1) = 2.0 * m * yv;   // nabla_E1 E1 = 2my E2
    G(1, 1, 0) = 2.0 * m * xv;   // nabla_E2 E2 = 2mx E1
    G(0, 1, 0) = -2.0 * m * yv;  // nabla_E1 E2 = -2my E1 + l/2 E3
    G(0, 1, 2) = 0.5 * l;
    G(1, 0, 1) = -2.0 * m * xv;  // nabla_E2 E1 = -2mx E2 - l/2 E3
    G(1, 0, 2) = -0.5 * l;
    G(2, 0, 1) = -0.5 * l;       // nabla_E3 E1 = nabla_E1 E3 = -l/2 E2
    G(0, 2, 1) = -0.5 * l;
    G(2, 1, 0) = 0.5 * l;        // nabla_E3 E2 = nabla_E2 E3 = l/2 E1
    G(1, 2, 0) = 0.5 * l;
    return G;
  };
  s.expected.curvature = [m, l](const ChartPoint &) {
    return curvature_from_sectional(4.0 * m - 0.75 * l * l, 0.25 * l * l, 0.25 * l * l);
  };
  s.expected.ricci = [m, l](const ChartPoint &) {
    Eigen::Matrix3d r = Eigen::Matrix3d::Zero();
    r(0, 0) = r(1, 1) = 4.0 * m - 0.5 * l * l;
    r(2, 2) = 0.5 * l * l;
    return r;
  };
  return s;
}

// --- Berger ----------------------------------------------------------------

std::array<VectorField, 3> hopf_parallelization(const ChartPtr & s3)
{
  auto x = [&](int i) { return ScalarField::coordinate(s3, i - 1); };
  return {
    VectorField(s3, {-x(2), x(1), -x(4), x(3)}),
    VectorField(s3, {-x(4), -x(3), x(2), x(1)}),
    VectorField(s3, {-x(3), x(4), x(1), -x(2)}),
  };
}

SpaceDescriptor berger_space(const BergerParams & params)
{
  const double eps = params.epsilon;
  if (eps == 0.0 || !std::isfinite(eps)) {
    throw UsageError("Berger sphere parameter eps must be finite and non-zero");
  }
  auto chart = Chart::ambient_sphere("berger(eps=" + format_param(eps) + ")");
  const auto X = hopf_parallelization(chart);

  // g_eps(u, v) = u.v + (eps^2 - 1)(u.X1)(v.X1): unchanged on the horizontal
  // space, scaled by eps^2 along the Hopf fibres.
  std::vector<ScalarField> g(16);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      g[static_cast<std::size_t>(a * 4 + b)] = (a == b ? 1.0 : 0.0) + (eps * eps - 1.0) * X[0][a] * X[0][b];
    }
  }
  MetricField metric(chart, g);

  SpaceDescriptor s;
  s.id = "berger";
  s.name = "S^3_eps";
  s.params = params;
  s.chart = chart;
  s.frame = FrameField({X[1], X[2], ScalarField(1.0 / eps) * X[0]}, metric);

  s.expected.brackets = [eps](const ChartPoint &) {
    return antisymmetric_brackets(2.0 * eps, 2.0 / eps, 2.0 / eps);
  };
  s.expected.connection = [eps](const ChartPoint &) {
    FrameTensor<3> G;
    const double t = (2.0 - eps * eps) / eps;
    G(0, 1, 2) = eps;   // nabla_E1 E2 = eps E3
    G(0, 2, 1) = -eps;  // nabla_E1 E3 = -eps E2
    G(1, 0, 2) = -eps;  // nabla_E2 E1 = -eps E3
    G(1, 2, 0) = eps;   // nabla_E2 E3 = eps E1
    G(2, 0, 1) = t;     // nabla_E3 E1 = (2 - eps^2)/eps E2
    G(2, 1, 0) = -t;    // nabla_E3 E2 = -(2 - eps^2)/eps E1
    return G;
  };
  s.expected.curvature = [eps](const ChartPoint &) {
    return curvature_from_sectional(4.0 - 3.0 * eps * eps, eps * eps, eps * eps);
  };
  s.expected.ricci = [eps](const ChartPoint &) {
    Eigen::Matrix3d r = Eigen::Matrix3d::Zero();
    r(0, 0) = r(1, 1) = 4.0 - 2.0 * eps * eps;
    r(2, 2) = 2.0 * eps * eps;
    return r;
  };
  return s;
}

// --- Classification -----------------------------------------------------------

BCVCase classify_bcv(const BCVParams & p)
{
  const double m = p.m, l = p.l;
  if (m == 0.0 && l == 0.0) { return BCVCase::R3; }
  if (4.0 * m == l * l && m > 0.0) { return BCVCase::S3; }
  if (m > 0.0 && l == 0.0) { return BCVCase::S2xR; }
  if (m < 0.0 && l == 0.0) { return BCVCase::H2xR; }
  if (m > 0.0) { return BCVCase::SU2; }
  if (m < 0.0) { return BCVCase::SL2R; }
  return BCVCase::Nil;
}

std::string case_label(BCVCase c)
{
  switch (c) {
    case BCVCase::R3: return "(a)";
    case BCVCase::S3: return "(b)";
    case BCVCase::S2xR: return "(c)";
    case BCVCase::H2xR: return "(d)";
    case BCVCase::SU2: return "(e)";
    case BCVCase::SL2R: return "(f)";
    case BCVCase::Nil: return "(g)";
  }
  return "?";
}

std::string case_geometry(BCVCase c)
{
  switch (c) {
    case BCVCase::R3: return "R^3";
    case BCVCase::S3: return "S^3";
    case BCVCase::S2xR: return "S^2xR";
    case BCVCase::H2xR: return "H^2xR";
    case BCVCase::SU2: return "SU(2)";
    case BCVCase::SL2R: return "SL~(2,R)";
    case BCVCase::Nil: return "Nil";
  }
  return "?";
}

// --- Rotated frames ----------------------------------------------------------

FrameRotation::FrameRotation(const Eigen::Matrix3d & a) : a_(a)
{
  const double defect = (a * a.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff();
  if (!(defect <= 1e-12)) {
    std::ostringstream os;
    os << "frame rotation is not orthogonal (|a a^T - I| = " << defect << ")";
    throw InvariantViolation(os.str());
  }
}

FrameRotation FrameRotation::identity() { return FrameRotation(Eigen::Matrix3d::Identity()); }

FrameRotation FrameRotation::plane(int i, int j, double angle)
{
  Eigen::Matrix3d a = Eigen::Matrix3d::Identity();
  const double c = std::cos(angle), s = std::sin(angle);
  a(i, i) = c;
  a(i, j) = s;
  a(j, i) = -s;
  a(j, j) = c;
  return FrameRotation(a);
}

SevenComponents seven_components(const CurvatureTensor & R)
{
  return {R(0, 2, 0, 1), R(0, 2, 0, 2), R(0, 2, 1, 2), R(0, 1, 0, 1),
          R(0, 1, 1, 2), R(1, 2, 0, 2), R(1, 2, 1, 2)};
}

SevenComponents rotated_closed_form(const FrameRotation & a, double rigidity, double constant_term)
{
  const double a1 = a.vertical_coefficient(0);
  const double a2 = a.vertical_coefficient(1);
  const double a3 = a.vertical_coefficient(2);
  const double R = rigidity;
  const double c = constant_term;
  return {-a2 * a3 * R, a2 * a2 * R + c, -a1 * a2 * R, a3 * a3 * R + c,
          a1 * a3 * R, -a1 * a2 * R, a1 * a1 * R + c};
}

RotatedFrameReport rotated_frame_check(
  const SpaceDescriptor & space, const FrameRotation & rotation, std::span<const ChartPoint> points)
{
  double rigidity = 0.0, constant = 0.0;
  if (const auto * b = std::get_if<BCVParams>(&space.params)) {
    rigidity = b->rigidity_constant();
    constant = 0.25 * b->l * b->l;
  } else if (const auto * e = std::get_if<BergerParams>(&space.params)) {
    rigidity = e->rigidity_constant();
    constant = e->epsilon * e->epsilon;
  } else {
    throw UsageError("rotated frame check needs a BCV or Berger space, got " + space.id);
  }

  const FrameField rotated = rotate_frame(space.frame, rotation.matrix());
  const SevenComponents expected = rotated_closed_form(rotation, rigidity, constant);
  RotatedFrameReport report;
  for (const auto & p : points) {
    const SevenComponents got = seven_components(riemann_frame(rotated, p));
    for (std::size_t i = 0; i < got.size(); ++i) {
      const double d = std::abs(got[i] - expected[i]);
      report.max_deviation[i] = std::max(report.max_deviation[i], d);
      report.max = std::max(report.max, d);
    }
    ++report.points;
  }
  return report;
}

// --- Table verification ------------------------------------------------------

double TableReport::max_table_deviation() const
{
  return std::max({bracket_deviation, connection_deviation, curvature_deviation, ricci_deviation});
}

TableReport verify_connection_tables(const SpaceDescriptor & space, std::span<const ChartPoint> points)
{
  const auto & ex = space.expected;
  if (!ex.brackets || !ex.connection || !ex.curvature || !ex.ricci) {
    throw UsageError("space " + space.id + " has no closed-form tables");
  }
  TableReport r;
  for (const auto & p : points) {
    const auto s = structure_functions(space.frame, p);
    const auto G = koszul_connection(s);
    const auto R = riemann_from(s, G);
    const Eigen::Matrix3d ric = ricci(R);

    r.bracket_deviation = std::max(r.bracket_deviation, s.c.max_abs_diff(ex.brackets(p)));
    r.connection_deviation = std::max(r.connection_deviation, G.gamma.max_abs_diff(ex.connection(p)));
    r.curvature_deviation = std::max(r.curvature_deviation, R.r.max_abs_diff(ex.curvature(p).r));
    r.ricci_deviation = std::max(r.ricci_deviation, (ric - ex.ricci(p)).cwiseAbs().maxCoeff());

    const auto cd = connection_defects(G, s);
    r.connection_defect = std::max({r.connection_defect, cd.metric_compatibility, cd.torsion});
    r.symmetry_defect = std::max(r.symmetry_defect, curvature_symmetry_defects(R).max());
    r.decomposition_residual = std::max(r.decomposition_residual, s.residual);
    ++r.points;
  }
  return r;
}

// --- Vertical-direction rigidity -------------------------------------------------

std::vector<Eigen::Vector3d> fibonacci_sphere(std::size_t n)
{
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(n);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

bool RigiditySolution::only_poles(double tol) const
{
  if (clusters.size() != 2) { return false; }
  return clusters[0].z() >= 1.0 - tol && clusters[1].z() <= -1.0 + tol;
}

RigiditySolution vertical_direction_solver(double rigidity, double constant_term, const RigidityOptions & opt)
{
  RigiditySolution sol;
  const auto grid = fibonacci_sphere(opt.grid_points);
  sol.grid_size = grid.size();

  // With rigidity 0 the direction constraints are identically satisfied.
  const bool vacuous = std::abs(rigidity) <= 1e-12;
  sol.rigid = !vacuous;

  std::vector<Eigen::Vector3d> admissible;
  for (const auto & a : grid) {
    const double a1 = a.x(), a2 = a.y();
    const bool consistent = a2 * a2 * rigidity + constant_term >= -opt.tolerance;
    const bool directional =
      vacuous || (std::abs(a1 * a1 - a2 * a2) <= opt.tolerance && std::abs(a1 * a2) <= opt.tolerance);
    if (consistent && directional) { admissible.push_back(a); }
  }
  sol.admissible = admissible.size();
  if (vacuous) { return sol; }

  // Single-linkage clustering.
  std::vector<int> label(admissible.size(), -1);
  int next = 0;
  for (std::size_t seed = 0; seed < admissible.size(); ++seed) {
    if (label[seed] >= 0) { continue; }
    label[seed] = next;
    std::vector<std::size_t> stack{seed};
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < admissible.size(); ++j) {
        if (label[j] < 0 && (admissible[i] - admissible[j]).norm() <= opt.cluster_radius) {
          label[j] = next;
          stack.push_back(j);
        }
      }
    }
    ++next;
  }
  std::vector<Eigen::Vector3d> sums(static_cast<std::size_t>(next), Eigen::Vector3d::Zero());
  for (std::size_t i = 0; i < admissible.size(); ++i) { sums[static_cast<std::size_t>(label[i])] += admissible[i]; }
  for (auto & c : sums) {
    if (c.norm() > 0.0) { sol.clusters.push_back(c.normalized()); }
  }
  std::sort(sol.clusters.begin(), sol.clusters.end(),
            [](const Eigen::Vector3d & u, const Eigen::Vector3d & v) { return u.z() > v.z(); });
  return sol;
}

}  // namespace geo3
