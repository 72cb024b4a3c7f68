#include "geo3/submersion.hpp"

#include "geo3/errors.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace geo3 {

namespace {

std::string describe(const ChartPoint & p)
{
  std::ostringstream os;
  os.precision(17);
  os << p.chart_id() << " (";
  for (int i = 0; i < p.dim(); ++i) { os << (i ? ", " : "") << p[i]; }
  os << ")";
  return os.str();
}

double h_inner(const SubmersionSpec & spec, const ChartPoint & q, const Vec & u, const Vec & v)
{
  return spec.base.metric.inner(u, v, q);
}

// Smallest nonzero-rank test: second singular value of d pi restricted to the
// tangent space, relative to the first.
void require_rank_two(const SubmersionSpec & spec, const ChartPoint & p)
{
  const Mat J = differential(spec, p);
  Mat onto = J;
  if (p.chart()->kind() == Chart::Kind::AmbientSphere) { onto = J * spec.total.frame.values(p); }
  Eigen::JacobiSVD<Mat> svd(onto);
  const auto & s = svd.singularValues();
  const double scale = std::max(1.0, s(0));
  if (s.size() < 2 || !(s(1) > 1e-8 * scale)) {
    std::ostringstream os;
    os << "differential of " << spec.id << " has rank below 2 at " << describe(p);
    throw StructuralFailure(os.str());
  }
}

// Natural frame from the map alone, before orientation.
std::array<VectorField, 3> gram_schmidt_fields(const SubmersionSpec & spec)
{
  const auto & chart = spec.total.chart;
  if (chart->kind() != Chart::Kind::Coordinate || chart->dim() != 3 || spec.map.size() != 2) {
    throw UsageError("spec " + spec.id + " needs a closed-form frame");
  }
  const MetricField & g = spec.total.metric();
  std::array<std::array<ScalarField, 3>, 2> grad;
  for (int a = 0; a < 2; ++a) {
    for (int i = 0; i < 3; ++i) {
      grad[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] = derivative(spec.map[static_cast<std::size_t>(a)], i);
    }
  }
  auto G = [&](int i, int j) { return g(i, j); };
  // adj(g) is a positive multiple of g^{-1}, so adj(g) d pi^a is a horizontal lift direction.
  std::array<std::array<ScalarField, 3>, 3> adj;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = G(r0, c0) * G(r1, c1) - G(r0, c1) * G(r1, c0);
    }
  }
  auto lift = [&](int a) {
    std::vector<ScalarField> comp;
    for (int i = 0; i < 3; ++i) {
      const auto & row = adj[static_cast<std::size_t>(i)];
      const auto & d = grad[static_cast<std::size_t>(a)];
      comp.push_back(row[0] * d[0] + row[1] * d[1] + row[2] * d[2]);
    }
    return VectorField(chart, comp);
  };
  auto unit = [&](const VectorField & v) { return (1.0 / sqrt(g.inner(v, v))) * v; };

  const auto & d1 = grad[0];
  const auto & d2 = grad[1];
  const VectorField kernel(chart, {d1[1] * d2[2] - d1[2] * d2[1], d1[2] * d2[0] - d1[0] * d2[2],
                                   d1[0] * d2[1] - d1[1] * d2[0]});
  const VectorField e1 = unit(lift(0));
  const VectorField h2 = lift(1);
  const VectorField e2 = unit(h2 - g.inner(h2, e1) * e1);
  return {e1, e2, unit(kernel)};
}

DataValues data_from_brackets(const FrameTensor<3> & c)
{
  DataValues d;
  d.f1 = c(0, 1, 0);
  d.f2 = c(0, 1, 1);
  d.sigma = -0.5 * c(0, 1, 2);
  d.f3 = c(0, 2, 1);
  d.kappa1 = c(0, 2, 2);
  d.kappa2 = c(1, 2, 2);
  return d;
}

DataValues data_along(const FrameTensor<4> & along, int a)
{
  DataValues d;
  d.f1 = along(a, 0, 1, 0);
  d.f2 = along(a, 0, 1, 1);
  d.sigma = -0.5 * along(a, 0, 1, 2);
  d.f3 = along(a, 0, 2, 1);
  d.kappa1 = along(a, 0, 2, 2);
  d.kappa2 = along(a, 1, 2, 2);
  return d;
}

IntegrabilityData data_from_structure(const StructureFunctions & s)
{
  IntegrabilityData out;
  out.value = data_from_brackets(s.c);
  for (int a = 0; a < 3; ++a) { out.along[static_cast<std::size_t>(a)] = data_along(s.along_frame, a); }
  const double r0 = s.c(0, 2, 0);
  const double r1 = s.c(1, 2, 1);
  const double r2 = s.c(0, 2, 1) + s.c(1, 2, 0);
  out.residual = std::sqrt(r0 * r0 + r1 * r1 + r2 * r2 + s.residual * s.residual);
  return out;
}

void require_natural(const IntegrabilityData & d, const ChartPoint & p)
{
  if (!(d.residual <= kNaturalFrameTolerance)) {
    std::ostringstream os;
    os << "frame is not natural at " << describe(p) << ": bracket residual " << d.residual;
    throw InvariantViolation(os.str());
  }
}

double max_abs_diff(const DataValues & a, const DataValues & b)
{
  return std::max({std::abs(a.f1 - b.f1), std::abs(a.f2 - b.f2), std::abs(a.f3 - b.f3),
                   std::abs(a.kappa1 - b.kappa1), std::abs(a.kappa2 - b.kappa2), std::abs(a.sigma - b.sigma)});
}

double tension_norm(const SubmersionSpec & spec, const ChartPoint & p, const ConnectionCoefficients & G,
                    const FrameField & frame, Vec * components)
{
  const auto e = frame.values(p);
  Vec v = Vec::Zero(e.rows());
  for (int k = 0; k < 3; ++k) { v += G.gamma(2, 2, k) * e.col(k); }
  const Vec tau = -push_forward(spec, p, v);
  if (components) { *components = tau; }
  const ChartPoint q = project(spec, p);
  return std::sqrt(std::max(0.0, h_inner(spec, q, tau, tau)));
}

}  // namespace

// --- Differential -------------------------------------------------------------

Mat differential(const SubmersionSpec & spec, const ChartPoint & p)
{
  const int k = static_cast<int>(spec.map.size());
  Mat J(k, p.dim());
  for (int a = 0; a < k; ++a) { J.row(a) = eval_jet(spec.map[static_cast<std::size_t>(a)], p).gradient().transpose(); }
  return J;
}

ChartPoint project(const SubmersionSpec & spec, const ChartPoint & p)
{
  Vec y(static_cast<int>(spec.map.size()));
  for (int a = 0; a < y.size(); ++a) { y(a) = eval_value(spec.map[static_cast<std::size_t>(a)], p); }
  return ChartPoint(spec.base.chart, y);
}

Vec push_forward(const SubmersionSpec & spec, const ChartPoint & p, const Vec & v)
{
  return differential(spec, p) * v;
}

// --- Validation -------------------------------------------------------------------

double SubmersionValidation::max() const
{
  return std::max({vertical, unit_norm, orthogonality, frame});
}

SubmersionValidation validate_submersion(const SubmersionSpec & spec, std::span<const ChartPoint> points)
{
  SubmersionValidation r;
  for (const auto & p : points) {
    require_rank_two(spec, p);
    const FrameField frame = natural_frame(spec, p);
    const auto e = frame.values(p);
    const Mat J = differential(spec, p);
    const ChartPoint q = project(spec, p);
    const Vec d1 = J * e.col(0);
    const Vec d2 = J * e.col(1);
    const Vec d3 = J * e.col(2);
    const double n1 = std::sqrt(h_inner(spec, q, d1, d1));
    const double n2 = std::sqrt(h_inner(spec, q, d2, d2));
    r.vertical = std::max(r.vertical, std::sqrt(std::max(0.0, h_inner(spec, q, d3, d3))));
    r.unit_norm = std::max({r.unit_norm, std::abs(n1 - 1.0), std::abs(n2 - 1.0)});
    r.orthogonality = std::max(r.orthogonality, std::abs(h_inner(spec, q, d1, d2)));
    r.frame = std::max(r.frame, frame.orthonormality_defect(p));
    r.max_norm_e1 = std::max(r.max_norm_e1, n1);
    r.max_norm_e2 = std::max(r.max_norm_e2, n2);
    ++r.points;
  }
  return r;
}

// --- Frames -----------------------------------------------------------------------

FrameField natural_frame(const SubmersionSpec & spec, const ChartPoint & p)
{
  if (spec.closed_form_frame) { return *spec.closed_form_frame; }
  require_rank_two(spec, p);
  auto e = gram_schmidt_fields(spec);
  const MetricField & g = spec.total.metric();
  const double along = g.inner(eval_vector(e[2], p), eval_vector(spec.canonical_vertical, p), p);
  if (along < 0.0) { e[2] = ScalarField(-1.0) * e[2]; }
  return FrameField(e, g);
}

FrameField rotate_horizontal(const FrameField & frame, double angle)
{
  Eigen::Matrix3d a = Eigen::Matrix3d::Identity();
  a(0, 0) = std::cos(angle);
  a(0, 1) = std::sin(angle);
  a(1, 0) = -std::sin(angle);
  a(1, 1) = std::cos(angle);
  return rotate_frame(frame, a);
}

// --- Integrability data -----------------------------------------------------------

IntegrabilityData integrability_data(const FrameField & frame, const ChartPoint & p)
{
  IntegrabilityData d = data_from_structure(structure_functions(frame, p));
  require_natural(d, p);
  return d;
}

IntegrabilityData closed_form_integrability_data(
  const SubmersionSpec & spec, const FrameField & frame, const ChartPoint & p)
{
  if (!spec.closed_form_data) { throw UsageError("spec " + spec.id + " has no closed-form integrability data"); }
  const ClosedFormData & c = *spec.closed_form_data;
  auto fill = [&](auto && eval) {
    DataValues d;
    d.f1 = eval(c.f1);
    d.f2 = eval(c.f2);
    d.f3 = eval(c.f3);
    d.kappa1 = eval(c.kappa1);
    d.kappa2 = eval(c.kappa2);
    d.sigma = eval(c.sigma);
    return d;
  };
  IntegrabilityData out;
  out.value = fill([&](const ScalarField & f) { return eval_value(f, p); });
  for (int a = 0; a < 3; ++a) {
    out.along[static_cast<std::size_t>(a)] =
      fill([&](const ScalarField & f) { return directional_derivative(frame[a], f, p); });
  }
  return out;
}

// --- Tension and harmonicity -----------------------------------------------------

TensionField tension_field(const SubmersionSpec & spec, const FrameField & frame, const ChartPoint & p)
{
  const auto s = structure_functions(frame, p);
  const auto G = koszul_connection(s);
  TensionField t;
  t.norm = tension_norm(spec, p, G, frame, &t.components);
  return t;
}

TensionField tension_field(const SubmersionSpec & spec, const ChartPoint & p)
{
  return tension_field(spec, natural_frame(spec, p), p);
}

std::string to_string(Verdict v)
{
  switch (v) {
    case Verdict::Harmonic: return "harmonic";
    case Verdict::NonHarmonic: return "non-harmonic";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

Verdict classify_kappa(double max_kappa, const HarmonicTolerances & tol)
{
  if (max_kappa >= tol.obstruction) { return Verdict::NonHarmonic; }
  if (tol.harmonic < std::numeric_limits<double>::epsilon()) { return Verdict::Inconclusive; }
  if (max_kappa <= tol.harmonic) { return Verdict::Harmonic; }
  return Verdict::Inconclusive;
}

HarmonicVerdict is_harmonic(const SubmersionSpec & spec, std::span<const ChartPoint> points, const HarmonicTolerances & tol)
{
  HarmonicVerdict v;
  for (const auto & p : points) {
    const FrameField frame = natural_frame(spec, p);
    const auto s = structure_functions(frame, p);
    const IntegrabilityData d = data_from_structure(s);
    require_natural(d, p);
    v.max_kappa = std::max({v.max_kappa, std::abs(d.value.kappa1), std::abs(d.value.kappa2)});
    v.max_tension = std::max(v.max_tension, tension_norm(spec, p, koszul_connection(s), frame, nullptr));
    ++v.points;
  }
  v.verdict = classify_kappa(v.max_kappa, tol);
  return v;
}

double energy_density(const SubmersionSpec & spec, const ChartPoint & p)
{
  const auto e = spec.total.frame.values(p);
  const Mat J = differential(spec, p);
  const ChartPoint q = project(spec, p);
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Vec d = J * e.col(i);
    sum += h_inner(spec, q, d, d);
  }
  return 0.5 * sum;
}

double base_gauss_curvature(const IntegrabilityData & d)
{
  const DataValues & v = d.value;
  double k = d.d(0).f2 - d.d(1).f1 - v.f1 * v.f1 - v.f2 * v.f2;
  if (v.f3 != 0.0) { k += 2.0 * v.f3 * v.sigma; }
  return k;
}

double base_gauss_curvature(const SubmersionSpec & spec, const ChartPoint & p)
{
  const FrameField frame = natural_frame(spec, p);
  if (spec.closed_form_data) { return base_gauss_curvature(closed_form_integrability_data(spec, frame, p)); }
  return base_gauss_curvature(integrability_data(frame, p));
}

// --- Curvature identities ------------------------------------------------------------

std::array<double, 7> curvature_from_data(const IntegrabilityData & d)
{
  const DataValues & v = d.value;
  const DataValues & e1 = d.d(0);
  const DataValues & e2 = d.d(1);
  const DataValues & e3 = d.d(2);
  return {
    -e1.sigma + 2.0 * v.kappa1 * v.sigma,
    e1.kappa1 + v.sigma * v.sigma - v.kappa1 * v.kappa1 + v.kappa2 * v.f1,
    e1.kappa2 - e3.sigma - v.kappa1 * v.f1 - v.kappa1 * v.kappa2,
    e1.f2 - e2.f1 - v.f1 * v.f1 - v.f2 * v.f2 + 2.0 * v.f3 * v.sigma - 3.0 * v.sigma * v.sigma,
    -e2.sigma + 2.0 * v.kappa2 * v.sigma,
    e2.kappa1 + e3.sigma + v.kappa2 * v.f2 - v.kappa1 * v.kappa2,
    v.sigma * v.sigma + e2.kappa2 - v.kappa1 * v.f2 - v.kappa2 * v.kappa2,
  };
}

std::array<double, 7> harmonic_system_targets(const IntegrabilityData & d)
{
  const double s = d.value.sigma;
  const double kn = base_gauss_curvature(d);
  return {-d.d(0).sigma, s * s, -d.d(2).sigma, kn - 3.0 * s * s, -d.d(1).sigma, d.d(2).sigma, s * s};
}

double IdentityReport::rc_overall() const
{
  return *std::max_element(rc_max.begin(), rc_max.end());
}

double IdentityReport::rc0_overall() const
{
  return *std::max_element(rc0_max.begin(), rc0_max.end());
}

IdentityReport identity_report(const SubmersionSpec & spec, std::span<const ChartPoint> points, const IdentityOptions & options)
{
  IdentityReport rep;
  rep.records.reserve(points.size());
  rep.sigma_min_abs = std::numeric_limits<double>::infinity();
  rep.kn_min = rep.sigma_sq_min = std::numeric_limits<double>::infinity();
  rep.kn_max = rep.sigma_sq_max = -std::numeric_limits<double>::infinity();
  double kn_sum = 0.0;
  const bool rotated = options.horizontal_angle != 0.0;

  for (const auto & p : points) {
    FrameField frame = natural_frame(spec, p);
    if (rotated) { frame = rotate_horizontal(frame, options.horizontal_angle); }
    const auto s = structure_functions(frame, p);
    const IntegrabilityData engine = data_from_structure(s);
    require_natural(engine, p);
    const auto G = koszul_connection(s);
    const auto R = riemann_from(s, G);

    PointRecord rec;
    rec.coords = p.coords();
    rec.frame_residual = engine.residual;
    IntegrabilityData ref = engine;
    if (spec.closed_form_data && !rotated) {
      ref = closed_form_integrability_data(spec, frame, p);
      rec.data_agreement = max_abs_diff(ref.value, engine.value);
      for (int a = 0; a < 3; ++a) { rec.data_agreement = std::max(rec.data_agreement, max_abs_diff(ref.d(a), engine.d(a))); }
    }

    const SevenComponents lhs = seven_components(R);
    const auto rhs = curvature_from_data(ref);
    const auto target = harmonic_system_targets(ref);
    for (std::size_t i = 0; i < 7; ++i) {
      rec.rc[i] = std::abs(lhs[i] - rhs[i]);
      rec.rc0[i] = std::abs(lhs[i] - target[i]);
    }
    rec.rc0[7] = std::abs(ref.d(2).sigma);
    rec.data = ref.value;
    rec.gauss_curvature = base_gauss_curvature(ref);
    rec.tension = tension_norm(spec, p, G, frame, nullptr);

    for (std::size_t i = 0; i < 7; ++i) { rep.rc_max[i] = std::max(rep.rc_max[i], rec.rc[i]); }
    for (std::size_t i = 0; i < 8; ++i) { rep.rc0_max[i] = std::max(rep.rc0_max[i], rec.rc0[i]); }
    rep.verdict.max_kappa = std::max({rep.verdict.max_kappa, std::abs(engine.value.kappa1), std::abs(engine.value.kappa2)});
    rep.verdict.max_tension = std::max(rep.verdict.max_tension, rec.tension);
    ++rep.verdict.points;
    const double sig2 = ref.value.sigma * ref.value.sigma;
    rep.sigma_min_abs = std::min(rep.sigma_min_abs, std::abs(ref.value.sigma));
    rep.sigma_sq_min = std::min(rep.sigma_sq_min, sig2);
    rep.sigma_sq_max = std::max(rep.sigma_sq_max, sig2);
    rep.kn_min = std::min(rep.kn_min, rec.gauss_curvature);
    rep.kn_max = std::max(rep.kn_max, rec.gauss_curvature);
    kn_sum += rec.gauss_curvature;
    rep.data_agreement = std::max(rep.data_agreement, rec.data_agreement);
    rep.frame_residual = std::max(rep.frame_residual, rec.frame_residual);
    rep.records.push_back(std::move(rec));
  }
  if (rep.records.empty()) { throw UsageError("identity report needs at least one point"); }
  rep.kn_mean = kn_sum / static_cast<double>(rep.records.size());
  rep.verdict.verdict = classify_kappa(rep.verdict.max_kappa, options.tolerances);
  return rep;
}

IdentityReport curvature_identity_residuals(const SubmersionSpec & spec, std::span<const ChartPoint> points)
{
  return identity_report(spec, points);
}

IdentityReport harmonic_system_residuals(const SubmersionSpec & spec, std::span<const ChartPoint> points)
{
  return identity_report(spec, points);
}

}  // namespace geo3
