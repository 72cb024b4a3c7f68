#include "geo3/catalog.hpp"

#include "geo3/errors.hpp"

#include <cmath>
#include <numbers>

namespace geo3 {

namespace {

// Base surfaces sample the image of the total-space sample box.
ChartPtr plane_chart(std::string id, std::vector<std::string> names, Chart::Predicate domain = {},
                     Chart::SampleBox box = {Vec::Constant(2, -1.0), Vec::Constant(2, 1.0), {}})
{
  if (!domain) {
    domain = [](const Vec &) { return true; };
  }
  return Chart::coordinate(std::move(id), std::move(names), std::move(domain), std::move(box));
}

ChartPtr cube_chart(std::string id, std::vector<std::string> names)
{
  return Chart::coordinate(std::move(id), std::move(names), [](const Vec &) { return true; },
                           {Vec::Constant(3, -1.0), Vec::Constant(3, 1.0), {}});
}

SpaceDescriptor plain_space(std::string id, std::string name, ChartPtr chart, FrameField frame)
{
  SpaceDescriptor s;
  s.id = std::move(id);
  s.name = std::move(name);
  s.chart = std::move(chart);
  s.frame = std::move(frame);
  return s;
}

ChartPtr cylinder_chart()
{
  return Chart::coordinate(
    "cylindrical", {"rho", "z", "theta"}, [](const Vec & v) { return v(0) > 0.0; },
    {make_vec({0.1, -1.0, -std::numbers::pi}), make_vec({2.0, 1.0, std::numbers::pi}), {}});
}

SpaceDescriptor cylindrical_space(const ChartPtr & chart)
{
  auto rho = ScalarField::coordinate(chart, 0);
  const MetricField g = MetricField::diagonal(chart, {1.0, 1.0, rho * rho});
  return plain_space("cylindrical", "R^3 (cylindrical)", chart,
                     FrameField({coordinate_field(chart, 0), coordinate_field(chart, 1),
                                 (1.0 / rho) * coordinate_field(chart, 2)},
                                g));
}

struct EntryBuilder
{
  std::string id;
  std::function<SubmersionSpec(const CatalogParams &)> build;
  bool takes_ml{false};
  bool takes_eps{false};
};

const std::array<std::pair<const char *, BCVParams>, 7> & bcv_cases()
{
  static const std::array<std::pair<const char *, BCVParams>, 7> cases = {{
    {"bcv.cor31.i", {0.0, 0.0}},
    {"bcv.cor31.ii", {0.25, 1.0}},
    {"bcv.cor31.iii", {1.0, 0.0}},
    {"bcv.cor31.iv", {-1.0, 0.0}},
    {"bcv.cor31.v", {1.0, 1.0}},
    {"bcv.cor31.vi", {-1.0, 1.0}},
    {"bcv.cor31.vii", {0.0, 1.0}},
  }};
  return cases;
}

SubmersionSpec product_y()
{
  auto spec = product_projection([](const ScalarField &, const ScalarField & y) { return y; }, "product.example21", -1.0);
  spec.description += ", p = y";
  return spec;
}

SubmersionSpec product_flat()
{
  auto spec = product_projection([](const ScalarField &, const ScalarField &) { return ScalarField(0.0); },
                                 "product.example21.flat", 0.0);
  spec.description += ", p = 0";
  return spec;
}

const std::vector<EntryBuilder> & builders()
{
  static const std::vector<EntryBuilder> list = [] {
    std::vector<EntryBuilder> b;
    b.push_back({"product.example21", [](const CatalogParams &) { return product_y(); }});
    b.push_back({"h2xr.example22", [](const CatalogParams &) { return hyperbolic_product_projection(); }});
    b.push_back({"nil.example23", [](const CatalogParams &) { return nil_projection(); }});
    b.push_back({"cyl.remark21a", [](const CatalogParams &) { return cylinder_axial_projection(); }});
    b.push_back({"cyl.remark21b", [](const CatalogParams &) { return cylinder_planar_projection(); }});
    for (const auto & [id, params] : bcv_cases()) {
      const std::string name = id;
      const BCVParams bp = params;
      b.push_back({name, [name, bp](const CatalogParams &) { return bcv_projection(bp, name); }});
    }
    b.push_back({"berger.hopf", [](const CatalogParams & p) { return hopf_map(p.eps.value_or(0.5)); }, false, true});
    // Lookup-only entries.
    b.push_back({"product.example21.flat", [](const CatalogParams &) { return product_flat(); }});
    b.push_back({"bcv.projection",
                 [](const CatalogParams & p) { return bcv_projection({p.m.value_or(0.0), p.l.value_or(0.0)}); }, true,
                 false});
    return b;
  }();
  return list;
}

constexpr std::size_t kShippedEntries = 13;

}  // namespace

SubmersionSpec bcv_projection(const BCVParams & params, std::string id)
{
  const double m = params.m;
  const double l = params.l;
  SubmersionSpec spec;
  spec.id = std::move(id);
  spec.total = bcv_space(params);
  spec.description = spec.total.name + " -> (R^2, (dx^2 + dy^2)/F^2), (x,y,z) -> (x,y), case " +
                     case_label(classify_bcv(params));
  const auto & chart = spec.total.chart;
  auto x = ScalarField::coordinate(chart, 0);
  auto y = ScalarField::coordinate(chart, 1);

  auto base = plane_chart("bcv-base", {"x", "y"},
                          [m](const Vec & v) { return 1.0 + m * (v(0) * v(0) + v(1) * v(1)) > 0.0; },
                          {Vec::Constant(2, -1.0), Vec::Constant(2, 1.0),
                           [m](const Vec & v) { return 1.0 + m * (v(0) * v(0) + v(1) * v(1)) >= 0.05; }});
  auto u = ScalarField::coordinate(base, 0);
  auto v = ScalarField::coordinate(base, 1);
  const ScalarField F = 1.0 + m * (u * u + v * v);
  const ScalarField w = 1.0 / (F * F);
  spec.base = {base, MetricField::diagonal(base, {w, w})};

  spec.map = {x, y};
  spec.canonical_vertical = coordinate_field(chart, 2);
  spec.closed_form_frame = spec.total.frame;
  spec.closed_form_data = ClosedFormData{-2.0 * m * y, 2.0 * m * x, 0.0, 0.0, 0.0, -0.5 * l};
  spec.expected = {true, 4.0 * m, true};
  return spec;
}

Vec hopf_value(const Vec & x)
{
  return make_vec({x(0) * x(2) + x(1) * x(3), x(1) * x(2) - x(0) * x(3),
                   0.5 * (x(0) * x(0) + x(1) * x(1) - x(2) * x(2) - x(3) * x(3))});
}

SubmersionSpec hopf_map(double eps)
{
  SubmersionSpec spec;
  spec.id = "berger.hopf";
  spec.total = berger_space({eps});
  spec.description = "Hopf map S^3_eps -> S^2(4) (sphere of radius 1/2)";
  const auto & chart = spec.total.chart;
  auto x = [&](int i) { return ScalarField::coordinate(chart, i - 1); };

  auto base = Chart::ambient_sphere2("s2(radius 1/2)", 0.5);
  spec.base = {base, MetricField::euclidean(base)};
  spec.map = {x(1) * x(3) + x(2) * x(4), x(2) * x(3) - x(1) * x(4),
              0.5 * (x(1) * x(1) + x(2) * x(2) - x(3) * x(3) - x(4) * x(4))};

  const auto X = hopf_parallelization(chart);
  const double a = std::abs(eps);
  spec.canonical_vertical = X[0];
  // e3 = X1/|eps| points along X1 whatever the sign of eps.
  spec.closed_form_frame = FrameField({X[1], X[2], ScalarField(1.0 / a) * X[0]}, spec.total.metric());
  spec.closed_form_data = ClosedFormData{0.0, 0.0, -2.0 / a, 0.0, 0.0, -a};
  spec.expected = {true, 4.0, true};
  return spec;
}

SubmersionSpec product_projection(const WarpFunction & p, std::string id, std::optional<double> gauss_curvature)
{
  auto chart = cube_chart("product", {"x", "y", "z"});
  auto x = ScalarField::coordinate(chart, 0);
  auto y = ScalarField::coordinate(chart, 1);
  const ScalarField pt = p(x, y);
  const MetricField g = MetricField::diagonal(chart, {exp(2.0 * pt), 1.0, 1.0});
  const FrameField frame({exp(-pt) * coordinate_field(chart, 0), coordinate_field(chart, 1), coordinate_field(chart, 2)}, g);

  SubmersionSpec spec;
  spec.id = std::move(id);
  spec.description = "warped product (R^3, e^{2p}dx^2 + dy^2 + dz^2) -> (R^2, e^{2p}dx^2 + dy^2), (x,y,z) -> (x,y)";
  spec.total = plain_space("product", "M^2 x R", chart, frame);

  auto base = plane_chart("product-base", {"x", "y"});
  const ScalarField pb = p(ScalarField::coordinate(base, 0), ScalarField::coordinate(base, 1));
  spec.base = {base, MetricField::diagonal(base, {exp(2.0 * pb), 1.0})};
  spec.map = {x, y};
  spec.canonical_vertical = coordinate_field(chart, 2);
  spec.closed_form_frame = frame;
  spec.closed_form_data = ClosedFormData{derivative(pt, 1), 0.0, 0.0, 0.0, 0.0, 0.0};
  spec.expected = {true, gauss_curvature, true};
  return spec;
}

SubmersionSpec hyperbolic_product_projection()
{
  auto chart = cube_chart("h2xr", {"x", "y", "z"});
  auto y = ScalarField::coordinate(chart, 1);
  auto z = ScalarField::coordinate(chart, 2);
  const MetricField g = MetricField::diagonal(chart, {exp(2.0 * y), 1.0, 1.0});

  SubmersionSpec spec;
  spec.id = "h2xr.example22";
  spec.description = "H^2 x R = (R^3, e^{2y}dx^2 + dy^2 + dz^2) -> (R^2, dy^2 + dz^2), (x,y,z) -> (y,z)";
  spec.total = plain_space(
    "h2xr", "H^2 x R", chart,
    FrameField({exp(-y) * coordinate_field(chart, 0), coordinate_field(chart, 1), coordinate_field(chart, 2)}, g));
  auto base = plane_chart("h2xr-base", {"y", "z"});
  spec.base = {base, MetricField::euclidean(base)};
  spec.map = {y, z};
  spec.canonical_vertical = coordinate_field(chart, 0);
  spec.expected = {false, 0.0, false};
  return spec;
}

SubmersionSpec nil_projection()
{
  auto chart = Chart::coordinate(
    "nil", {"x", "y", "z"}, [](const Vec &) { return true; },
    {make_vec({-2.0, -1.0, -1.0}), make_vec({2.0, 1.0, 1.0}), [](const Vec & v) { return std::abs(v(0)) > 0.05; }});
  auto x = ScalarField::coordinate(chart, 0);
  auto z = ScalarField::coordinate(chart, 2);
  const ScalarField q = 1.0 + x * x;
  const ScalarField s = sqrt(q);
  const MetricField g(chart, {1.0, 0.0, 0.0,
                              0.0, q, -x,
                              0.0, -x, 1.0});
  const FrameField frame({coordinate_field(chart, 0), VectorField(chart, {0.0, -x / s, -s}),
                          VectorField(chart, {0.0, 1.0 / s, 0.0})},
                         g);

  SubmersionSpec spec;
  spec.id = "nil.example23";
  spec.description = "Nil = (R^3, dx^2 + dy^2 + (dz - x dy)^2) -> (R^2, dx^2 + dz^2/(1+x^2)), (x,y,z) -> (x,z)";
  SpaceDescriptor total = plain_space(
    "nil", "Nil", chart,
    FrameField({coordinate_field(chart, 0), VectorField(chart, {0.0, 1.0, x}), coordinate_field(chart, 2)}, g));
  spec.total = std::move(total);

  auto base = plane_chart("nil-base", {"x", "z"}, {},
                          {make_vec({-2.0, -1.0}), make_vec({2.0, 1.0}), [](const Vec & v) { return std::abs(v(0)) > 0.05; }});
  auto u = ScalarField::coordinate(base, 0);
  spec.base = {base, MetricField::diagonal(base, {1.0, 1.0 / (1.0 + u * u)})};
  spec.map = {x, z};
  spec.canonical_vertical = coordinate_field(chart, 1);
  spec.closed_form_frame = frame;
  spec.closed_form_data = ClosedFormData{0.0, x / q, 0.0, -x / q, 0.0, (1.0 - x * x) / (2.0 * q)};
  spec.expected = {false, std::nullopt, false};
  return spec;
}

SubmersionSpec cylinder_axial_projection()
{
  auto chart = cylinder_chart();
  auto rho = ScalarField::coordinate(chart, 0);
  auto z = ScalarField::coordinate(chart, 1);

  SubmersionSpec spec;
  spec.id = "cyl.remark21a";
  spec.description = "(R^3, drho^2 + dz^2 + rho^2 dtheta^2) -> (R^2, drho^2 + dz^2), (rho,z,theta) -> (rho,z)";
  spec.total = cylindrical_space(chart);
  auto base = plane_chart("half-plane", {"rho", "z"}, [](const Vec & v) { return v(0) > 0.0; },
                          {make_vec({0.1, -1.0}), make_vec({2.0, 1.0}), {}});
  spec.base = {base, MetricField::euclidean(base)};
  spec.map = {rho, z};
  spec.canonical_vertical = coordinate_field(chart, 2);
  spec.closed_form_frame = spec.total.frame;
  spec.closed_form_data = ClosedFormData{0.0, 0.0, 0.0, -1.0 / rho, 0.0, 0.0};
  spec.expected = {false, 0.0, true};
  return spec;
}

SubmersionSpec cylinder_planar_projection()
{
  auto chart = cylinder_chart();
  auto rho = ScalarField::coordinate(chart, 0);
  auto theta = ScalarField::coordinate(chart, 2);

  SubmersionSpec spec;
  spec.id = "cyl.remark21b";
  spec.description = "(R^3, drho^2 + dz^2 + rho^2 dtheta^2) -> (R^2, drho^2 + rho^2 dtheta^2), (rho,z,theta) -> (rho,theta)";
  spec.total = cylindrical_space(chart);
  auto base = plane_chart("polar-plane", {"rho", "theta"}, [](const Vec & v) { return v(0) > 0.0; },
                          {make_vec({0.1, -std::numbers::pi}), make_vec({2.0, std::numbers::pi}), {}});
  auto r = ScalarField::coordinate(base, 0);
  spec.base = {base, MetricField::diagonal(base, {1.0, r * r})};
  spec.map = {rho, theta};
  spec.canonical_vertical = coordinate_field(chart, 1);
  spec.closed_form_frame = FrameField(
    {coordinate_field(chart, 0), (1.0 / rho) * coordinate_field(chart, 2), coordinate_field(chart, 1)},
    spec.total.metric());
  spec.closed_form_data = ClosedFormData{0.0, -1.0 / rho, 0.0, 0.0, 0.0, 0.0};
  spec.expected = {true, 0.0, true};
  return spec;
}

std::vector<SubmersionSpec> catalog()
{
  std::vector<SubmersionSpec> out;
  for (std::size_t i = 0; i < kShippedEntries; ++i) { out.push_back(builders()[i].build({})); }
  return out;
}

std::vector<std::string> catalog_ids()
{
  std::vector<std::string> ids;
  for (const auto & b : builders()) { ids.push_back(b.id); }
  return ids;
}

SubmersionSpec lookup(const std::string & id, const CatalogParams & params)
{
  for (const auto & b : builders()) {
    if (b.id != id) { continue; }
    if ((params.m || params.l) && !b.takes_ml) { throw UsageError("entry " + id + " takes no --m/--l parameters"); }
    if (params.eps && !b.takes_eps) { throw UsageError("entry " + id + " takes no --eps parameter"); }
    return b.build(params);
  }
  throw UsageError("unknown catalog id: " + id);
}

std::vector<NamedField> scalar_fields(const SubmersionSpec & spec)
{
  std::vector<NamedField> out;
  auto add = [&](const std::string & name, const ScalarField & f) {
    if (!f.is_constant()) { out.push_back({name, f}); }
  };
  auto add_metric = [&](const std::string & name, const MetricField & g) {
    for (int a = 0; a < g.dim(); ++a) {
      for (int b = a; b < g.dim(); ++b) { add(name + "[" + std::to_string(a) + "," + std::to_string(b) + "]", g(a, b)); }
    }
  };
  auto add_frame = [&](const std::string & name, const FrameField & f) {
    for (int i = 0; i < 3; ++i) {
      for (int a = 0; a < f[i].dim(); ++a) {
        add(name + ".e" + std::to_string(i + 1) + "[" + std::to_string(a) + "]", f[i][a]);
      }
    }
  };
  add_metric("g", spec.total.metric());
  add_frame("total_frame", spec.total.frame);
  if (spec.closed_form_frame) { add_frame("natural_frame", *spec.closed_form_frame); }
  for (std::size_t a = 0; a < spec.map.size(); ++a) { add("map[" + std::to_string(a) + "]", spec.map[a]); }
  for (int a = 0; a < spec.canonical_vertical.dim(); ++a) { add("vertical[" + std::to_string(a) + "]", spec.canonical_vertical[a]); }
  add_metric("h", spec.base.metric);
  if (spec.closed_form_data) {
    const auto & c = *spec.closed_form_data;
    add("f1", c.f1);
    add("f2", c.f2);
    add("f3", c.f3);
    add("kappa1", c.kappa1);
    add("kappa2", c.kappa2);
    add("sigma", c.sigma);
  }
  return out;
}

}  // namespace geo3
