#pragma once

// Named submersions between model geometries, addressable by stable ids.

#include "geo3/submersion.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace geo3 {

/// Parameter overrides for parametric entries.
struct CatalogParams
{
  std::optional<double> m;
  std::optional<double> l;
  std::optional<double> eps;
};

/// M^3_{m,l} -> (R^2, (dx^2 + dy^2) / F^2), (x, y, z) -> (x, y), in the frame {E1, E2, E3}.
SubmersionSpec bcv_projection(const BCVParams & params, std::string id = "bcv.projection");

/// Hopf map from S^3_eps onto the sphere of radius 1/2 in R^3.
SubmersionSpec hopf_map(double eps = 0.5);

/// Hopf map value at an ambient point of S^3.
Vec hopf_value(const Vec & x);

using WarpFunction = std::function<ScalarField(const ScalarField & x, const ScalarField & y)>;

/// (R^3, e^{2p} dx^2 + dy^2 + dz^2) -> (R^2, e^{2p} dx^2 + dy^2), (x, y, z) -> (x, y).
SubmersionSpec product_projection(const WarpFunction & p, std::string id, std::optional<double> gauss_curvature);

/// (R^3, e^{2y} dx^2 + dy^2 + dz^2) -> (R^2, dy^2 + dz^2), (x, y, z) -> (y, z); natural frame by Gram-Schmidt.
SubmersionSpec hyperbolic_product_projection();

/// Nil = (R^3, dx^2 + dy^2 + (dz - x dy)^2) -> (R^2, dx^2 + dz^2 / (1 + x^2)), (x, y, z) -> (x, z).
SubmersionSpec nil_projection();

/// Cylindrical R^3 -> (R^2, d rho^2 + dz^2), (rho, z, theta) -> (rho, z).
SubmersionSpec cylinder_axial_projection();

/// Cylindrical R^3 -> (R^2, d rho^2 + rho^2 d theta^2), (rho, z, theta) -> (rho, theta).
SubmersionSpec cylinder_planar_projection();

/// The shipped entries, in a fixed order.
std::vector<SubmersionSpec> catalog();

/// Every id accepted by `lookup`, including parametric and lookup-only entries.
std::vector<std::string> catalog_ids();

/// Resolves an id with parameter overrides. Throws UsageError for unknown ids
/// or parameters the entry does not take.
SubmersionSpec lookup(const std::string & id, const CatalogParams & params = {});

struct NamedField
{
  std::string name;
  ScalarField field;
};

/// Every non-constant scalar field carried by a spec: metrics, frames, map
/// components, canonical vertical field and closed-form data.
std::vector<NamedField> scalar_fields(const SubmersionSpec & spec);

}  // namespace geo3
