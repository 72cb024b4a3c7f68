#pragma once

#include "geo3/jet.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace geo3 {

/// A coordinate representation for fields and points.
///
/// `contains` is the domain on which points are valid. `extends_to` is the
/// larger open set on which field formulas can be evaluated; finite-difference
/// stencils may leave `contains` (e.g. the unit sphere) but not `extends_to`.
class Chart
{
public:
  enum class Kind { Coordinate, AmbientSphere };

  using Predicate = std::function<bool(const Vec &)>;

  struct SampleBox
  {
    Vec lo;
    Vec hi;
    Predicate accept;  // extra rejection test, may be empty
  };

  static std::shared_ptr<const Chart> coordinate(
    std::string id, std::vector<std::string> names, Predicate domain, SampleBox box,
    Predicate extends_to = {});

  /// Unit 3-sphere in ambient 4-space; fields extend to the punctured R^4.
  static std::shared_ptr<const Chart> ambient_sphere(std::string id);

  /// Sphere of the given radius in ambient 3-space (used as a base surface).
  static std::shared_ptr<const Chart> ambient_sphere2(std::string id, double radius);

  const std::string & id() const { return id_; }
  int dim() const { return static_cast<int>(names_.size()); }
  Kind kind() const { return kind_; }
  const std::vector<std::string> & coordinate_names() const { return names_; }
  const SampleBox & sample_box() const { return box_; }

  bool contains(const Vec & x) const;
  bool extends_to(const Vec & x) const;

  /// Draws `count` reproducible points: uniform in the sample box with
  /// rejection for coordinate charts, normalized Gaussians on the sphere.
  std::vector<Vec> sample(std::size_t count, std::uint64_t seed) const;

private:
  Chart() = default;

  std::string id_;
  std::vector<std::string> names_;
  Kind kind_{Kind::Coordinate};
  Predicate domain_;
  Predicate extends_;
  SampleBox box_;
  double radius_{1.0};
};

using ChartPtr = std::shared_ptr<const Chart>;

/// A point together with the chart that owns its coordinates.
class ChartPoint
{
public:
  /// Throws DomainError when `coords` is outside the chart domain.
  ChartPoint(ChartPtr chart, Vec coords);

  const ChartPtr & chart() const { return chart_; }
  const std::string & chart_id() const { return chart_->id(); }
  const Vec & coords() const { return coords_; }
  double operator[](int i) const { return coords_(i); }
  int dim() const { return static_cast<int>(coords_.size()); }

private:
  ChartPtr chart_;
  Vec coords_;
};

/// Convenience: wraps `Chart::sample` into validated points.
std::vector<ChartPoint> sample_points(const ChartPtr & chart, std::size_t count, std::uint64_t seed);

Vec make_vec(std::initializer_list<double> values);

}  // namespace geo3
