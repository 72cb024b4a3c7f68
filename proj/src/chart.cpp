#include "geo3/chart.hpp"

#include "geo3/errors.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace geo3 {

namespace {

constexpr double kSphereTolerance = 1e-12;
constexpr std::size_t kMaxRejections = 1000000;

std::string describe(const Vec & x)
{
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (Eigen::Index i = 0; i < x.size(); ++i) { os << (i ? ", " : "") << x(i); }
  os << ')';
  return os.str();
}

}  // namespace

std::shared_ptr<const Chart> Chart::coordinate(
  std::string id, std::vector<std::string> names, Predicate domain, SampleBox box,
  Predicate extends_to)
{
  auto c = std::shared_ptr<Chart>(new Chart());
  c->id_ = std::move(id);
  c->names_ = std::move(names);
  c->kind_ = Kind::Coordinate;
  c->domain_ = std::move(domain);
  c->extends_ = extends_to ? std::move(extends_to) : c->domain_;
  c->box_ = std::move(box);
  if (c->box_.lo.size() != c->dim() || c->box_.hi.size() != c->dim()) {
    throw UsageError("sample box dimension does not match chart " + c->id_);
  }
  return c;
}

std::shared_ptr<const Chart> Chart::ambient_sphere(std::string id)
{
  auto c = std::shared_ptr<Chart>(new Chart());
  c->id_ = std::move(id);
  c->names_ = {"x1", "x2", "x3", "x4"};
  c->kind_ = Kind::AmbientSphere;
  c->radius_ = 1.0;
  c->domain_ = [](const Vec & x) { return std::abs(x.norm() - 1.0) <= kSphereTolerance; };
  c->extends_ = [](const Vec & x) { return x.norm() > 0.5; };
  c->box_ = {Vec::Constant(4, -1.0), Vec::Constant(4, 1.0), {}};
  return c;
}

std::shared_ptr<const Chart> Chart::ambient_sphere2(std::string id, double radius)
{
  auto c = std::shared_ptr<Chart>(new Chart());
  c->id_ = std::move(id);
  c->names_ = {"u1", "u2", "u3"};
  c->kind_ = Kind::AmbientSphere;
  c->radius_ = radius;
  c->domain_ = [radius](const Vec & x) {
    return std::abs(x.norm() - radius) <= kSphereTolerance * std::max(1.0, radius);
  };
  c->extends_ = [radius](const Vec & x) { return x.norm() > 0.5 * radius; };
  c->box_ = {Vec::Constant(3, -radius), Vec::Constant(3, radius), {}};
  return c;
}

bool Chart::contains(const Vec & x) const
{
  return x.size() == dim() && x.allFinite() && domain_(x);
}

bool Chart::extends_to(const Vec & x) const
{
  return x.size() == dim() && x.allFinite() && extends_(x);
}

std::vector<Vec> Chart::sample(std::size_t count, std::uint64_t seed) const
{
  std::mt19937_64 rng(seed);
  std::vector<Vec> out;
  out.reserve(count);

  if (kind_ == Kind::AmbientSphere) {
    std::normal_distribution<double> normal(0.0, 1.0);
    while (out.size() < count) {
      Vec x(dim());
      for (int i = 0; i < dim(); ++i) { x(i) = normal(rng); }
      const double n = x.norm();
      if (n < 1e-6) { continue; }
      x *= radius_ / n;
      out.push_back(x);
    }
    return out;
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t rejected = 0;
  while (out.size() < count) {
    Vec x(dim());
    for (int i = 0; i < dim(); ++i) {
      x(i) = box_.lo(i) + (box_.hi(i) - box_.lo(i)) * unit(rng);
    }
    if (contains(x) && (!box_.accept || box_.accept(x))) {
      out.push_back(x);
    } else if (++rejected > kMaxRejections) {
      throw DomainError("sampling box of chart " + id_ + " has no admissible points");
    }
  }
  return out;
}

ChartPoint::ChartPoint(ChartPtr chart, Vec coords) : chart_(std::move(chart)), coords_(std::move(coords))
{
  if (!chart_) { throw UsageError("chart point without chart"); }
  if (!chart_->contains(coords_)) {
    throw DomainError("point " + describe(coords_) + " outside domain of chart " + chart_->id());
  }
}

std::vector<ChartPoint> sample_points(const ChartPtr & chart, std::size_t count, std::uint64_t seed)
{
  std::vector<ChartPoint> pts;
  pts.reserve(count);
  for (auto & x : chart->sample(count, seed)) { pts.emplace_back(chart, std::move(x)); }
  return pts;
}

Vec make_vec(std::initializer_list<double> values)
{
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double d : values) { v(i++) = d; }
  return v;
}

}  // namespace geo3
