#pragma once

// Model total spaces: the Bianchi-Cartan-Vranceanu family M^3_{m,l} and the
// Berger spheres S^3_eps, with their closed-form bracket, connection,
// curvature and Ricci tables, plus the rotated-frame curvature identities and
// the vertical-direction rigidity search used in the classification proofs.

#include "geo3/geometry.hpp"

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace geo3 {

struct BCVParams
{
  double m{0.0};
  double l{0.0};

  /// 4m - l^2; zero exactly for the space forms R^3 and S^3.
  double rigidity_constant() const { return 4.0 * m - l * l; }
};

struct BergerParams
{
  double epsilon{1.0};

  /// 4 - 4 eps^2; zero exactly for the round sphere.
  double rigidity_constant() const { return 4.0 - 4.0 * epsilon * epsilon; }
};

/// Closed-form tables in the descriptor's own frame; any member may be empty.
struct ExpectedTables
{
  std::function<FrameTensor<3>(const ChartPoint &)> brackets;
  std::function<FrameTensor<3>(const ChartPoint &)> connection;
  std::function<CurvatureTensor(const ChartPoint &)> curvature;
  std::function<Eigen::Matrix3d(const ChartPoint &)> ricci;
};

struct SpaceDescriptor
{
  std::string id;
  std::string name;
  std::variant<std::monostate, BCVParams, BergerParams> params;
  ChartPtr chart;
  FrameField frame;
  ExpectedTables expected;

  const MetricField & metric() const { return frame.metric(); }
};

/// M^3_{m,l} on R^3 with frame E1 = F d_x - (l y/2) d_z, E2 = F d_y + (l x/2) d_z,
/// E3 = d_z, F = 1 + m(x^2 + y^2). Samples |x|,|y|,|z| <= 1 with F >= 0.05.
SpaceDescriptor bcv_space(const BCVParams & params);

/// S^3_eps in ambient R^4 with frame {X2, X3, X1/eps}. Throws UsageError for eps = 0.
SpaceDescriptor berger_space(const BergerParams & params);

/// The Hopf-parallelizing fields X1, X2, X3 on the unit sphere chart.
std::array<VectorField, 3> hopf_parallelization(const ChartPtr & s3);

enum class BCVCase { R3, S3, S2xR, H2xR, SU2, SL2R, Nil };

/// Case (a)-(g) by sign conditions on (m, l); 4m = l^2 > 0 is tested before m > 0, l != 0.
BCVCase classify_bcv(const BCVParams & params);

/// "(a)" .. "(g)".
std::string case_label(BCVCase c);

/// Model geometry name, e.g. "Nil" or "SL~(2,R)".
std::string case_geometry(BCVCase c);

/// Orthogonal 3x3 coefficient matrix, e_i = sum_j a(i,j) E_j.
class FrameRotation
{
public:
  /// Throws InvariantViolation unless a a^T = I within 1e-12.
  explicit FrameRotation(const Eigen::Matrix3d & a);

  static FrameRotation identity();

  /// Rotation by `angle` in the (E_i, E_j) plane.
  static FrameRotation plane(int i, int j, double angle);

  const Eigen::Matrix3d & matrix() const { return a_; }

  /// a_i^3: the E3-coefficient of e_i.
  double vertical_coefficient(int i) const { return a_(i, 2); }

private:
  Eigen::Matrix3d a_;
};

/// Seven curvature components in the order
/// R(e1,e3,e1,e2), R(e1,e3,e1,e3), R(e1,e3,e2,e3), R(e1,e2,e1,e2),
/// R(e1,e2,e2,e3), R(e2,e3,e1,e3), R(e2,e3,e2,e3).
using SevenComponents = std::array<double, 7>;

SevenComponents seven_components(const CurvatureTensor & R);

/// Closed forms of the seven components in a rotated frame of a space whose
/// curvature operator is c * Id + rigidity * E3 (x) E3.
SevenComponents rotated_closed_form(const FrameRotation & a, double rigidity, double constant_term);

struct RotatedFrameReport
{
  SevenComponents max_deviation{};
  double max{0.0};
  std::size_t points{0};
};

/// Compares riemann_frame in the rotated frame against the closed forms.
/// Throws UsageError unless the space is BCV or Berger.
RotatedFrameReport rotated_frame_check(
  const SpaceDescriptor & space, const FrameRotation & rotation, std::span<const ChartPoint> points);

struct TableReport
{
  double bracket_deviation{0.0};
  double connection_deviation{0.0};
  double curvature_deviation{0.0};
  double ricci_deviation{0.0};
  double connection_defect{0.0};  ///< metric compatibility / torsion
  double symmetry_defect{0.0};    ///< curvature symmetries and Bianchi
  double decomposition_residual{0.0};
  std::size_t points{0};

  double max_table_deviation() const;
};

/// Computed brackets, connection, curvature and Ricci against the descriptor's
/// closed-form tables. Throws UsageError when the descriptor carries no tables.
TableReport verify_connection_tables(const SpaceDescriptor & space, std::span<const ChartPoint> points);

struct RigidityOptions
{
  std::size_t grid_points{10000};
  double tolerance{1e-2};
  double cluster_radius{0.05};
};

struct RigiditySolution
{
  bool rigid{false};  ///< false when the constraint subsystem is vacuous (rigidity constant 0)
  std::vector<Eigen::Vector3d> clusters;  ///< normalized centroids, sorted by descending a_3
  std::size_t admissible{0};
  std::size_t grid_size{0};

  /// Exactly two clusters, at a_3 = +1 and a_3 = -1.
  bool only_poles(double tol = 1e-3) const;
};

/// Brute-force search over a Fibonacci sphere for vertical directions
/// (a_1, a_2, a_3) compatible with the harmonic curvature system:
/// rigidity * (a_1^2 - a_2^2) = 0, rigidity * a_1 a_2 = 0 and
/// sigma^2 = a_2^2 rigidity + constant_term >= 0.
RigiditySolution vertical_direction_solver(double rigidity, double constant_term, const RigidityOptions & options = {});

/// Deterministic quasi-uniform points on the unit sphere.
std::vector<Eigen::Vector3d> fibonacci_sphere(std::size_t n);

}  // namespace geo3
