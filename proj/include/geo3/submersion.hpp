#pragma once

// Riemannian submersions pi : (M^3, g) -> (N^2, h): validation of the
// submersion property, natural frames, generalized integrability data,
// tension and harmonicity, base Gauss curvature, and the curvature identities
// linking the total-space curvature to the integrability data.
//
// Bracket shape of a natural frame {e1, e2, e3} (e3 vertical):
//   [e1, e3] = f3 e2 + kappa1 e3
//   [e2, e3] = -f3 e1 + kappa2 e3
//   [e1, e2] = f1 e1 + f2 e2 - 2 sigma e3

#include "geo3/geometry.hpp"
#include "geo3/spaces.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace geo3 {

struct BaseSurface
{
  ChartPtr chart;     ///< 2-dimensional coordinate chart, or a 2-sphere in ambient 3-space
  MetricField metric;
};

/// Integrability data as fields on the total space, matched to a closed-form frame.
struct ClosedFormData
{
  ScalarField f1, f2, f3, kappa1, kappa2, sigma;
};

struct Expectations
{
  bool harmonic{true};
  std::optional<double> gauss_curvature;  ///< constant K^N when the base has one
  std::optional<bool> rc0_holds;          ///< whether the harmonic curvature system is satisfied
};

struct SubmersionSpec
{
  std::string id;
  std::string description;
  SpaceDescriptor total;
  BaseSurface base;
  std::vector<ScalarField> map;          ///< base coordinates (2) or ambient base coordinates (3)
  VectorField canonical_vertical;        ///< fixes the orientation of e3
  std::optional<FrameField> closed_form_frame;
  std::optional<ClosedFormData> closed_form_data;
  Expectations expected;
};

/// Jacobian of the map at p (one row per map component).
Mat differential(const SubmersionSpec & spec, const ChartPoint & p);

/// Image of p in the base chart.
ChartPoint project(const SubmersionSpec & spec, const ChartPoint & p);

/// Pushforward d pi(v) of a total-space vector at p.
Vec push_forward(const SubmersionSpec & spec, const ChartPoint & p, const Vec & v);

struct SubmersionValidation
{
  double vertical{0.0};       ///< max |d pi(e3)|_h
  double unit_norm{0.0};      ///< max ||d pi(e_i)|_h - 1|, i = 1, 2
  double orthogonality{0.0};  ///< max |<d pi(e1), d pi(e2)>_h|
  double frame{0.0};          ///< max orthonormality defect of the frame used
  double max_norm_e1{0.0};    ///< largest |d pi(e1)|_h seen
  double max_norm_e2{0.0};    ///< largest |d pi(e2)|_h seen
  std::size_t points{0};

  double max() const;
  bool passed(double tol = 1e-9) const { return max() <= tol; }
};

/// Checks the submersion property in the natural frame at every point.
/// Throws StructuralFailure at the first point where d pi has rank below 2.
SubmersionValidation validate_submersion(const SubmersionSpec & spec, std::span<const ChartPoint> points);

/// The closed-form frame when the entry carries one; otherwise e3 = unit kernel
/// of d pi oriented along the canonical vertical field, and e1, e2 the
/// Gram-Schmidt orthonormalization of the horizontal lifts of the base
/// coordinate gradients, first coordinate first. The Gram-Schmidt path needs a
/// 3-dimensional coordinate chart and a two-component map.
FrameField natural_frame(const SubmersionSpec & spec, const ChartPoint & p);

/// (e1, e2) rotated by a constant angle in the horizontal plane; e3 unchanged.
FrameField rotate_horizontal(const FrameField & frame, double angle);

struct DataValues
{
  double f1{0.0}, f2{0.0}, f3{0.0}, kappa1{0.0}, kappa2{0.0}, sigma{0.0};
};

struct IntegrabilityData
{
  DataValues value;
  std::array<DataValues, 3> along;  ///< along[a] = e_{a+1} applied to each function
  double residual{0.0};             ///< bracket content outside the natural-frame shape

  const DataValues & d(int a) const { return along[static_cast<std::size_t>(a)]; }
};

/// Residual allowed by `integrability_data` before the frame is declared not natural.
inline constexpr double kNaturalFrameTolerance = 1e-8;

/// Decomposes the frame brackets at p. Throws InvariantViolation when the
/// residual exceeds kNaturalFrameTolerance.
IntegrabilityData integrability_data(const FrameField & frame, const ChartPoint & p);

/// Closed-form data of the entry with derivatives along `frame`.
IntegrabilityData closed_form_integrability_data(const SubmersionSpec & spec, const FrameField & frame, const ChartPoint & p);

struct TensionField
{
  Vec components;  ///< in the base chart coordinates
  double norm{0.0};
};

/// tau = -d pi(nabla_{e3} e3), with nabla_{e3} e3 from the Koszul connection.
TensionField tension_field(const SubmersionSpec & spec, const FrameField & frame, const ChartPoint & p);
TensionField tension_field(const SubmersionSpec & spec, const ChartPoint & p);

enum class Verdict { Harmonic, NonHarmonic, Inconclusive };

std::string to_string(Verdict v);

struct HarmonicTolerances
{
  double harmonic{1e-8};     ///< max |kappa| at or below this is harmonic
  double obstruction{1e-4};  ///< any |kappa| at or above this is non-harmonic
};

struct HarmonicVerdict
{
  Verdict verdict{Verdict::Inconclusive};
  double max_kappa{0.0};    ///< max over points of max(|kappa1|, |kappa2|)
  double max_tension{0.0};  ///< max over points of |tau|_h
  std::size_t points{0};

  bool harmonic() const { return verdict == Verdict::Harmonic; }
};

/// Verdict from a maximum of |kappa|. Tolerances below double-precision
/// resolution cannot certify a zero and give Inconclusive.
Verdict classify_kappa(double max_kappa, const HarmonicTolerances & tol);

HarmonicVerdict is_harmonic(const SubmersionSpec & spec, std::span<const ChartPoint> points, const HarmonicTolerances & tol = {});

/// 1/2 |d pi|^2, traced over the total space's own orthonormal frame.
double energy_density(const SubmersionSpec & spec, const ChartPoint & p);

/// K^N = e1(f2) - e2(f1) - f1^2 - f2^2 + 2 f3 sigma.
double base_gauss_curvature(const IntegrabilityData & data);
double base_gauss_curvature(const SubmersionSpec & spec, const ChartPoint & p);

/// Curvature components R(e1,e3,e1,e2), R(e1,e3,e1,e3), R(e1,e3,e2,e3),
/// R(e1,e2,e1,e2), R(e1,e2,e2,e3), R(e2,e3,e1,e3), R(e2,e3,e2,e3) predicted by
/// the integrability data.
std::array<double, 7> curvature_from_data(const IntegrabilityData & data);

/// The same seven components as required by the harmonic curvature system:
/// -e1(sigma), sigma^2, -e3(sigma), K^N - 3 sigma^2, -e2(sigma), e3(sigma), sigma^2.
/// The system additionally asks for e3(sigma) = 0.
std::array<double, 7> harmonic_system_targets(const IntegrabilityData & data);

struct PointRecord
{
  Vec coords;
  std::array<double, 7> rc{};   ///< |riemann_frame - curvature_from_data|
  std::array<double, 8> rc0{};  ///< harmonic-system residuals, last entry |e3(sigma)|
  DataValues data;              ///< reference integrability data
  double gauss_curvature{0.0};
  double tension{0.0};
  double frame_residual{0.0};   ///< bracket residual of the natural frame
  double data_agreement{0.0};   ///< closed-form vs engine data, 0 without closed forms
};

struct IdentityOptions
{
  HarmonicTolerances tolerances{};
  double horizontal_angle{0.0};  ///< rotate (e1, e2) first; closed-form data is then ignored
};

struct IdentityReport
{
  std::vector<PointRecord> records;
  std::array<double, 7> rc_max{};
  std::array<double, 8> rc0_max{};
  HarmonicVerdict verdict;
  double kn_mean{0.0};
  double kn_min{0.0};
  double kn_max{0.0};
  double sigma_min_abs{0.0};
  double sigma_sq_min{0.0};
  double sigma_sq_max{0.0};
  double data_agreement{0.0};
  double frame_residual{0.0};

  double rc_overall() const;
  double rc0_overall() const;
  double kn_spread() const { return kn_max - kn_min; }
};

/// Per-point evaluation of both identity systems. The left sides come from
/// riemann_frame in the natural frame; the right sides from the reference
/// integrability data (closed forms when the entry has them, else the engine).
IdentityReport identity_report(const SubmersionSpec & spec, std::span<const ChartPoint> points, const IdentityOptions & options = {});

IdentityReport curvature_identity_residuals(const SubmersionSpec & spec, std::span<const ChartPoint> points);

IdentityReport harmonic_system_residuals(const SubmersionSpec & spec, std::span<const ChartPoint> points);

}  // namespace geo3
