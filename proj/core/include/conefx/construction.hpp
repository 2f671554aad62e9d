#pragma once

#include <array>
#include <numbers>
#include <span>
#include <vector>

#include "conefx/linalg.hpp"

// Closed forms for the four-curve body C, its shifted copy C' = 2C + c and
// the theta-parametrised exposing data of its ruled faces.
namespace conefx {

// Curve parameter range is [0, kHorizon].
inline constexpr double kHorizon = std::numbers::pi / 4.0;

enum class Curve : int { kG1 = 1, kG2 = 2, kG3 = 3, kG4 = 4 };

inline constexpr std::array<Curve, 4> kAllCurves = {Curve::kG1, Curve::kG2,
                                                    Curve::kG3, Curve::kG4};

inline int curve_id(Curve c) { return static_cast<int>(c); }

// Throws InputError for ids outside 1..4.
Curve curve_from_id(int id);

// gamma_1(t) = (0, -sin t, cos t - 1)
// gamma_2(t) = (0, cos t - 1, -sin t)
// gamma_3(t) = (-sin t, 1 - cos t, 0)
// gamma_4(t) = (cos t - 1, sin t, 0)
// Throws InputError for t outside [0, kHorizon].
RealVector gamma(Curve curve, double t);

// Each curve is an arc of a unit circle around this point.
RealVector curve_center(Curve curve);

// p0 = 0 and p_i = gamma_i(T).
RealVector endpoint(int index);

struct CurvePoint {
  Curve curve;
  double t;
  RealVector point;
};

CurvePoint curve_point(Curve curve, double t);

// c = (1/2, 0, 1/2).
RealVector shift_vector();

// x -> 2x + c, the affine map taking C onto C'.
RealVector to_shifted(const RealVector& x);

// Orthogonal involution (x1, x2, x3) -> (x3, -x2, x1). Swaps gamma_1 with
// gamma_4 and gamma_2 with gamma_3 at equal parameters.
RealVector mirror(const RealVector& x);
Curve mirror(Curve curve);

// phi(theta) = sin theta / (1 + sin theta - cos theta), theta in (0, T].
double phi(double theta);
double phi_derivative(double theta);

struct MonotonicityScan {
  bool strictly_decreasing = true;
  bool derivative_negative = true;
  double largest_step = 0.0;  // max phi(theta_{k+1}) - phi(theta_k); < 0 when decreasing
  std::size_t points = 0;
};

// Scans phi over a strictly increasing grid in (0, T].
MonotonicityScan monotonicity_scan(std::span<const double> grid);

// t_theta = arccos(phi(theta)); a bijection of (0, T] onto itself.
double t_of_theta(double theta);

// Inverse of t_of_theta. Uses phi(theta) = 1 / (1 + tan(theta/2)), so
// theta = 2 atan(sec t - 1).
double theta_of_t(double t);

struct ThetaBundle {
  double theta;
  double t_theta;
  RealVector y_theta;        // exposes co{gamma_1(theta), gamma_3(t_theta)}
  RealVector y_prime_theta;  // mirror image, exposes co{gamma_4, gamma_2}
  double d_theta;            // cos t_theta (1 - cos theta)
  double d_theta_alt;        // sin theta (1 - cos t_theta)
};

// Throws InputError for theta outside (0, T].
ThetaBundle theta_bundle(double theta);

// Closed-form normals exposing the single point gamma_i(.) of C:
//   y_1(theta) = (1, -sin theta, cos theta)          offset 1 - cos theta
//   y_4(theta) = (cos theta, sin theta, 1)           offset 1 - cos theta
//   y_3(theta) = y_theta + (0, 0, 1)  exposes gamma_3(t_theta), offset d_theta
//   y_2(theta) = y'_theta + (1, 0, 0) exposes gamma_2(t_theta), offset d_theta
RealVector point_normal(Curve curve, double theta);
double point_offset(Curve curve, double theta);

struct GridSpec {
  int uniform_points = 512;
  int refinement_points = 20;
  double refinement_ratio = 0.5;
};

// Uniform grid on [0, T] plus a geometric cluster below the first uniform
// step (h * ratio^k, k = 1..refinement_points). Sorted, contains 0 and T.
std::vector<double> parameter_grid(const GridSpec& spec = {});

// {0} + geometric ladder eps * 2^k below the uniform step + uniform points
// >= eps. The smallest positive parameter is exactly eps.
std::vector<double> level_grid(int uniform_points, double eps);

// Uniform theta grid {k T / n : k = 1..n}; excludes 0.
std::vector<double> theta_grid(int n);

enum class BodyVariant { kRaw, kShifted };

struct CurveSamples {
  Curve curve;
  std::vector<double> params;
  std::vector<RealVector> points;
};

struct BodySamples {
  BodyVariant variant = BodyVariant::kRaw;
  std::array<CurveSamples, 4> curves;

  std::size_t size() const;
  const CurveSamples& on(Curve c) const {
    return curves[static_cast<std::size_t>(curve_id(c) - 1)];
  }
};

// Samples every curve on the same grid. The grid must be sorted, lie in
// [0, T] and contain both endpoints.
BodySamples sample_body(std::span<const double> grid,
                        BodyVariant variant = BodyVariant::kRaw);

// Per-curve grids (used by the mesh, where gamma_2/gamma_3 follow t_theta).
BodySamples sample_body(const std::array<std::vector<double>, 4>& grids,
                        BodyVariant variant = BodyVariant::kRaw);

// Image of a raw body under x -> 2x + c.
BodySamples shifted(const BodySamples& raw);

struct WitnessPair {
  RealVector q;  // (-1, 0, -1, 2)
  RealVector u;  // (1, 0, 0, -2), spans the orthogonal complement of the face
};

WitnessPair witness();

}  // namespace conefx
