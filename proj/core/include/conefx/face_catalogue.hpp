#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "conefx/construction.hpp"
#include "conefx/linalg.hpp"

namespace conefx {

enum class FaceKind {
  kF00,
  kF01,
  kF02,
  kF03,
  kF04,
  kF11,
  kF12,
  kF13,
  kF14,
  kF15,
  kF21,
  kF22,
  kF23,
  kF24,
};

inline constexpr std::size_t kFaceKindCount = 14;

std::string_view to_string(FaceKind kind);
int face_dimension(FaceKind kind);

// Parameter interval [lo, hi] of one curve that lies on a face. Every face of
// C is the convex hull of its arcs, since C = co(gamma_1..gamma_4).
struct FaceArc {
  Curve curve;
  double lo;
  double hi;
};

struct FaceDescriptor {
  FaceKind kind;
  std::optional<double> parameter;  // t for F0i, theta for F11/F12
  std::vector<FaceArc> arcs;

  int dimension() const { return face_dimension(kind); }

  // Catalogue label such as "F11(0.39269908169872414)".
  std::string label() const;
};

// Builds one descriptor; parameterised kinds require a parameter in (0, T].
FaceDescriptor make_face(FaceKind kind, std::optional<double> parameter = {});

// F00, F0i(t) over t_grid, F11/F12(theta) over theta_grid, F13..F15,
// F21..F24. Both grids must be nonempty and lie in (0, T].
std::vector<FaceDescriptor> enumerate_faces(std::span<const double> t_grid,
                                            std::span<const double> theta_grid);

// Parameter distance of gamma_curve(t) to the face: distance from t to the
// face's arc on that curve, +inf when the face misses the curve. p0 is shared
// by all curves, so it is at distance 0 from any face containing it.
double parameter_distance(const FaceDescriptor& face, Curve curve, double t);

// Points of the face: arc endpoints, interior arc samples drawn from `body`,
// and midpoints between the face's corner points.
std::vector<RealVector> face_points(const FaceDescriptor& face,
                                    const BodySamples& body);

enum class PairProvenance { kClosedForm, kDerivedOracle };

std::string_view to_string(PairProvenance p);

// (y, d) with <y, x> <= d on C and equality exactly on the face.
struct ExposingPair {
  RealVector y;
  double d = 0.0;
  PairProvenance provenance = PairProvenance::kClosedForm;
};

// Closed-form pair where one exists; otherwise the oracle pair derived from
// `body` (plane through generators for 2D faces, sum of adjacent facet pairs
// for F13..F15, maximum-margin LP for F00). body must be raw C.
ExposingPair exposing_pair(const FaceDescriptor& face, const BodySamples& body);

struct MarginAtDistance {
  double delta;
  double margin;         // min (d - <y, x>) over samples at distance >= delta
  std::size_t samples;   // how many samples qualified
};

inline constexpr std::array<double, 3> kMarginDeltas = {0.01, 0.05, 0.1};

struct ExposureReport {
  FaceDescriptor face;
  ExposingPair pair;
  double max_onface_residual = 0.0;   // max |<y, x> - d| over face points
  double max_support_violation = 0.0; // max (<y, x> - d) over all samples
  std::vector<MarginAtDistance> margins;
  bool pass = false;
};

// Checks (y, d) against the raw-body samples: equality on face points,
// support everywhere, strict inequality graded by parameter distance.
ExposureReport verify_exposure(const FaceDescriptor& face,
                               const ExposingPair& pair,
                               const BodySamples& body,
                               const Tolerance& tol = {});

// |lhs - rhs| for
//   <gamma_1(t), y_theta> = cos t_theta (cos(t - theta) - cos theta)
//   <gamma_3(t), y_theta> = sin theta (cos(t - t_theta) - cos t_theta)
//   <gamma_2(t), y_theta> = cos t_theta (sin theta - sin(t + theta))
//   <gamma_4(t), y_theta> = sin theta (sin t_theta - sin(t + t_theta))
//   <gamma_1(t), y_3(theta)> = cos t_theta (cos(t - theta) - cos theta)
//                              + cos t - 1
//   <gamma_2(t), y_3(theta)> = cos t_theta (sin theta - sin(t + theta)) - sin t
std::array<double, 6> identity_suite(double t, double theta);

}  // namespace conefx
