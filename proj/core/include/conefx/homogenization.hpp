#pragma once

#include <span>
#include <string>
#include <vector>

#include "conefx/cone_model.hpp"
#include "conefx/construction.hpp"
#include "conefx/face_catalogue.hpp"

// Cone over a body, K = cone({1} x C), and the correspondences between faces,
// exposing pairs and polars of C and K.
namespace conefx {

// Generators (1, x) for every sample x of C'. Tags carry (curve, t).
// Throws InputError for raw-C samples or an empty body.
ConeModel homogenize(const BodySamples& body);

// Generators (1, x) for arbitrary body points; tags left empty.
ConeModel cone_over(std::span<const RealVector> points, std::string provenance);

// (y, d) exposing F in C  ->  (y, 2d + <y, c>) exposing 2F + c in C'.
ExposingPair shifted_pair(const ExposingPair& pair);

struct LiftedPair {
  RealVector y;  // (-d, ybar)
  ExposingPair source;
};

LiftedPair lift_pair(const ExposingPair& pair);

// Checks ((-d, ybar), 0) against the cone generators: equality on the lifted
// face generators (1, 2x + c) for x on `face` and at the apex, strict
// negativity elsewhere, graded by parameter distance. `face` is the catalogue
// face of C whose image 2F + c the source pair exposes.
ExposureReport verify_cone_exposure(const LiftedPair& lifted,
                                    const ConeModel& cone,
                                    const FaceDescriptor& face,
                                    const BodySamples& raw_body,
                                    const Tolerance& tol = {});

// True when <y, g> <= tol for every generator, i.e. y is in the polar cone.
bool in_polar_cone(const RealVector& y, const ConeModel& cone, double tol);

struct PolarReport {
  double interior_margin = 0.0;        // min support value over unit directions
  std::size_t directions = 0;
  double max_membership_value = 0.0;   // max <(-1, y/s), g> over all checks
  std::size_t sharpness_failures = 0;  // inflated points that stayed inside
  bool zero_direction_ok = true;
  bool pass = false;
};

// For each direction ybar with sampled support s = max <x, ybar> > 0, checks
// that (-1, ybar/s) lies in the polar of K = cone({1} x body) and that
// (-1, (1 + 10 eq_abs) ybar/s) does not. Throws InputError when the body
// does not contain 0 in its interior (some direction has support <= 0).
PolarReport polar_correspondence_check(std::span<const RealVector> body,
                                       std::span<const RealVector> directions,
                                       const Tolerance& tol = {});

// Control bodies with certified interior origin.
std::vector<RealVector> square_body();                  // vertices of [-1, 1]^2
std::vector<RealVector> disc_body(int samples);         // unit circle samples
std::vector<RealVector> direction_fan(int count, double radius);

}  // namespace conefx
