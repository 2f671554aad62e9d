#pragma once

#include <cstdint>
#include <string>

#include "conefx/cone_model.hpp"
#include "conefx/linalg.hpp"

// Checks of the projection argument for a two-dimensional face F = cone{p1, p2}
// of a closed cone K in R^3 whose edges cone{p_i} are exposed by h_i in K*.
namespace conefx {

struct Nice3dInput {
  std::string name;
  ConeModel cone;  // generators of K in R^3
  RealVector p1;
  RealVector p2;
  RealVector h1;   // <h1, p1> = 0, h1 in K*
  RealVector h2;
};

struct Nice3dReport {
  std::string name;
  RealVector q1;      // projection of h1 onto span F
  RealVector q2;
  RealVector normal;  // unit basis of F^perp
  double q1p1 = 0.0;
  double q2p2 = 0.0;
  double q1p2 = 0.0;
  double q2p1 = 0.0;
  bool sign_pattern_ok = false;
  bool exposure_ok = false;  // h_i in K*, vanishing on p_i
  std::size_t membership_samples = 0;
  std::size_t membership_disagreements = 0;
  std::size_t dual_face_samples = 0;
  std::size_t dual_face_outside = 0;  // samples of F* outside cone{h1,h2} + F^perp
  bool pass = false;
};

struct Nice3dOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 20240607;
  Tolerance tol;
};

// Throws InputError when an h_i lies in F^perp (it would expose all of F) or
// when p1, p2 are not linearly independent.
Nice3dReport nice3d_ingredients(const Nice3dInput& input,
                                const Nice3dOptions& options = {});

// Nonnegative octant, F = cone{e1, e2}, h1 = (0, 1, 1), h2 = (1, 0, 1).
Nice3dInput octant_example();

// Cone over the half-disc {(cos s, sin s, 1) : s in [0, pi]}, F over its
// diameter, h1 = (1, 1/2, 1), h2 = (-1, 1/2, 1).
Nice3dInput half_disc_example(int arc_samples = 256);

}  // namespace conefx
