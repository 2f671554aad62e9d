#include "conefx/nice3d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "conefx/lp.hpp"

namespace conefx {

namespace {

RealVector cross(const RealVector& a, const RealVector& b) {
  return make_vector({a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                      a[0] * b[1] - a[1] * b[0]});
}

ConeModel sum_cone(const RealVector& a, const RealVector& b,
                   const RealVector& n, std::string provenance) {
  ConeModel c;
  c.generators = {a, b, n, -n};
  c.provenance = std::move(provenance);
  return c;
}

void require_r3(const RealVector& v, const char* what) {
  if (v.size() != 3) throw InputError(std::string(what) + " must lie in R^3");
  require_finite(v, what);
}

}  // namespace

Nice3dReport nice3d_ingredients(const Nice3dInput& in,
                                const Nice3dOptions& options) {
  validate(in.cone);
  if (in.cone.dim() != 3) throw InputError("nice3d expects a cone in R^3");
  require_r3(in.p1, "p1");
  require_r3(in.p2, "p2");
  require_r3(in.h1, "h1");
  require_r3(in.h2, "h2");

  const double eq = options.tol.eq_abs;
  const RealVector nrm = cross(in.p1, in.p2);
  if (nrm.norm() <= eq * in.p1.norm() * in.p2.norm()) {
    throw InputError("face generators p1, p2 are linearly dependent");
  }

  Nice3dReport r;
  r.name = in.name;
  r.normal = nrm.normalized();
  const std::vector<RealVector> span_f{in.p1, in.p2};
  r.q1 = project_onto_span(in.h1, span_f);
  r.q2 = project_onto_span(in.h2, span_f);
  for (const auto* q : {&r.q1, &r.q2}) {
    const RealVector& h = q == &r.q1 ? in.h1 : in.h2;
    if (q->norm() <= eq * std::max(1.0, h.norm())) {
      throw InputError("exposing normal lies in F^perp and would expose all of F");
    }
  }

  r.q1p1 = r.q1.dot(in.p1);
  r.q2p2 = r.q2.dot(in.p2);
  r.q1p2 = r.q1.dot(in.p2);
  r.q2p1 = r.q2.dot(in.p1);
  r.sign_pattern_ok = std::abs(r.q1p1) <= eq && std::abs(r.q2p2) <= eq &&
                      r.q1p2 > eq && r.q2p1 > eq;

  r.exposure_ok = std::abs(in.h1.dot(in.p1)) <= eq &&
                  std::abs(in.h2.dot(in.p2)) <= eq;
  for (const auto& g : in.cone.generators) {
    const double scale = std::max(1.0, g.norm());
    if (in.h1.dot(g) < -eq * scale || in.h2.dot(g) < -eq * scale) {
      r.exposure_ok = false;
    }
  }

  const ConeModel lhs = sum_cone(in.h1, in.h2, r.normal, "cone{h1,h2} + F^perp");
  const ConeModel rhs = sum_cone(r.q1, r.q2, r.normal, "cone{q1,q2} + F^perp");

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto draw = [&] { return make_vector({unit(rng), unit(rng), unit(rng)}); };

  for (std::size_t k = 0; k < options.samples; ++k) {
    const RealVector x = draw();
    const RealVector px = project_onto_span(x, span_f);
    const bool a = is_inside(conic_membership(x, lhs, options.tol));
    const bool b = is_inside(conic_membership(px, rhs, options.tol));
    ++r.membership_samples;
    if (a != b) ++r.membership_disagreements;
  }

  // Rejection sampling of F* = {z : <z, p1> >= 0, <z, p2> >= 0}.
  const std::size_t max_draws = 64 * std::max<std::size_t>(options.samples, 1);
  for (std::size_t draws = 0;
       r.dual_face_samples < options.samples && draws < max_draws; ++draws) {
    const RealVector z = draw();
    if (z.dot(in.p1) < 0.0 || z.dot(in.p2) < 0.0) continue;
    ++r.dual_face_samples;
    if (!is_inside(conic_membership(z, lhs, options.tol))) ++r.dual_face_outside;
  }

  r.pass = r.sign_pattern_ok && r.exposure_ok &&
           r.membership_samples > 0 && r.membership_disagreements == 0 &&
           r.dual_face_samples == options.samples && r.dual_face_outside == 0;
  return r;
}

Nice3dInput octant_example() {
  Nice3dInput in;
  in.name = "octant";
  in.cone.generators = {make_vector({1.0, 0.0, 0.0}), make_vector({0.0, 1.0, 0.0}),
                        make_vector({0.0, 0.0, 1.0})};
  in.cone.provenance = "nonnegative octant";
  in.p1 = make_vector({1.0, 0.0, 0.0});
  in.p2 = make_vector({0.0, 1.0, 0.0});
  in.h1 = make_vector({0.0, 1.0, 1.0});
  in.h2 = make_vector({1.0, 0.0, 1.0});
  return in;
}

Nice3dInput half_disc_example(int arc_samples) {
  if (arc_samples < 2) throw InputError("half-disc needs at least 2 arc samples");
  Nice3dInput in;
  in.name = "half-disc";
  for (int k = 0; k < arc_samples; ++k) {
    const double s = k == arc_samples - 1
                         ? std::numbers::pi
                         : std::numbers::pi * k / (arc_samples - 1);
    in.cone.generators.push_back(make_vector({std::cos(s), std::sin(s), 1.0}));
  }
  // cos(pi) is exact but sin(pi) is not; pin the far endpoint on the diameter.
  in.cone.generators.back() = make_vector({-1.0, 0.0, 1.0});
  in.cone.provenance = "cone over the upper half-disc at height 1";
  const double r = 1.0 / std::numbers::sqrt2;
  in.p1 = make_vector({-r, 0.0, r});
  in.p2 = make_vector({r, 0.0, r});
  in.h1 = make_vector({1.0, 0.5, 1.0});
  in.h2 = make_vector({-1.0, 0.5, 1.0});
  return in;
}

}  // namespace conefx
