#include "conefx/homogenization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "conefx/lp.hpp"

namespace conefx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

RealVector lift_point(const RealVector& x) {
  RealVector g(x.size() + 1);
  g[0] = 1.0;
  g.tail(x.size()) = x;
  return g;
}

double support(std::span<const RealVector> body, const RealVector& dir) {
  double s = -kInf;
  for (const auto& x : body) s = std::max(s, x.dot(dir));
  return s;
}

}  // namespace

ConeModel homogenize(const BodySamples& body) {
  if (body.variant != BodyVariant::kShifted) {
    throw InputError("homogenize expects samples of the shifted body C'");
  }
  if (body.size() == 0) throw InputError("body has no samples");
  ConeModel cone;
  cone.provenance = "cone({1} x C'), C' = 2C + c";
  cone.generators.reserve(body.size());
  cone.tags.reserve(body.size());
  for (const auto& cs : body.curves) {
    for (std::size_t k = 0; k < cs.points.size(); ++k) {
      cone.generators.push_back(lift_point(cs.points[k]));
      cone.tags.push_back({curve_id(cs.curve), cs.params[k]});
    }
  }
  return cone;
}

ConeModel cone_over(std::span<const RealVector> points, std::string provenance) {
  if (points.empty()) throw InputError("body has no samples");
  ConeModel cone;
  cone.provenance = std::move(provenance);
  for (const auto& x : points) cone.generators.push_back(lift_point(x));
  validate(cone);
  return cone;
}

ExposingPair shifted_pair(const ExposingPair& pair) {
  return {pair.y, 2.0 * pair.d + pair.y.dot(shift_vector()), pair.provenance};
}

LiftedPair lift_pair(const ExposingPair& pair) {
  RealVector y(pair.y.size() + 1);
  y[0] = -pair.d;
  y.tail(pair.y.size()) = pair.y;
  return {y, pair};
}

ExposureReport verify_cone_exposure(const LiftedPair& lifted,
                                    const ConeModel& cone,
                                    const FaceDescriptor& face,
                                    const BodySamples& raw_body,
                                    const Tolerance& tol) {
  validate(cone);
  if (lifted.y.size() != cone.dim()) {
    throw InputError("lifted normal dimension does not match the cone");
  }
  if (cone.dim() != 4 || cone.tags.size() != cone.size()) {
    throw InputError("cone exposure checks need tagged generators in R^4");
  }

  ExposureReport r;
  r.face = face;
  r.pair = lifted.source;
  // Apex: <y, 0> = 0 exactly.
  r.max_onface_residual = 0.0;
  for (const auto& x : face_points(face, raw_body)) {
    const double v = lifted.y.dot(lift_point(to_shifted(x)));
    r.max_onface_residual = std::max(r.max_onface_residual, std::abs(v));
  }

  r.max_support_violation = -kInf;
  std::array<double, kMarginDeltas.size()> margin;
  std::array<std::size_t, kMarginDeltas.size()> count{};
  margin.fill(kInf);
  for (std::size_t k = 0; k < cone.size(); ++k) {
    const double v = lifted.y.dot(cone.generators[k]);
    r.max_support_violation = std::max(r.max_support_violation, v);
    const GeneratorTag tag = cone.tag(k);
    const double dist = parameter_distance(face, curve_from_id(tag.curve), tag.t);
    if (dist == 0.0) {
      r.max_onface_residual = std::max(r.max_onface_residual, std::abs(v));
      continue;
    }
    for (std::size_t j = 0; j < kMarginDeltas.size(); ++j) {
      if (dist >= kMarginDeltas[j]) {
        margin[j] = std::min(margin[j], -v);
        ++count[j];
      }
    }
  }
  bool margins_ok = true;
  for (std::size_t j = 0; j < kMarginDeltas.size(); ++j) {
    r.margins.push_back({kMarginDeltas[j], margin[j], count[j]});
    if (!(margin[j] > 0.0 && margin[j] > tol.margin_abs)) margins_ok = false;
  }
  r.pass = r.max_onface_residual <= tol.eq_abs &&
           r.max_support_violation <= tol.eq_abs && margins_ok;
  return r;
}

bool in_polar_cone(const RealVector& y, const ConeModel& cone, double tol) {
  validate(cone);
  if (y.size() != cone.dim()) {
    throw InputError("polar test dimension does not match the cone");
  }
  return std::all_of(cone.generators.begin(), cone.generators.end(),
                     [&](const RealVector& g) { return y.dot(g) <= tol; });
}

PolarReport polar_correspondence_check(std::span<const RealVector> body,
                                       std::span<const RealVector> directions,
                                       const Tolerance& tol) {
  if (body.empty()) throw InputError("body has no samples");
  const auto n = body.front().size();
  for (const auto& x : body) {
    if (x.size() != n) throw InputError("body points have mixed dimensions");
  }
  for (const auto& d : directions) {
    if (d.size() != n) throw InputError("direction dimension mismatch");
  }

  PolarReport r;
  r.directions = directions.size();

  // Interior certificate: positive support in every probed unit direction,
  // including the coordinate axes.
  r.interior_margin = kInf;
  auto probe = [&](const RealVector& dir) {
    const double nrm = dir.norm();
    if (nrm == 0.0) return;
    r.interior_margin = std::min(r.interior_margin, support(body, dir / nrm));
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    RealVector e = RealVector::Zero(n);
    e[i] = 1.0;
    probe(e);
    probe(-e);
  }
  for (const auto& d : directions) probe(d);
  if (!(r.interior_margin > 0.0)) {
    throw InputError("body does not contain the origin in its interior");
  }

  const ConeModel cone = cone_over(body, "control body");
  RealVector zero_dir = RealVector::Zero(n + 1);
  zero_dir[0] = -1.0;
  r.zero_direction_ok = in_polar_cone(zero_dir, cone, tol.eq_abs);

  r.max_membership_value = -kInf;
  for (const auto& dir : directions) {
    if (dir.norm() == 0.0) continue;
    const double s = support(body, dir);
    RealVector candidate(n + 1);
    candidate[0] = -1.0;
    candidate.tail(n) = dir / s;
    for (const auto& g : cone.generators) {
      r.max_membership_value = std::max(r.max_membership_value, candidate.dot(g));
    }
    candidate.tail(n) *= 1.0 + 10.0 * tol.eq_abs;
    if (in_polar_cone(candidate, cone, 0.0)) ++r.sharpness_failures;
  }
  r.pass = r.zero_direction_ok && r.max_membership_value <= tol.eq_abs &&
           r.sharpness_failures == 0;
  return r;
}

std::vector<RealVector> square_body() {
  return {make_vector({1.0, 1.0}), make_vector({-1.0, 1.0}),
          make_vector({-1.0, -1.0}), make_vector({1.0, -1.0})};
}

std::vector<RealVector> disc_body(int samples) {
  if (samples < 3) throw InputError("disc needs at least 3 samples");
  std::vector<RealVector> pts;
  pts.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double a = 2.0 * std::numbers::pi * k / samples;
    pts.push_back(make_vector({std::cos(a), std::sin(a)}));
  }
  return pts;
}

std::vector<RealVector> direction_fan(int count, double radius) {
  if (count < 1) throw InputError("direction fan needs at least one direction");
  std::vector<RealVector> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    // Fractional offset keeps the fan off the sampled vertex angles.
    const double a = 2.0 * std::numbers::pi * (k + 0.37) / count;
    dirs.push_back(make_vector({radius * std::cos(a), radius * std::sin(a)}));
  }
  return dirs;
}

}  // namespace conefx
