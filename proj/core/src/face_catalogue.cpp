#include "conefx/face_catalogue.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Geometry>

#include "conefx/lp.hpp"

namespace conefx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_point_family(FaceKind k) {
  return k == FaceKind::kF01 || k == FaceKind::kF02 || k == FaceKind::kF03 ||
         k == FaceKind::kF04;
}

bool is_segment_family(FaceKind k) {
  return k == FaceKind::kF11 || k == FaceKind::kF12;
}

FaceArc point_arc(Curve c, double t) { return {c, t, t}; }
FaceArc full_arc(Curve c) { return {c, 0.0, kHorizon}; }

void require_grid(std::span<const double> grid, const char* what) {
  if (grid.empty()) throw InputError(std::string(what) + " grid is empty");
  for (double v : grid) {
    if (!(v > 0.0 && v <= kHorizon)) {
      throw InputError(std::string(what) + " grid must lie in (0, pi/4]");
    }
  }
}

void push_unique(std::vector<RealVector>& pts, const RealVector& p) {
  for (const auto& q : pts) {
    if ((q - p).norm() == 0.0) return;
  }
  pts.push_back(p);
}

RealVector cross3(const RealVector& a, const RealVector& b) {
  const Eigen::Vector3d c = Eigen::Vector3d(a).cross(Eigen::Vector3d(b));
  return RealVector(c);
}

// Unit normal of the plane through a, b, c, oriented so the body samples sit
// on the nonpositive side.
ExposingPair plane_pair(const RealVector& a, const RealVector& b,
                        const RealVector& c, const BodySamples& body) {
  RealVector n = cross3(b - a, c - a);
  n.normalize();
  double d = n.dot(a);
  double above = -kInf;
  double below = -kInf;
  for (const auto& cs : body.curves) {
    for (const auto& x : cs.points) {
      const double v = n.dot(x) - d;
      above = std::max(above, v);
      below = std::max(below, -v);
    }
  }
  if (above > below) {
    n = -n;
    d = -d;
  }
  return {n, d, PairProvenance::kDerivedOracle};
}

ExposingPair sum_pair(const ExposingPair& a, const ExposingPair& b) {
  return {a.y + b.y, a.d + b.d, PairProvenance::kDerivedOracle};
}

// Maximises s subject to <y, x> + s ||x||^2 <= 0 over all nonzero samples,
// |y_i| <= 1, s <= 1. A positive optimum gives a normal that is strictly
// negative on C \ {0} with a quadratic margin.
ExposingPair apex_pair(const BodySamples& body) {
  LinearConstraintSet rows(4);
  for (const auto& cs : body.curves) {
    for (const auto& x : cs.points) {
      const double n2 = x.squaredNorm();
      if (n2 == 0.0) continue;
      RealVector a(4);
      a << x[0], x[1], x[2], n2;
      rows.add_less_equal(std::move(a), 0.0);
    }
  }
  for (int i = 0; i < 3; ++i) {
    RealVector e = RealVector::Zero(4);
    e[i] = 1.0;
    rows.add_less_equal(e, 1.0);
    rows.add_less_equal(-e, 1.0);
  }
  RealVector es = RealVector::Zero(4);
  es[3] = 1.0;
  rows.add_less_equal(es, 1.0);

  const LpResult res = maximize(es, rows);
  RealVector y(3);
  if (res.status == LpStatus::kOptimal) {
    y << res.x[0], res.x[1], res.x[2];
  } else {
    y.setZero();
  }
  return {y, 0.0, PairProvenance::kDerivedOracle};
}

}  // namespace

std::string_view to_string(FaceKind kind) {
  switch (kind) {
    case FaceKind::kF00: return "F00";
    case FaceKind::kF01: return "F01";
    case FaceKind::kF02: return "F02";
    case FaceKind::kF03: return "F03";
    case FaceKind::kF04: return "F04";
    case FaceKind::kF11: return "F11";
    case FaceKind::kF12: return "F12";
    case FaceKind::kF13: return "F13";
    case FaceKind::kF14: return "F14";
    case FaceKind::kF15: return "F15";
    case FaceKind::kF21: return "F21";
    case FaceKind::kF22: return "F22";
    case FaceKind::kF23: return "F23";
    case FaceKind::kF24: return "F24";
  }
  return "?";
}

int face_dimension(FaceKind kind) {
  switch (kind) {
    case FaceKind::kF00:
    case FaceKind::kF01:
    case FaceKind::kF02:
    case FaceKind::kF03:
    case FaceKind::kF04:
      return 0;
    case FaceKind::kF11:
    case FaceKind::kF12:
    case FaceKind::kF13:
    case FaceKind::kF14:
    case FaceKind::kF15:
      return 1;
    case FaceKind::kF21:
    case FaceKind::kF22:
    case FaceKind::kF23:
    case FaceKind::kF24:
      return 2;
  }
  return -1;
}

std::string_view to_string(PairProvenance p) {
  return p == PairProvenance::kClosedForm ? "closed-form"
                                          : "derived-oracle";
}

std::string FaceDescriptor::label() const {
  std::ostringstream os;
  os << to_string(kind);
  if (parameter) {
    os.precision(17);
    os << '(' << *parameter << ')';
  }
  return os.str();
}

FaceDescriptor make_face(FaceKind kind, std::optional<double> parameter) {
  const bool parametric = is_point_family(kind) || is_segment_family(kind);
  if (parametric != parameter.has_value()) {
    throw InputError(std::string(to_string(kind)) +
                     (parametric ? " needs a parameter" : " takes no parameter"));
  }
  if (parameter && !(*parameter > 0.0 && *parameter <= kHorizon)) {
    throw InputError("face parameter must lie in (0, pi/4]");
  }
  FaceDescriptor f{kind, parameter, {}};
  const double T = kHorizon;
  switch (kind) {
    case FaceKind::kF00:
      for (Curve c : kAllCurves) f.arcs.push_back(point_arc(c, 0.0));
      break;
    case FaceKind::kF01: f.arcs = {point_arc(Curve::kG1, *parameter)}; break;
    case FaceKind::kF02: f.arcs = {point_arc(Curve::kG2, *parameter)}; break;
    case FaceKind::kF03: f.arcs = {point_arc(Curve::kG3, *parameter)}; break;
    case FaceKind::kF04: f.arcs = {point_arc(Curve::kG4, *parameter)}; break;
    case FaceKind::kF11:
      f.arcs = {point_arc(Curve::kG1, *parameter),
                point_arc(Curve::kG3, t_of_theta(*parameter))};
      break;
    case FaceKind::kF12:
      f.arcs = {point_arc(Curve::kG4, *parameter),
                point_arc(Curve::kG2, t_of_theta(*parameter))};
      break;
    case FaceKind::kF13:
      f.arcs = {point_arc(Curve::kG1, T), point_arc(Curve::kG2, T)};
      break;
    case FaceKind::kF14:
      f.arcs = {point_arc(Curve::kG3, T), point_arc(Curve::kG4, T)};
      break;
    case FaceKind::kF15:
      f.arcs = {point_arc(Curve::kG2, T), point_arc(Curve::kG3, T)};
      break;
    case FaceKind::kF21:
      f.arcs = {point_arc(Curve::kG1, T), point_arc(Curve::kG2, T),
                point_arc(Curve::kG3, T)};
      break;
    case FaceKind::kF22:
      f.arcs = {point_arc(Curve::kG2, T), point_arc(Curve::kG3, T),
                point_arc(Curve::kG4, T)};
      break;
    case FaceKind::kF23:
      f.arcs = {full_arc(Curve::kG1), full_arc(Curve::kG2),
                point_arc(Curve::kG3, 0.0), point_arc(Curve::kG4, 0.0)};
      break;
    case FaceKind::kF24:
      f.arcs = {full_arc(Curve::kG3), full_arc(Curve::kG4),
                point_arc(Curve::kG1, 0.0), point_arc(Curve::kG2, 0.0)};
      break;
  }
  return f;
}

std::vector<FaceDescriptor> enumerate_faces(std::span<const double> t_grid,
                                            std::span<const double> theta_grid) {
  require_grid(t_grid, "t");
  require_grid(theta_grid, "theta");
  std::vector<FaceDescriptor> faces;
  faces.reserve(1 + 4 * t_grid.size() + 2 * theta_grid.size() + 7);
  faces.push_back(make_face(FaceKind::kF00));
  for (FaceKind k : {FaceKind::kF01, FaceKind::kF02, FaceKind::kF03,
                     FaceKind::kF04}) {
    for (double t : t_grid) faces.push_back(make_face(k, t));
  }
  for (FaceKind k : {FaceKind::kF11, FaceKind::kF12}) {
    for (double th : theta_grid) faces.push_back(make_face(k, th));
  }
  for (FaceKind k : {FaceKind::kF13, FaceKind::kF14, FaceKind::kF15,
                     FaceKind::kF21, FaceKind::kF22, FaceKind::kF23,
                     FaceKind::kF24}) {
    faces.push_back(make_face(k));
  }
  return faces;
}

double parameter_distance(const FaceDescriptor& face, Curve curve, double t) {
  double best = kInf;
  bool has_apex = false;
  for (const auto& arc : face.arcs) {
    if (arc.lo == 0.0) has_apex = true;
    if (arc.curve != curve) continue;
    if (t < arc.lo) {
      best = std::min(best, arc.lo - t);
    } else if (t > arc.hi) {
      best = std::min(best, t - arc.hi);
    } else {
      best = 0.0;
    }
  }
  if (t == 0.0 && has_apex) best = 0.0;
  return best;
}

std::vector<RealVector> face_points(const FaceDescriptor& face,
                                    const BodySamples& body) {
  std::vector<RealVector> corners;
  for (const auto& arc : face.arcs) {
    push_unique(corners, gamma(arc.curve, arc.lo));
    if (arc.hi > arc.lo) push_unique(corners, gamma(arc.curve, arc.hi));
  }
  std::vector<RealVector> pts = corners;
  for (const auto& arc : face.arcs) {
    if (arc.hi <= arc.lo) continue;
    for (double t : body.on(arc.curve).params) {
      if (t > arc.lo && t < arc.hi) pts.push_back(gamma(arc.curve, t));
    }
  }
  if (corners.size() > 1) {
    RealVector centroid = RealVector::Zero(3);
    for (std::size_t i = 0; i < corners.size(); ++i) {
      centroid += corners[i];
      for (std::size_t j = i + 1; j < corners.size(); ++j) {
        pts.push_back(0.5 * (corners[i] + corners[j]));
      }
    }
    pts.push_back(centroid / static_cast<double>(corners.size()));
  }
  return pts;
}

ExposingPair exposing_pair(const FaceDescriptor& face, const BodySamples& body) {
  if (body.variant != BodyVariant::kRaw) {
    throw InputError("exposing pairs are derived on the raw body C");
  }
  const auto p = [](int i) { return endpoint(i); };
  switch (face.kind) {
    case FaceKind::kF01:
      return {point_normal(Curve::kG1, *face.parameter),
              point_offset(Curve::kG1, *face.parameter),
              PairProvenance::kClosedForm};
    case FaceKind::kF04:
      return {point_normal(Curve::kG4, *face.parameter),
              point_offset(Curve::kG4, *face.parameter),
              PairProvenance::kClosedForm};
    case FaceKind::kF03: {
      const double th = theta_of_t(*face.parameter);
      return {point_normal(Curve::kG3, th), point_offset(Curve::kG3, th),
              PairProvenance::kClosedForm};
    }
    case FaceKind::kF02: {
      const double th = theta_of_t(*face.parameter);
      return {point_normal(Curve::kG2, th), point_offset(Curve::kG2, th),
              PairProvenance::kClosedForm};
    }
    case FaceKind::kF11: {
      const ThetaBundle b = theta_bundle(*face.parameter);
      return {b.y_theta, b.d_theta, PairProvenance::kClosedForm};
    }
    case FaceKind::kF12: {
      const ThetaBundle b = theta_bundle(*face.parameter);
      return {b.y_prime_theta, b.d_theta, PairProvenance::kClosedForm};
    }
    case FaceKind::kF21: return plane_pair(p(1), p(2), p(3), body);
    case FaceKind::kF22: return plane_pair(p(2), p(3), p(4), body);
    case FaceKind::kF23: return plane_pair(p(0), p(1), p(2), body);
    case FaceKind::kF24: return plane_pair(p(0), p(3), p(4), body);
    case FaceKind::kF13:
      return sum_pair(plane_pair(p(1), p(2), p(3), body),
                      plane_pair(p(0), p(1), p(2), body));
    case FaceKind::kF14:
      return sum_pair(plane_pair(p(2), p(3), p(4), body),
                      plane_pair(p(0), p(3), p(4), body));
    case FaceKind::kF15:
      return sum_pair(plane_pair(p(1), p(2), p(3), body),
                      plane_pair(p(2), p(3), p(4), body));
    case FaceKind::kF00:
      return apex_pair(body);
  }
  throw InputError("unknown face kind");
}

ExposureReport verify_exposure(const FaceDescriptor& face,
                               const ExposingPair& pair,
                               const BodySamples& body, const Tolerance& tol) {
  if (body.variant != BodyVariant::kRaw) {
    throw InputError("verify_exposure expects samples of the raw body C");
  }
  if (pair.y.size() != 3 || !pair.y.allFinite() || !std::isfinite(pair.d)) {
    throw InputError("exposing pair for " + face.label() +
                     " must be a finite normal in R^3");
  }
  if (pair.y.norm() == 0.0) {
    throw InputError("exposing pair for " + face.label() + " has zero normal");
  }

  ExposureReport r;
  r.face = face;
  r.pair = pair;
  for (const auto& x : face_points(face, body)) {
    r.max_onface_residual =
        std::max(r.max_onface_residual, std::abs(pair.y.dot(x) - pair.d));
  }
  r.max_support_violation = -kInf;
  std::array<double, kMarginDeltas.size()> margin;
  std::array<std::size_t, kMarginDeltas.size()> count{};
  margin.fill(kInf);
  for (const auto& cs : body.curves) {
    for (std::size_t k = 0; k < cs.points.size(); ++k) {
      const double v = pair.y.dot(cs.points[k]) - pair.d;
      r.max_support_violation = std::max(r.max_support_violation, v);
      const double dist = parameter_distance(face, cs.curve, cs.params[k]);
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

std::array<double, 6> identity_suite(double t, double theta) {
  const ThetaBundle b = theta_bundle(theta);
  const RealVector g1 = gamma(Curve::kG1, t);
  const RealVector g2 = gamma(Curve::kG2, t);
  const RealVector g3 = gamma(Curve::kG3, t);
  const RealVector g4 = gamma(Curve::kG4, t);
  const RealVector y3 = point_normal(Curve::kG3, theta);
  const double ct = std::cos(b.t_theta);
  const double st = std::sin(b.t_theta);
  const double sth = std::sin(theta);
  const double cth = std::cos(theta);
  return {
      std::abs(g1.dot(b.y_theta) - ct * (std::cos(t - theta) - cth)),
      std::abs(g3.dot(b.y_theta) - sth * (std::cos(t - b.t_theta) - ct)),
      std::abs(g2.dot(b.y_theta) - ct * (sth - std::sin(t + theta))),
      std::abs(g4.dot(b.y_theta) - sth * (st - std::sin(t + b.t_theta))),
      std::abs(g1.dot(y3) -
               (ct * (std::cos(t - theta) - cth) + std::cos(t) - 1.0)),
      std::abs(g2.dot(y3) - (ct * (sth - std::sin(t + theta)) - std::sin(t))),
  };
}

}  // namespace conefx
