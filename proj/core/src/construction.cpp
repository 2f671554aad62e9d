#include "conefx/construction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace conefx {

namespace {

// Parameters produced by arccos/atan may land an ulp outside [0, T].
constexpr double kRangeSlack = 1e-12;

double clamp_param(double t, const char* what) {
  if (!(t >= -kRangeSlack && t <= kHorizon + kRangeSlack)) {
    throw InputError(std::string(what) + " outside [0, pi/4]: " +
                     std::to_string(t));
  }
  return std::clamp(t, 0.0, kHorizon);
}

void require_theta(double theta) {
  if (!(theta > 0.0 && theta <= kHorizon + kRangeSlack)) {
    throw InputError("theta outside (0, pi/4]: " + std::to_string(theta));
  }
}

RealVector vec3(double a, double b, double c) {
  RealVector v(3);
  v << a, b, c;
  return v;
}

}  // namespace

Curve curve_from_id(int id) {
  if (id < 1 || id > 4) {
    throw InputError("curve id must be 1..4, got " + std::to_string(id));
  }
  return static_cast<Curve>(id);
}

RealVector gamma(Curve curve, double t) {
  t = clamp_param(t, "curve parameter");
  const double s = std::sin(t);
  // 1 - cos t without cancellation, so small-t samples stay off the planes
  // x1 = 0 and x3 = 0 where they should.
  const double h = std::sin(t / 2.0);
  const double v = 2.0 * h * h;
  switch (curve) {
    case Curve::kG1: return vec3(0.0, -s, -v);
    case Curve::kG2: return vec3(0.0, -v, -s);
    case Curve::kG3: return vec3(-s, v, 0.0);
    case Curve::kG4: return vec3(-v, s, 0.0);
  }
  throw InputError("unknown curve");
}

RealVector curve_center(Curve curve) {
  switch (curve) {
    case Curve::kG1: return vec3(0.0, 0.0, -1.0);
    case Curve::kG2: return vec3(0.0, -1.0, 0.0);
    case Curve::kG3: return vec3(0.0, 1.0, 0.0);
    case Curve::kG4: return vec3(-1.0, 0.0, 0.0);
  }
  throw InputError("unknown curve");
}

RealVector endpoint(int index) {
  if (index == 0) return RealVector::Zero(3);
  return gamma(curve_from_id(index), kHorizon);
}

CurvePoint curve_point(Curve curve, double t) {
  return {curve, t, gamma(curve, t)};
}

RealVector shift_vector() { return vec3(0.5, 0.0, 0.5); }

RealVector to_shifted(const RealVector& x) {
  if (x.size() != 3) throw InputError("body points live in R^3");
  return 2.0 * x + shift_vector();
}

RealVector mirror(const RealVector& x) {
  if (x.size() != 3) throw InputError("mirror acts on R^3");
  return vec3(x[2], -x[1], x[0]);
}

Curve mirror(Curve curve) {
  switch (curve) {
    case Curve::kG1: return Curve::kG4;
    case Curve::kG2: return Curve::kG3;
    case Curve::kG3: return Curve::kG2;
    case Curve::kG4: return Curve::kG1;
  }
  throw InputError("unknown curve");
}

// 1 + sin - cos cancels for small theta; 1 - cos theta = 2 sin^2(theta/2).
double phi(double theta) {
  require_theta(theta);
  return 1.0 / (1.0 + std::tan(theta / 2.0));
}

double phi_derivative(double theta) {
  require_theta(theta);
  const double h = std::sin(theta / 2.0);
  const double denom = std::sin(theta) + 2.0 * h * h;
  return -2.0 * h * h / (denom * denom);
}

MonotonicityScan monotonicity_scan(std::span<const double> grid) {
  MonotonicityScan scan;
  scan.points = grid.size();
  scan.largest_step = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (k > 0 && !(grid[k] > grid[k - 1])) {
      throw InputError("monotonicity grid must be strictly increasing");
    }
    if (!(phi_derivative(grid[k]) < 0.0)) scan.derivative_negative = false;
    if (k > 0) {
      const double step = phi(grid[k]) - phi(grid[k - 1]);
      scan.largest_step = std::max(scan.largest_step, step);
      if (!(step < 0.0)) scan.strictly_decreasing = false;
    }
  }
  return scan;
}

double t_of_theta(double theta) {
  return std::min(std::acos(phi(theta)), kHorizon);
}

double theta_of_t(double t) {
  t = clamp_param(t, "t");
  return std::min(2.0 * std::atan(1.0 / std::cos(t) - 1.0), kHorizon);
}

ThetaBundle theta_bundle(double theta) {
  require_theta(theta);
  theta = std::min(theta, kHorizon);
  ThetaBundle b;
  b.theta = theta;
  b.t_theta = t_of_theta(theta);
  const double st = std::sin(b.t_theta);
  const double ct = std::cos(b.t_theta);
  const double sth = std::sin(theta);
  const double cth = std::cos(theta);
  b.y_theta = vec3(-st * sth, -ct * sth, ct * cth);
  b.y_prime_theta = vec3(ct * cth, sth * ct, -st * sth);
  b.d_theta = ct * (1.0 - cth);
  b.d_theta_alt = sth * (1.0 - ct);
  return b;
}

RealVector point_normal(Curve curve, double theta) {
  require_theta(theta);
  switch (curve) {
    case Curve::kG1:
      return vec3(1.0, -std::sin(theta), std::cos(theta));
    case Curve::kG4:
      return vec3(std::cos(theta), std::sin(theta), 1.0);
    case Curve::kG3:
      return theta_bundle(theta).y_theta + vec3(0.0, 0.0, 1.0);
    case Curve::kG2:
      return theta_bundle(theta).y_prime_theta + vec3(1.0, 0.0, 0.0);
  }
  throw InputError("unknown curve");
}

double point_offset(Curve curve, double theta) {
  require_theta(theta);
  switch (curve) {
    case Curve::kG1:
    case Curve::kG4:
      return 1.0 - std::cos(theta);
    case Curve::kG2:
    case Curve::kG3:
      return theta_bundle(theta).d_theta;
  }
  throw InputError("unknown curve");
}

std::vector<double> parameter_grid(const GridSpec& spec) {
  if (spec.uniform_points < 2) {
    throw InputError("parameter grid needs at least 2 uniform points");
  }
  if (spec.refinement_points < 0 ||
      !(spec.refinement_ratio > 0.0 && spec.refinement_ratio < 1.0)) {
    throw InputError("invalid refinement cluster");
  }
  const int n = spec.uniform_points;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n + spec.refinement_points));
  for (int k = 0; k < n; ++k) {
    grid.push_back(k == n - 1 ? kHorizon : kHorizon * k / (n - 1));
  }
  double h = kHorizon / (n - 1);
  for (int k = 0; k < spec.refinement_points; ++k) {
    h *= spec.refinement_ratio;
    grid.push_back(h);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<double> level_grid(int uniform_points, double eps) {
  if (uniform_points < 2) {
    throw InputError("level grid needs at least 2 uniform points");
  }
  if (!(eps > 0.0 && eps <= kHorizon)) {
    throw InputError("refinement level must lie in (0, pi/4]");
  }
  const int n = uniform_points;
  const double h = kHorizon / (n - 1);
  std::vector<double> grid{0.0, eps};
  for (double t = 2.0 * eps; t < h; t *= 2.0) grid.push_back(t);
  for (int k = 1; k < n; ++k) {
    const double t = k == n - 1 ? kHorizon : kHorizon * k / (n - 1);
    if (t > eps) grid.push_back(t);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<double> theta_grid(int n) {
  if (n < 1) throw InputError("theta grid needs at least one point");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    grid.push_back(k == n ? kHorizon : kHorizon * k / n);
  }
  return grid;
}

std::size_t BodySamples::size() const {
  std::size_t n = 0;
  for (const auto& c : curves) n += c.points.size();
  return n;
}

BodySamples sample_body(const std::array<std::vector<double>, 4>& grids,
                        BodyVariant variant) {
  BodySamples body;
  body.variant = variant;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& grid = grids[i];
    if (grid.size() < 2 || grid.front() != 0.0 || grid.back() != kHorizon) {
      throw InputError("sampling grid must include both endpoints 0 and pi/4");
    }
    if (!std::is_sorted(grid.begin(), grid.end())) {
      throw InputError("sampling grid must be sorted");
    }
    auto& cs = body.curves[i];
    cs.curve = kAllCurves[i];
    cs.params = grid;
    cs.points.reserve(grid.size());
    for (double t : grid) {
      const RealVector x = gamma(cs.curve, t);
      cs.points.push_back(variant == BodyVariant::kShifted ? to_shifted(x) : x);
    }
  }
  return body;
}

BodySamples sample_body(std::span<const double> grid, BodyVariant variant) {
  std::vector<double> g(grid.begin(), grid.end());
  return sample_body(std::array<std::vector<double>, 4>{g, g, g, g}, variant);
}

BodySamples shifted(const BodySamples& raw) {
  if (raw.variant != BodyVariant::kRaw) {
    throw InputError("body is already shifted");
  }
  BodySamples out = raw;
  out.variant = BodyVariant::kShifted;
  for (auto& cs : out.curves) {
    for (auto& p : cs.points) p = to_shifted(p);
  }
  return out;
}

WitnessPair witness() {
  return {make_vector({-1.0, 0.0, -1.0, 2.0}), make_vector({1.0, 0.0, 0.0, -2.0})};
}

}  // namespace conefx
