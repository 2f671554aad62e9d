#include "conefx/reporting.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "conefx/construction.hpp"
#include "conefx/face_catalogue.hpp"
#include "conefx/homogenization.hpp"
#include "conefx/nice3d.hpp"
#include "conefx/niceness.hpp"

namespace conefx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kIdentityCeiling = 1e-12;
constexpr int kPhiScanPoints = 1000;
constexpr int kControlSamples = 64;
constexpr int kPolarDirections = 64;
constexpr int kDiscSamples = 256;
constexpr double kDiscTolerance = 1e-3;
constexpr std::size_t kListedFailures = 20;

Json vec_json(const RealVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number_json(v[i]));
  return a;
}

Json section(bool pass) {
  Json s = Json::object();
  s["pass"] = pass;
  return s;
}

BodySamples raw_body(const RunConfig& c) {
  GridSpec spec;
  spec.uniform_points = c.samples_per_curve;
  return sample_body(parameter_grid(spec));
}

std::vector<double> uniform_t(int n) {
  std::vector<double> g;
  for (int k = 0; k < n; ++k) g.push_back(k == n - 1 ? kHorizon : kHorizon * k / (n - 1));
  return g;
}

Json construction_section(const RunConfig& c) {
  const double r = 1.0 / std::numbers::sqrt2;
  const std::array<RealVector, 5> expected = {
      make_vector({0.0, 0.0, 0.0}), make_vector({0.0, -r, r - 1.0}),
      make_vector({0.0, r - 1.0, -r}), make_vector({-r, 1.0 - r, 0.0}),
      make_vector({r - 1.0, r, 0.0})};
  double endpoint_res = 0.0;
  for (int i = 0; i <= 4; ++i) {
    endpoint_res = std::max(endpoint_res, (endpoint(i) - expected[i]).lpNorm<Eigen::Infinity>());
  }
  for (Curve cv : kAllCurves) {
    endpoint_res = std::max(endpoint_res, gamma(cv, 0.0).lpNorm<Eigen::Infinity>());
  }

  double circle_res = 0.0;
  for (double t : uniform_t(c.samples_per_curve)) {
    for (Curve cv : kAllCurves) {
      circle_res = std::max(circle_res,
                            std::abs((gamma(cv, t) - curve_center(cv)).norm() - 1.0));
    }
  }

  const std::vector<double> scan_grid = theta_grid(kPhiScanPoints);
  const MonotonicityScan scan = monotonicity_scan(scan_grid);
  const double phi_top = std::abs(phi(kHorizon) - r);
  const double phi_small = std::abs(phi(1e-6) - 1.0);

  bool t_increasing = true;
  double d_mismatch = 0.0;
  double prev = 0.0;
  for (double th : scan_grid) {
    const ThetaBundle b = theta_bundle(th);
    if (!(b.t_theta > prev)) t_increasing = false;
    prev = b.t_theta;
    d_mismatch = std::max(d_mismatch, std::abs(b.d_theta - b.d_theta_alt));
  }
  const double t_top = std::abs(t_of_theta(kHorizon) - kHorizon);
  const double t_bottom = t_of_theta(1e-20);

  const WitnessPair w = witness();
  const double qu = w.q.dot(w.u);

  const bool pass = endpoint_res <= kIdentityCeiling && circle_res <= kIdentityCeiling &&
                    scan.strictly_decreasing && scan.derivative_negative &&
                    phi_top <= kIdentityCeiling && phi_small <= 1e-5 && t_increasing &&
                    t_top <= 1e-9 && t_bottom <= 1e-9 && d_mismatch <= kIdentityCeiling &&
                    qu == -5.0;
  Json s = section(pass);
  s["endpoint_residual"] = endpoint_res;
  s["circle_residual"] = circle_res;
  s["phi_scan"] = {{"points", scan.points},
                   {"strictly_decreasing", scan.strictly_decreasing},
                   {"derivative_negative", scan.derivative_negative},
                   {"largest_step", scan.largest_step}};
  s["phi_at_T_error"] = phi_top;
  s["phi_near_0_error"] = phi_small;
  s["t_theta_increasing"] = t_increasing;
  s["t_theta_at_T_error"] = t_top;
  s["t_theta_near_0"] = t_bottom;
  s["d_theta_mismatch"] = d_mismatch;
  s["witness_qu"] = qu;
  return s;
}

Json identity_section(const RunConfig& c) {
  const double ceiling = std::min(c.eq_abs, kIdentityCeiling);
  std::array<double, 6> worst{};
  std::size_t evaluations = 0;
  for (double th : theta_grid(c.theta_grid_size)) {
    for (double t : uniform_t(c.samples_per_curve)) {
      const auto res = identity_suite(t, th);
      for (std::size_t i = 0; i < res.size(); ++i) worst[i] = std::max(worst[i], res[i]);
      ++evaluations;
    }
  }
  const double max_res = *std::max_element(worst.begin(), worst.end());
  Json s = section(max_res <= ceiling);
  s["threshold"] = ceiling;
  s["evaluations"] = evaluations;
  s["max_residual"] = max_res;
  s["per_identity"] = worst;
  return s;
}

struct FaceRun {
  FaceDescriptor face;
  ExposingPair pair;
  ExposureReport report;
};

std::vector<FaceRun> run_faces(const RunConfig& c, const BodySamples& body) {
  const Tolerance tol{c.eq_abs, 0.0};
  const std::vector<double> thetas = theta_grid(c.theta_grid_size);
  std::vector<FaceRun> runs;
  for (const auto& f : enumerate_faces(thetas, thetas)) {
    ExposingPair pair = exposing_pair(f, body);
    ExposureReport rep = verify_exposure(f, pair, body, tol);
    runs.push_back({f, std::move(pair), std::move(rep)});
  }
  return runs;
}

Json summarize(const std::vector<ExposureReport>& reports) {
  std::size_t failed = 0;
  double max_res = 0.0;
  double max_violation = -kInf;
  std::array<double, kMarginDeltas.size()> min_margin;
  min_margin.fill(kInf);
  std::set<std::string_view> kinds;
  Json failures = Json::array();
  for (const auto& r : reports) {
    kinds.insert(to_string(r.face.kind));
    max_res = std::max(max_res, r.max_onface_residual);
    max_violation = std::max(max_violation, r.max_support_violation);
    for (std::size_t j = 0; j < r.margins.size(); ++j) {
      min_margin[j] = std::min(min_margin[j], r.margins[j].margin);
    }
    if (!r.pass) {
      ++failed;
      if (failures.size() < kListedFailures) failures.push_back(r.face.label());
    }
  }
  Json s = section(failed == 0 && !reports.empty());
  s["faces"] = reports.size();
  s["kinds"] = kinds.size();
  s["failed"] = failed;
  s["failed_faces"] = failures;
  s["max_onface_residual"] = max_res;
  s["max_support_violation"] = number_json(max_violation);
  Json m = Json::array();
  for (std::size_t j = 0; j < kMarginDeltas.size(); ++j) {
    m.push_back({{"delta", kMarginDeltas[j]}, {"min_margin", number_json(min_margin[j])}});
  }
  s["min_margins"] = m;
  return s;
}

Json homogenization_section(const RunConfig& c, const BodySamples& body,
                            const std::vector<FaceRun>& faces) {
  const Tolerance tol{c.eq_abs, 0.0};
  const ConeModel cone = homogenize(shifted(body));
  std::vector<ExposureReport> reports;
  for (const auto& f : faces) {
    const LiftedPair lifted = lift_pair(shifted_pair(f.pair));
    reports.push_back(verify_cone_exposure(lifted, cone, f.face, body, tol));
  }
  Json s = summarize(reports);
  s["generators"] = cone.size();

  const auto dirs = direction_fan(kPolarDirections, 1.0);
  const PolarReport square = polar_correspondence_check(square_body(), dirs, tol);
  const PolarReport disc = polar_correspondence_check(
      disc_body(kDiscSamples), dirs, Tolerance{kDiscTolerance, 0.0});
  auto polar_json = [](const PolarReport& p) {
    return Json{{"pass", p.pass},
                {"directions", p.directions},
                {"interior_margin", p.interior_margin},
                {"max_membership_value", p.max_membership_value},
                {"sharpness_failures", p.sharpness_failures},
                {"zero_direction_ok", p.zero_direction_ok}};
  };
  s["polar"] = {{"square", polar_json(square)}, {"disc", polar_json(disc)}};
  s["pass"] = s["pass"].get<bool>() && square.pass && disc.pass;
  return s;
}

Json perp_section() {
  const auto pts = face_slice_points();
  const PerpSpace ps = perp_space(pts);
  const RealVector ref = make_vector({1.0, 0.0, 0.0, -2.0}).normalized();
  double angle = kInf;
  if (ps.basis.size() == 1) {
    const double cosv = std::min(1.0, std::abs(ps.basis.front().dot(ref)));
    // acos is ill-conditioned near 1; use the sine of the angle instead.
    const RealVector resid = ps.basis.front() - ps.basis.front().dot(ref) * ref;
    angle = std::atan2(resid.norm(), cosv);
  }
  Json s = section(!ps.degenerate && ps.basis.size() == 1 && angle < 1e-9);
  s["rank"] = ps.rank;
  s["degenerate"] = ps.degenerate;
  Json basis = Json::array();
  for (const auto& b : ps.basis) basis.push_back(vec_json(b));
  s["basis"] = basis;
  s["angle_to_reference"] = number_json(angle);
  return s;
}

Json sweep_json(const NicenessVerdict& v) {
  Json levels = Json::array();
  for (const auto& l : v.levels) {
    levels.push_back(
        {{"epsilon", l.epsilon},
         {"lambda_star", l.profile.lambda_star ? number_json(*l.profile.lambda_star)
                                               : Json("none")},
         {"product", number_json(l.product)},
         {"achieving_curve", l.profile.achieving.curve},
         {"achieving_t", l.profile.achieving.t},
         {"lower_bounds", l.profile.lower_bounds.size()},
         {"upper_bounds", l.profile.upper_bounds.size()},
         {"unconditional", l.profile.unconditional},
         {"infeasible_constant", l.profile.infeasible_constant},
         {"max_bound_residual", l.profile.max_bound_residual}});
  }
  return {{"face", v.face_id},
          {"verdict", to_string(v.verdict)},
          {"in_closure", v.closure.in_closure},
          {"closure_max_closed_form", number_json(v.closure.max_closed_form)},
          {"closure_max_inner_product", number_json(v.closure.max_inner_product)},
          {"closure_form_mismatch", v.closure.max_form_mismatch},
          {"closure_generators", v.closure.generators_checked},
          {"fitted_exponent",
           v.fitted_exponent ? number_json(*v.fitted_exponent) : Json("none")},
          {"witness", vec_json(v.witness)},
          {"dual_witness", vec_json(v.dual_witness)},
          {"levels", levels}};
}

Json niceness_section(const RunConfig& c) {
  const NicenessVerdict main =
      divergence_sweep(construction_problem(c.samples_per_curve), c.eps_list);
  const NicenessVerdict control =
      divergence_sweep(square_control_problem(kControlSamples), c.eps_list);
  const bool gamma1_dominates =
      std::all_of(main.levels.begin(), main.levels.end(),
                  [](const SweepLevel& l) { return l.profile.achieving.curve == 1; });
  Json s = section(main.verdict == Verdict::kNotNiceEvidence && main.closure.in_closure &&
                   control.verdict == Verdict::kInconclusive && gamma1_dominates);
  s["gamma1_achieves_lambda_star"] = gamma1_dominates;
  s["construction"] = sweep_json(main);
  s["control"] = sweep_json(control);
  return s;
}

Json technical_section() {
  Json rows = Json::array();
  bool pass = true;
  for (int k = 0; k <= 100; ++k) {
    const double alpha = -10.0 + 0.2 * k;
    const TAlpha ta = find_t_alpha(alpha);
    pass = pass && ta.grid_positive && (alpha > 0.0 || ta.t_alpha == std::numbers::pi / 2);
    if (k % 10 == 0) {
      rows.push_back({{"alpha", alpha}, {"t_alpha", ta.t_alpha}, {"grid_min", ta.grid_min}});
    }
  }
  const bool half_pi = find_t_alpha(-3.0).t_alpha == std::numbers::pi / 2;
  Json s = section(pass && half_pi);
  s["alphas"] = 101;
  s["alpha_minus_3_is_half_pi"] = half_pi;
  s["samples"] = rows;
  return s;
}

Json nice3d_json(const Nice3dReport& r) {
  return {{"name", r.name},
          {"pass", r.pass},
          {"q1", vec_json(r.q1)},
          {"q2", vec_json(r.q2)},
          {"normal", vec_json(r.normal)},
          {"q1p1", r.q1p1},
          {"q2p2", r.q2p2},
          {"q1p2", r.q1p2},
          {"q2p1", r.q2p1},
          {"sign_pattern_ok", r.sign_pattern_ok},
          {"exposure_ok", r.exposure_ok},
          {"membership_samples", r.membership_samples},
          {"membership_disagreements", r.membership_disagreements},
          {"dual_face_samples", r.dual_face_samples},
          {"dual_face_outside", r.dual_face_outside}};
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

Json header(const RunConfig& c) {
  return {{"schema", 1}, {"config", c.to_json()}, {"config_hash", config_hash(c)}};
}

}  // namespace

void RunConfig::validate() const {
  if (samples_per_curve < 8) throw InputError("samples per curve must be at least 8");
  if (theta_grid_size < 1) throw InputError("theta grid size must be at least 1");
  if (!(eq_abs > 0.0) || !std::isfinite(eq_abs)) {
    throw InputError("tolerance must be positive and finite");
  }
  if (eps_list.empty()) throw InputError("refinement list is empty");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0 && eps_list[i] < kHorizon)) {
      throw InputError("refinement levels must lie in (0, pi/4)");
    }
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw InputError("refinement levels must be strictly decreasing");
    }
  }
}

Json RunConfig::to_json() const {
  return {{"samples_per_curve", samples_per_curve},
          {"theta_grid_size", theta_grid_size},
          {"eq_abs", eq_abs},
          {"eps_list", eps_list},
          {"control", control}};
}

std::string config_hash(const RunConfig& config) {
  const std::uint64_t h = fnv1a(config.to_json().dump());
  char buf[17];
  const auto res = std::to_chars(buf, buf + 16, h, 16);
  std::string out(buf, res.ptr);
  return std::string(16 - out.size(), '0') + out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json number_json(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

Json run_verify(const RunConfig& config) {
  config.validate();
  const BodySamples body = raw_body(config);
  const std::vector<FaceRun> faces = run_faces(config, body);
  std::vector<ExposureReport> reports;
  for (const auto& f : faces) reports.push_back(f.report);

  Json out = header(config);
  out["claim"] = "cone({1} x C') in R^4 is facially exposed and not nice";
  Json sections = Json::object();
  sections["construction"] = construction_section(config);
  sections["identity_suite"] = identity_section(config);
  sections["face_exposure"] = summarize(reports);
  sections["homogenization"] = homogenization_section(config, body, faces);
  sections["perp_space"] = perp_section();
  sections["niceness"] = niceness_section(config);
  sections["technical"] = technical_section();
  sections["nice3d"] = nice3d_report();

  Json failed = Json::array();
  for (const auto& [name, s] : sections.items()) {
    if (!s.at("pass").get<bool>()) failed.push_back(name);
  }
  out["sections"] = sections;
  out["failed_sections"] = failed;
  out["overall"] = failed.empty() ? "pass" : "fail";
  return out;
}

Json face_atlas(const RunConfig& config) {
  config.validate();
  const BodySamples body = raw_body(config);
  Json faces = Json::array();
  std::vector<ExposureReport> reports;
  for (const auto& f : run_faces(config, body)) {
    Json margins = Json::array();
    for (const auto& m : f.report.margins) {
      margins.push_back({{"delta", m.delta},
                         {"margin", number_json(m.margin)},
                         {"samples", m.samples}});
    }
    Json arcs = Json::array();
    for (const auto& a : f.face.arcs) {
      arcs.push_back({{"curve", curve_id(a.curve)}, {"lo", a.lo}, {"hi", a.hi}});
    }
    faces.push_back({{"kind", to_string(f.face.kind)},
                     {"label", f.face.label()},
                     {"parameter", f.face.parameter ? Json(*f.face.parameter) : Json()},
                     {"dimension", f.face.dimension()},
                     {"arcs", arcs},
                     {"pair",
                      {{"y", vec_json(f.pair.y)},
                       {"d", f.pair.d},
                       {"provenance", to_string(f.pair.provenance)}}},
                     {"report",
                      {{"pass", f.report.pass},
                       {"max_onface_residual", f.report.max_onface_residual},
                       {"max_support_violation", number_json(f.report.max_support_violation)},
                       {"margins", margins}}}});
    reports.push_back(f.report);
  }
  Json out = header(config);
  const Json summary = summarize(reports);
  out["summary"] = summary;
  out["faces"] = faces;
  out["overall"] = summary.at("pass").get<bool>() ? "pass" : "fail";
  return out;
}

std::string sweep_csv(const RunConfig& config) {
  config.validate();
  const SweepProblem problem = config.control
                                   ? square_control_problem(kControlSamples)
                                   : construction_problem(config.samples_per_curve);
  const NicenessVerdict v = divergence_sweep(problem, config.eps_list);
  std::ostringstream os;
  os << "# config_hash," << config_hash(config) << '\n';
  os << "epsilon,lambda_star,product,achieving_curve,achieving_t\n";
  for (const auto& l : v.levels) {
    const double ls = l.profile.lambda_star ? *l.profile.lambda_star
                                            : std::numeric_limits<double>::quiet_NaN();
    os << format_number(l.epsilon) << ',' << format_number(ls) << ','
       << format_number(l.product) << ',' << l.profile.achieving.curve << ','
       << format_number(l.profile.achieving.t) << '\n';
  }
  os << "# verdict," << to_string(v.verdict) << '\n';
  return os.str();
}

Json nice3d_report() {
  const Nice3dReport octant = nice3d_ingredients(octant_example());
  const Nice3dReport disc = nice3d_ingredients(half_disc_example());
  bool rejection = false;
  try {
    Nice3dInput bad = octant_example();
    bad.h1 = make_vector({0.0, 0.0, 1.0});
    nice3d_ingredients(bad);
  } catch (const InputError&) {
    rejection = true;
  }
  Json s = section(octant.pass && disc.pass && rejection);
  s["examples"] = Json::array({nice3d_json(octant), nice3d_json(disc)});
  s["perp_normal_rejected"] = rejection;
  return s;
}

}  // namespace conefx
