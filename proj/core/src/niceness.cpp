#include "conefx/niceness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "conefx/homogenization.hpp"
#include "conefx/lp.hpp"

namespace conefx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// <q, g> at or below this (relative) is treated as satisfied when <u, g> = 0.
constexpr double kConstantSlack = 1e-12;

std::vector<double> unit_ladder_grid(int uniform_points, double eps) {
  const int n = uniform_points;
  const double h = 1.0 / (n - 1);
  std::vector<double> grid{0.0, eps};
  for (double s = 2.0 * eps; s < h; s *= 2.0) grid.push_back(s);
  for (int k = 1; k < n; ++k) {
    const double s = k == n - 1 ? 1.0 : static_cast<double>(k) / (n - 1);
    if (s > eps) grid.push_back(s);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

PerpSpace perp_space(std::span<const RealVector> face_points) {
  if (face_points.size() < 3) {
    throw InputError("perp_space needs at least 3 face points");
  }
  PerpSpace out;
  out.rank = numerical_rank(face_points);
  out.basis = nullspace(face_points);
  const int dim = static_cast<int>(face_points.front().size());
  out.degenerate =
      out.rank < std::min(static_cast<int>(face_points.size()), dim);
  return out;
}

std::vector<RealVector> face_slice_points() {
  std::vector<RealVector> pts;
  for (int i : {0, 3, 4}) {
    const RealVector x = to_shifted(endpoint(i));
    RealVector g(4);
    g << 1.0, x[0], x[1], x[2];
    pts.push_back(g);
  }
  return pts;
}

double psi(double t, double lambda) {
  return 2.0 * (2.0 * (lambda + 1.0) * (std::cos(t) - 1.0) + std::sin(t));
}

double psi_inner_product(double t, double lambda) {
  const WitnessPair w = witness();
  const RealVector x = to_shifted(gamma(Curve::kG1, t));
  RealVector g(4);
  g << 1.0, x[0], x[1], x[2];
  return g.dot(w.q - lambda * w.u);
}

ConstraintClass classify(const RealVector& g, const RealVector& q,
                         const RealVector& u) {
  const double cu = u.dot(g);
  const double cq = q.dot(g);
  const double scale = std::max(1.0, g.norm() * std::max(q.norm(), u.norm()));
  if (std::abs(cu) <= kZeroCoupling * scale) {
    return cq <= kConstantSlack * scale ? ConstraintClass::kUnconditional
                                        : ConstraintClass::kInfeasibleConstant;
  }
  return cu > 0.0 ? ConstraintClass::kLower : ConstraintClass::kUpper;
}

LambdaProfile lambda_feasibility(const ConeModel& cone, const RealVector& q,
                                 const RealVector& u) {
  validate(cone);
  if (q.size() != cone.dim() || u.size() != cone.dim()) {
    throw InputError("witness dimension does not match the cone");
  }
  LambdaProfile p;
  p.epsilon = kInf;
  std::vector<double> lowers;
  std::vector<double> uppers;
  double best_lower = -kInf;
  for (std::size_t k = 0; k < cone.size(); ++k) {
    const auto& g = cone.generators[k];
    const GeneratorTag tag = cone.tag(k);
    if (tag.t > 0.0) p.epsilon = std::min(p.epsilon, tag.t);
    const double cu = u.dot(g);
    const double cq = q.dot(g);
    switch (classify(g, q, u)) {
      case ConstraintClass::kUnconditional:
        ++p.unconditional;
        break;
      case ConstraintClass::kInfeasibleConstant:
        ++p.infeasible_constant;
        break;
      case ConstraintClass::kLower: {
        const double lam = cq / cu;
        p.lower_bounds.push_back({lam, tag});
        lowers.push_back(lam);
        p.max_bound_residual =
            std::max(p.max_bound_residual, std::abs(cq - lam * cu));
        if (lam > best_lower) {
          best_lower = lam;
          p.achieving = tag;
        }
        break;
      }
      case ConstraintClass::kUpper: {
        const double lam = cq / cu;
        p.upper_bounds.push_back({lam, tag});
        uppers.push_back(lam);
        p.max_bound_residual =
            std::max(p.max_bound_residual, std::abs(cq - lam * cu));
        break;
      }
    }
  }
  if (p.infeasible_constant == 0) {
    p.feasible = interval_feasibility(lowers, uppers);
  }
  if (p.feasible) p.lambda_star = p.feasible->lo;
  if (!std::isfinite(p.epsilon)) p.epsilon = 0.0;
  return p;
}

std::string_view to_string(Verdict v) {
  return v == Verdict::kNotNiceEvidence ? "NotNiceEvidence" : "Inconclusive";
}

SweepProblem construction_problem(int samples_per_curve) {
  if (samples_per_curve < 2) {
    throw InputError("construction sweep needs at least 2 samples per curve");
  }
  const WitnessPair w = witness();
  SweepProblem p;
  p.face_id = "cone({1} x (2 co{gamma_3, gamma_4} + c))";
  p.q = w.q;
  p.u = w.u;
  p.cone_at = [samples_per_curve](double eps) {
    const std::vector<double> grid = level_grid(samples_per_curve, eps);
    return homogenize(sample_body(grid, BodyVariant::kShifted));
  };
  p.closure = [samples_per_curve, q = w.q]() {
    ClosureCheck c;
    c.max_closed_form = -kInf;
    c.max_inner_product = -kInf;
    GridSpec spec;
    spec.uniform_points = samples_per_curve;
    for (double t : parameter_grid(spec)) {
      const double closed3 = 2.0 * (std::cos(t) - 1.0);
      const double closed4 = -2.0 * std::sin(t);
      const RealVector x3 = to_shifted(gamma(Curve::kG3, t));
      const RealVector x4 = to_shifted(gamma(Curve::kG4, t));
      RealVector g3(4);
      RealVector g4(4);
      g3 << 1.0, x3[0], x3[1], x3[2];
      g4 << 1.0, x4[0], x4[1], x4[2];
      const double ip3 = q.dot(g3);
      const double ip4 = q.dot(g4);
      c.max_closed_form = std::max({c.max_closed_form, closed3, closed4});
      c.max_inner_product = std::max({c.max_inner_product, ip3, ip4});
      c.max_form_mismatch = std::max(
          {c.max_form_mismatch, std::abs(ip3 - closed3), std::abs(ip4 - closed4)});
      c.generators_checked += 2;
    }
    c.in_closure = c.max_closed_form <= 0.0;
    return c;
  };
  return p;
}

SweepProblem square_control_problem(int samples_per_edge) {
  if (samples_per_edge < 2) {
    throw InputError("square control needs at least 2 samples per edge");
  }
  SweepProblem p;
  p.face_id = "cone({1} x {x1 = 1 edge of [-1, 1]^2})";
  p.q = make_vector({-1.0, 1.0, 0.0});
  p.u = make_vector({1.0, -1.0, 0.0});
  // Edges traversed counter-clockwise; edge 1 is the face x1 = 1.
  const std::array<std::pair<RealVector, RealVector>, 4> edges = {{
      {make_vector({1.0, -1.0}), make_vector({1.0, 1.0})},
      {make_vector({1.0, 1.0}), make_vector({-1.0, 1.0})},
      {make_vector({-1.0, 1.0}), make_vector({-1.0, -1.0})},
      {make_vector({-1.0, -1.0}), make_vector({1.0, -1.0})},
  }};
  p.cone_at = [samples_per_edge, edges](double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
      throw InputError("square control refinement must lie in (0, 1)");
    }
    ConeModel cone;
    cone.provenance = "cone({1} x [-1, 1]^2), boundary samples";
    const std::vector<double> grid = unit_ladder_grid(samples_per_edge, eps);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      for (double s : grid) {
        const RealVector x = (1.0 - s) * edges[e].first + s * edges[e].second;
        cone.generators.push_back(make_vector({1.0, x[0], x[1]}));
        cone.tags.push_back({static_cast<int>(e) + 1, s});
      }
    }
    return cone;
  };
  p.closure = [samples_per_edge, q = p.q]() {
    ClosureCheck c;
    c.max_closed_form = -kInf;
    c.max_inner_product = -kInf;
    for (int k = 0; k < samples_per_edge; ++k) {
      const double y = -1.0 + 2.0 * k / (samples_per_edge - 1);
      const double closed = 0.0;  // -1 + x1 with x1 = 1
      const double ip = q.dot(make_vector({1.0, 1.0, y}));
      c.max_closed_form = std::max(c.max_closed_form, closed);
      c.max_inner_product = std::max(c.max_inner_product, ip);
      c.max_form_mismatch = std::max(c.max_form_mismatch, std::abs(ip - closed));
      ++c.generators_checked;
    }
    c.in_closure = c.max_closed_form <= 0.0;
    return c;
  };
  return p;
}

NicenessVerdict divergence_sweep(const SweepProblem& problem,
                                 std::span<const double> eps_list) {
  if (eps_list.empty()) throw InputError("refinement list is empty");
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0)) throw InputError("refinement levels must be > 0");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1])) {
      throw InputError("refinement levels must be strictly decreasing");
    }
  }
  NicenessVerdict v;
  v.face_id = problem.face_id;
  v.witness = problem.q;
  v.dual_witness = -problem.q;
  v.closure = problem.closure();

  for (double eps : eps_list) {
    SweepLevel level{eps, lambda_feasibility(problem.cone_at(eps), problem.q,
                                             problem.u),
                     std::numeric_limits<double>::quiet_NaN()};
    if (level.profile.lambda_star) level.product = *level.profile.lambda_star * eps;
    v.levels.push_back(std::move(level));
  }

  // Least-squares slope over the last (up to) three levels with lambda* > 0.
  std::vector<std::pair<double, double>> pts;
  const std::size_t first = v.levels.size() > 3 ? v.levels.size() - 3 : 0;
  for (std::size_t i = first; i < v.levels.size(); ++i) {
    const auto& ls = v.levels[i].profile.lambda_star;
    if (ls && std::isfinite(*ls) && *ls > 0.0) {
      pts.emplace_back(std::log(1.0 / v.levels[i].epsilon), std::log(*ls));
    }
  }
  if (pts.size() >= 2) {
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [x, y] : pts) {
      mx += x;
      my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto& [x, y] : pts) {
      sxy += (x - mx) * (y - my);
      sxx += (x - mx) * (x - mx);
    }
    if (sxx > 0.0) v.fitted_exponent = sxy / sxx;
  }

  bool window = v.levels.size() >= 3;
  for (std::size_t i = first; window && i < v.levels.size(); ++i) {
    const double prod = v.levels[i].product;
    window = std::isfinite(prod) && prod >= kProductLow && prod <= kProductHigh;
  }
  v.verdict = v.closure.in_closure && window ? Verdict::kNotNiceEvidence
                                             : Verdict::kInconclusive;
  return v;
}

double phi_alpha(double alpha, double t) {
  return alpha * (std::cos(t) - 1.0) + std::sin(t);
}

TAlpha find_t_alpha(double alpha, int grid_points) {
  if (!std::isfinite(alpha)) throw InputError("alpha must be finite");
  if (grid_points < 1) throw InputError("t_alpha grid needs at least one point");
  TAlpha out{alpha, 0.0, kInf, false};
  if (alpha <= 0.0) {
    out.t_alpha = std::numbers::pi / 2.0;
  } else {
    // Positive root of t^2/6 + (alpha/2) t - 1 = 0, cancellation-free form.
    out.t_alpha = 2.0 / (alpha / 2.0 + std::sqrt(alpha * alpha / 4.0 + 2.0 / 3.0));
  }
  for (int k = 1; k <= grid_points; ++k) {
    const double t = out.t_alpha * k / (grid_points + 1);
    out.grid_min = std::min(out.grid_min, phi_alpha(alpha, t));
  }
  out.grid_positive = out.grid_min > 0.0;
  return out;
}

}  // namespace conefx
