#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "conefx/cone_model.hpp"
#include "conefx/construction.hpp"
#include "conefx/linalg.hpp"

// Numeric evidence that K^o + F^perp is not closed for the face
// F = cone({1} x (2 co{gamma_3, gamma_4} + c)) of K, together with the
// auxiliary one-parameter facts the argument uses.
namespace conefx {

struct PerpSpace {
  std::vector<RealVector> basis;  // orthonormal basis of span(points)^perp
  int rank = 0;                   // numerical rank of the point set
  bool degenerate = false;        // rank below min(#points, dim)
};

// Orthogonal complement of span(face_points). Needs at least 3 points.
PerpSpace perp_space(std::span<const RealVector> face_points);

// The slice points (1, 2 p_i + c), i = 0, 3, 4, spanning the face F.
std::vector<RealVector> face_slice_points();

// psi(t, lambda) = 2 (2 (lambda + 1)(cos t - 1) + sin t)
double psi(double t, double lambda);

// Same value through the inner product <(1, 2 gamma_1(t) + c), q - lambda u>.
double psi_inner_product(double t, double lambda);

enum class ConstraintClass { kLower, kUpper, kUnconditional, kInfeasibleConstant };

struct LambdaBound {
  double lambda;
  GeneratorTag source;
};

// Each generator g imposes <q, g> - lambda <u, g> <= 0 on the shift lambda.
struct LambdaProfile {
  double epsilon = 0.0;  // smallest positive tag parameter in the cone
  std::vector<LambdaBound> lower_bounds;
  std::vector<LambdaBound> upper_bounds;
  std::size_t unconditional = 0;
  std::size_t infeasible_constant = 0;
  std::optional<Interval> feasible;     // nullopt: no lambda works
  std::optional<double> lambda_star;    // min feasible lambda (may be -inf)
  GeneratorTag achieving;               // generator defining lambda_star
  double max_bound_residual = 0.0;      // max |<q - lambda u, g>| at each bound
};

// |<u, g>| at or below this counts as zero in the classification.
inline constexpr double kZeroCoupling = 1e-14;

ConstraintClass classify(const RealVector& g, const RealVector& q,
                         const RealVector& u);

LambdaProfile lambda_feasibility(const ConeModel& cone, const RealVector& q,
                                 const RealVector& u);

enum class Verdict { kNotNiceEvidence, kInconclusive };

std::string_view to_string(Verdict v);

struct ClosureCheck {
  bool in_closure = false;           // q in F^o, from closed forms
  double max_closed_form = 0.0;      // max of the closed-form values, <= 0
  double max_inner_product = 0.0;    // same values from explicit dot products
  double max_form_mismatch = 0.0;    // |closed form - dot product|
  std::size_t generators_checked = 0;
};

struct SweepLevel {
  double epsilon;
  LambdaProfile profile;
  double product;  // lambda_star * epsilon
};

struct NicenessVerdict {
  std::string face_id;
  ClosureCheck closure;
  std::vector<SweepLevel> levels;
  std::optional<double> fitted_exponent;  // slope of log lambda* vs log(1/eps)
  Verdict verdict = Verdict::kInconclusive;
  RealVector witness;       // q, in the K^o + F^perp form
  RealVector dual_witness;  // -q, in the K^* + F^perp form
};

// One cone family refined by eps, plus the witness data and closure check.
struct SweepProblem {
  std::string face_id;
  RealVector q;
  RealVector u;
  std::function<ConeModel(double eps)> cone_at;
  std::function<ClosureCheck()> closure;
};

// The construction: K sampled on level_grid(samples_per_curve, eps).
SweepProblem construction_problem(int samples_per_curve = 512);

// Polyhedral control: cone over the square [-1, 1]^2 with boundary samples
// refined by eps towards a vertex, face over the edge x1 = 1.
SweepProblem square_control_problem(int samples_per_edge = 64);

// Product window the last three levels must fall in for kNotNiceEvidence.
inline constexpr double kProductLow = 0.8;
inline constexpr double kProductHigh = 1.2;

// eps_list must be strictly decreasing and positive.
NicenessVerdict divergence_sweep(const SweepProblem& problem,
                                 std::span<const double> eps_list);

// phi_alpha(t) = alpha (cos t - 1) + sin t
double phi_alpha(double alpha, double t);

struct TAlpha {
  double alpha;
  double t_alpha;
  double grid_min;      // min phi_alpha over the interior grid of (0, t_alpha)
  bool grid_positive;
};

// alpha <= 0: t_alpha = pi/2. alpha > 0: the positive root of
// alpha t / 2 + t^2 / 6 = 1, below which phi_alpha > 0.
TAlpha find_t_alpha(double alpha, int grid_points = 10000);

}  // namespace conefx
