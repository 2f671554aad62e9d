#include "conefx/niceness.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "conefx/homogenization.hpp"
#include "conefx/lp.hpp"
#include "oracles.hpp"

namespace conefx {
namespace {

constexpr double T = kHorizon;

RealVector lifted(Curve c, double t) {
  const RealVector x = to_shifted(gamma(c, t));
  return make_vector({1.0, x[0], x[1], x[2]});
}

TEST(PerpSpace, FaceSliceGivesWitnessDirection) {
  const auto pts = face_slice_points();
  ASSERT_EQ(pts.size(), 3u);
  const PerpSpace ps = perp_space(pts);
  ASSERT_EQ(ps.basis.size(), 1u);
  EXPECT_FALSE(ps.degenerate);
  const RealVector u = witness().u.normalized();
  EXPECT_NEAR(std::abs(ps.basis[0].dot(u)), 1.0, 1e-15);
}

TEST(PerpSpace, TrivialCases) {
  const std::vector<RealVector> e123 = {make_vector({1, 0, 0, 0}), make_vector({0, 1, 0, 0}),
                                        make_vector({0, 0, 1, 0})};
  const PerpSpace a = perp_space(e123);
  ASSERT_EQ(a.basis.size(), 1u);
  EXPECT_NEAR(std::abs(a.basis[0][3]), 1.0, 1e-15);

  std::vector<RealVector> full = e123;
  full.push_back(make_vector({1, 1, 1, 1}));
  EXPECT_TRUE(perp_space(full).basis.empty());
}

TEST(PerpSpace, DegenerateInputIsFlagged) {
  const std::vector<RealVector> collinear = {make_vector({1, 0, 0, 0}), make_vector({2, 0, 0, 0}),
                                             make_vector({0, 1, 0, 0})};
  const PerpSpace ps = perp_space(collinear);
  EXPECT_TRUE(ps.degenerate);
  EXPECT_EQ(ps.rank, 2);
  const std::vector<RealVector> two = {make_vector({1, 0, 0, 0}), make_vector({0, 1, 0, 0})};
  EXPECT_THROW(perp_space(two), InputError);
}

TEST(Psi, SpotValues) {
  EXPECT_EQ(psi(0.0, 17.0), 0.0);
  for (double t : {0.1, 0.4, T}) EXPECT_NEAR(psi(t, -1.0), 2 * std::sin(t), 1e-15);
  EXPECT_NEAR(psi(T, 0.0), oracle::kPsiAtTZero, 1e-15);
  EXPECT_NEAR(psi_inner_product(T, 0.0), oracle::kPsiAtTZero, 1e-14);
}

TEST(Psi, MatchesInnerProductOnRandomInputs) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> t_dist(0.0, T);
  std::uniform_real_distribution<double> l_dist(-3.0, 3.0);
  for (int k = 0; k < 5000; ++k) {
    const double t = t_dist(rng);
    const double l = l_dist(rng);
    EXPECT_NEAR(psi(t, l), psi_inner_product(t, l), 1e-12);
  }
}

TEST(Classify, FaceCurvesAreUnconditional) {
  const WitnessPair w = witness();
  for (double t : parameter_grid({256, 20, 0.5})) {
    const RealVector g3 = lifted(Curve::kG3, t);
    const RealVector g4 = lifted(Curve::kG4, t);
    EXPECT_EQ(w.u.dot(g3), 0.0);
    EXPECT_EQ(w.u.dot(g4), 0.0);
    EXPECT_NEAR(w.q.dot(g3), 2 * (std::cos(t) - 1), 1e-15);
    EXPECT_NEAR(w.q.dot(g4), -2 * std::sin(t), 1e-15);
    EXPECT_EQ(classify(g3, w.q, w.u), ConstraintClass::kUnconditional);
    EXPECT_EQ(classify(g4, w.q, w.u), ConstraintClass::kUnconditional);
  }
}

TEST(Classify, GammaOneGivesClosedFormLowerBound) {
  const WitnessPair w = witness();
  for (double t : {1e-3, 0.05, 0.3, T}) {
    const RealVector g = lifted(Curve::kG1, t);
    ASSERT_EQ(classify(g, w.q, w.u), ConstraintClass::kLower);
    const double bound = w.q.dot(g) / w.u.dot(g);
    const double closed = std::sin(t) / (2 * (1 - std::cos(t))) - 1;
    EXPECT_NEAR(bound, closed, 1e-9 * std::abs(closed));
    // Just above the bound the constraint holds, just below it fails.
    const double d = 1e-6 * std::max(1.0, std::abs(bound));
    EXPECT_LE((w.q - (bound + d) * w.u).dot(g), 0.0);
    EXPECT_GT((w.q - (bound - d) * w.u).dot(g), 0.0);
  }
}

TEST(Classify, InfeasibleConstantDetected) {
  const RealVector q = make_vector({1, 0, 0});
  const RealVector u = make_vector({0, 1, 0});
  EXPECT_EQ(classify(make_vector({1, 0, 0}), q, u), ConstraintClass::kInfeasibleConstant);
  EXPECT_EQ(classify(make_vector({-1, 0, 0}), q, u), ConstraintClass::kUnconditional);
  EXPECT_EQ(classify(make_vector({0, -1, 0}), q, u), ConstraintClass::kUpper);
}

TEST(LambdaFeasibility, MatchesOracleAtEachLevel) {
  const WitnessPair w = witness();
  for (const auto& ref : oracle::kLambdaStar) {
    const ConeModel k = homogenize(sample_body(level_grid(512, ref.eps), BodyVariant::kShifted));
    const LambdaProfile p = lambda_feasibility(k, w.q, w.u);
    ASSERT_TRUE(p.lambda_star);
    EXPECT_EQ(p.epsilon, ref.eps);
    EXPECT_NEAR(*p.lambda_star, ref.lambda, 1e-7 * ref.lambda);
    EXPECT_EQ(p.achieving.curve, 1);
    EXPECT_EQ(p.achieving.t, ref.eps);
    EXPECT_LE(p.max_bound_residual, 1e-9);
    EXPECT_EQ(p.lower_bounds.size() + p.upper_bounds.size() + p.unconditional +
                  p.infeasible_constant,
              k.size());
    EXPECT_EQ(p.infeasible_constant, 0u);
  }
}

TEST(LambdaFeasibility, GammaTwoBoundsAreDominated) {
  const WitnessPair w = witness();
  const ConeModel k = homogenize(sample_body(level_grid(256, 0.05), BodyVariant::kShifted));
  const LambdaProfile p = lambda_feasibility(k, w.q, w.u);
  for (const auto& b : p.lower_bounds) {
    if (b.source.curve != 2 || b.source.t == 0.0) continue;
    const double t = b.source.t;
    EXPECT_NEAR(b.lambda, (1 - std::cos(t)) / (2 * std::sin(t)) - 1, 1e-9);
    EXPECT_LT(b.lambda, *p.lambda_star);
  }
}

// Independent route: min lambda over the same constraints with the simplex.
TEST(LambdaFeasibility, AgreesWithLinearProgram) {
  const WitnessPair w = witness();
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const ConeModel k = homogenize(sample_body(level_grid(128, eps), BodyVariant::kShifted));
    LinearConstraintSet rows(2);
    for (const auto& g : k.generators) {
      rows.add_less_equal(make_vector({-w.u.dot(g), 0.0}), -w.q.dot(g));
    }
    rows.add_less_equal(make_vector({0.0, 1.0}), 0.0);
    rows.add_less_equal(make_vector({0.0, -1.0}), 0.0);
    const LpResult r = maximize(make_vector({-1.0, 0.0}), rows);
    ASSERT_EQ(r.status, LpStatus::kOptimal);
    const LambdaProfile p = lambda_feasibility(k, w.q, w.u);
    EXPECT_NEAR(-r.objective, *p.lambda_star, 1e-9 * *p.lambda_star);
  }
}

TEST(DivergenceSweep, ConstructionShowsDivergence) {
  const std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4};
  const NicenessVerdict v = divergence_sweep(construction_problem(512), eps);
  ASSERT_EQ(v.levels.size(), 4u);
  for (std::size_t i = 2; i < 4; ++i) {
    EXPECT_GE(v.levels[i].product, 0.9);
    EXPECT_LE(v.levels[i].product, 1.1);
  }
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(v.levels[i].product, oracle::kLambdaStar[i].product, 1e-7);
  }
  EXPECT_TRUE(v.closure.in_closure);
  EXPECT_LE(v.closure.max_closed_form, 0.0);
  EXPECT_LE(v.closure.max_form_mismatch, 1e-15);
  // Least-squares slope of the oracle values over the last three levels.
  double mx = 0, my = 0, sxy = 0, sxx = 0;
  for (std::size_t i = 1; i < 4; ++i) {
    mx += std::log(1 / oracle::kLambdaStar[i].eps) / 3;
    my += std::log(oracle::kLambdaStar[i].lambda) / 3;
  }
  for (std::size_t i = 1; i < 4; ++i) {
    const double x = std::log(1 / oracle::kLambdaStar[i].eps) - mx;
    sxy += x * (std::log(oracle::kLambdaStar[i].lambda) - my);
    sxx += x * x;
  }
  ASSERT_TRUE(v.fitted_exponent);
  EXPECT_NEAR(*v.fitted_exponent, sxy / sxx, 1e-6);
  EXPECT_EQ(v.verdict, Verdict::kNotNiceEvidence);
  EXPECT_EQ(v.dual_witness, -v.witness);
}

TEST(DivergenceSweep, ControlConeIsInconclusive) {
  const std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4};
  const NicenessVerdict v = divergence_sweep(square_control_problem(), eps);
  for (const auto& l : v.levels) {
    ASSERT_TRUE(l.profile.lambda_star);
    EXPECT_EQ(*l.profile.lambda_star, -1.0);
  }
  EXPECT_TRUE(v.closure.in_closure);
  EXPECT_EQ(v.verdict, Verdict::kInconclusive);
}

TEST(DivergenceSweep, TooFewLevelsIsInconclusive) {
  const std::vector<double> eps{1e-3};
  EXPECT_EQ(divergence_sweep(construction_problem(64), eps).verdict, Verdict::kInconclusive);
}

TEST(DivergenceSweep, RejectsBadLevelLists) {
  const auto p = construction_problem(16);
  EXPECT_THROW(divergence_sweep(p, std::vector<double>{1e-2, 1e-1}), InputError);
  EXPECT_THROW(divergence_sweep(p, std::vector<double>{1e-2, 1e-2}), InputError);
  EXPECT_THROW(divergence_sweep(p, std::vector<double>{-1e-2}), InputError);
  EXPECT_THROW(divergence_sweep(p, std::vector<double>{}), InputError);
}

TEST(FindTAlpha, NonPositiveAlphaGivesHalfPi) {
  EXPECT_EQ(find_t_alpha(-3.0).t_alpha, std::numbers::pi / 2);
  const TAlpha zero = find_t_alpha(0.0);
  EXPECT_EQ(zero.t_alpha, std::numbers::pi / 2);
  EXPECT_TRUE(zero.grid_positive);
}

TEST(FindTAlpha, AlphaTwoMatchesQuadraticRoot) {
  const TAlpha a = find_t_alpha(2.0);
  EXPECT_NEAR(a.t_alpha, oracle::kTAlpha2, 1e-15);
  EXPECT_TRUE(a.grid_positive);
}

TEST(FindTAlpha, SoundOnRandomAlphas) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> alpha(-10.0, 10.0);
  for (int k = 0; k < 100; ++k) {
    const double a = alpha(rng);
    const TAlpha ta = find_t_alpha(a);
    EXPECT_TRUE(ta.grid_positive) << "alpha " << a;
    if (a > 0) {
      EXPECT_NEAR(a * ta.t_alpha / 2 + ta.t_alpha * ta.t_alpha / 6, 1.0, 1e-12);
      EXPECT_LT(ta.t_alpha, std::sqrt(6.0));
    }
    // Independent dense check of phi_alpha on (0, t_alpha).
    for (int j = 1; j < 2000; ++j) {
      const double t = ta.t_alpha * j / 2000;
      ASSERT_GT(a * (std::cos(t) - 1) + std::sin(t), 0.0) << "alpha " << a << " t " << t;
    }
  }
}

}  // namespace
}  // namespace conefx
