#pragma once

// Reference values computed once with 40-digit mpmath, independent of the
// library code. Each is a closed-form expression evaluated directly.
namespace conefx::oracle {

// arccos(sin x / (1 + sin x - cos x)) at x = pi/8
inline constexpr double kTThetaPiOver8 = 0.5843165007835977;

// cos(pi/4) (1 - cos(pi/4)) = sin(pi/4) (1 - cos(pi/4))
inline constexpr double kDThetaAtT = 0.20710678118654752;

// sin e / (2 (1 - cos e)) - 1
struct LambdaStar {
  double eps;
  double lambda;
  double product;
};
inline constexpr LambdaStar kLambdaStar[] = {
    {1e-1, 8.991665277447007, 0.8991665277447007},
    {1e-2, 98.99916666527777, 0.98999166665277774},
    {1e-3, 998.99991666666528, 0.99899991666666528},
    {1e-4, 9998.9999916666667, 0.99989999916666667},
};

// 2 (2 (cos(pi/4) - 1) + sin(pi/4))
inline constexpr double kPsiAtTZero = 0.24264068711928515;

// Positive root of alpha t / 2 + t^2 / 6 = 1 at alpha = 2
inline constexpr double kTAlpha2 = 0.87298334620741689;

}  // namespace conefx::oracle
