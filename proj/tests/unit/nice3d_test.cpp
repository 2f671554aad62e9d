#include "conefx/nice3d.hpp"

#include <gtest/gtest.h>

namespace conefx {
namespace {

TEST(Nice3d, OctantProjectionsAreAxes) {
  const Nice3dReport r = nice3d_ingredients(octant_example());
  EXPECT_TRUE(r.pass);
  EXPECT_LE((r.q1 - make_vector({0, 1, 0})).norm(), 1e-12);
  EXPECT_LE((r.q2 - make_vector({1, 0, 0})).norm(), 1e-12);
  EXPECT_NEAR(std::abs(r.normal[2]), 1.0, 1e-15);
  EXPECT_TRUE(r.sign_pattern_ok);
  EXPECT_GE(r.membership_samples, 1000u);
  EXPECT_EQ(r.membership_disagreements, 0u);
  EXPECT_EQ(r.dual_face_outside, 0u);
}

TEST(Nice3d, HalfDiscPasses) {
  const Nice3dReport r = nice3d_ingredients(half_disc_example());
  EXPECT_TRUE(r.sign_pattern_ok);
  EXPECT_TRUE(r.exposure_ok);
  EXPECT_EQ(r.membership_disagreements, 0u);
  EXPECT_EQ(r.dual_face_samples, 1000u);
  EXPECT_EQ(r.dual_face_outside, 0u);
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.q1p2, 0.0);
  EXPECT_GT(r.q2p1, 0.0);
}

TEST(Nice3d, DeterministicForFixedSeed) {
  const Nice3dReport a = nice3d_ingredients(half_disc_example());
  const Nice3dReport b = nice3d_ingredients(half_disc_example());
  EXPECT_EQ(a.q1, b.q1);
  EXPECT_EQ(a.dual_face_samples, b.dual_face_samples);
}

TEST(Nice3d, NormalInPerpIsRejected) {
  Nice3dInput in = octant_example();
  in.h1 = make_vector({0, 0, 2});
  EXPECT_THROW(nice3d_ingredients(in), InputError);
}

TEST(Nice3d, DependentFaceGeneratorsRejected) {
  Nice3dInput in = octant_example();
  in.p2 = 3.0 * in.p1;
  EXPECT_THROW(nice3d_ingredients(in), InputError);
}

TEST(Nice3d, WrongSideNormalFailsExposure) {
  Nice3dInput in = octant_example();
  in.h1 = make_vector({0, 1, -1});
  const Nice3dReport r = nice3d_ingredients(in);
  EXPECT_FALSE(r.exposure_ok);
  EXPECT_FALSE(r.pass);
}

}  // namespace
}  // namespace conefx
