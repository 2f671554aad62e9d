#include "conefx/face_catalogue.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

namespace conefx {
namespace {

constexpr double T = kHorizon;

class FaceCatalogueTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    body_ = new BodySamples(sample_body(parameter_grid({256, 20, 0.5})));
  }
  static void TearDownTestSuite() {
    delete body_;
    body_ = nullptr;
  }
  static const BodySamples& body() { return *body_; }

 private:
  static BodySamples* body_;
};

BodySamples* FaceCatalogueTest::body_ = nullptr;

TEST(EnumerateFaces, CountsMatchFormula) {
  const std::vector<double> t_grid = {T / 5, 2 * T / 5, 3 * T / 5, 4 * T / 5, T};
  const std::vector<double> th_grid = {T / 3, 2 * T / 3, T};
  const auto faces = enumerate_faces(t_grid, th_grid);
  EXPECT_EQ(faces.size(), 34u);
  for (const auto& f : faces) {
    const int expected = f.kind <= FaceKind::kF04 ? 0 : f.kind <= FaceKind::kF15 ? 1 : 2;
    EXPECT_EQ(f.dimension(), expected) << f.label();
  }
}

TEST(EnumerateFaces, ContainsNamedFaces) {
  const std::vector<double> g = {T};
  const auto faces = enumerate_faces(g, g);
  auto find = [&](FaceKind k) {
    return std::find_if(faces.begin(), faces.end(),
                        [&](const FaceDescriptor& f) { return f.kind == k; });
  };
  const auto f11 = find(FaceKind::kF11);
  ASSERT_NE(f11, faces.end());
  ASSERT_EQ(f11->arcs.size(), 2u);
  EXPECT_EQ(f11->arcs[0].curve, Curve::kG1);
  EXPECT_EQ(f11->arcs[0].lo, T);
  EXPECT_EQ(f11->arcs[1].curve, Curve::kG3);
  EXPECT_NEAR(f11->arcs[1].lo, T, 1e-15);
  const auto f13 = find(FaceKind::kF13);
  ASSERT_NE(f13, faces.end());
  EXPECT_EQ(f13->arcs[0].curve, Curve::kG1);
  EXPECT_EQ(f13->arcs[1].curve, Curve::kG2);
}

TEST(EnumerateFaces, RejectsBadGrids) {
  const std::vector<double> empty;
  const std::vector<double> with_zero = {0.0, T};
  const std::vector<double> ok = {T};
  EXPECT_THROW(enumerate_faces(empty, ok), InputError);
  EXPECT_THROW(enumerate_faces(ok, empty), InputError);
  EXPECT_THROW(enumerate_faces(ok, with_zero), InputError);
}

TEST(MakeFace, ParameterRules) {
  EXPECT_THROW(make_face(FaceKind::kF11), InputError);
  EXPECT_THROW(make_face(FaceKind::kF13, 0.3), InputError);
  EXPECT_THROW(make_face(FaceKind::kF01, 0.0), InputError);
  EXPECT_NO_THROW(make_face(FaceKind::kF01, T));
}

TEST_F(FaceCatalogueTest, PointPairClosedForm) {
  const double th = std::numbers::pi / 8;
  const ExposingPair p = exposing_pair(make_face(FaceKind::kF01, th), body());
  EXPECT_EQ(p.provenance, PairProvenance::kClosedForm);
  EXPECT_NEAR(p.y[0], 1.0, 0.0);
  EXPECT_NEAR(p.y[1], -std::sin(th), 1e-15);
  EXPECT_NEAR(p.y[2], std::cos(th), 1e-15);
  EXPECT_NEAR(p.d, 1 - std::cos(th), 1e-15);
}

// Brute force: max x3 over every sample is 0 and is attained on gamma_3 and
// gamma_4 only, so (0, 0, 1) with offset 0 must come out of the oracle.
TEST_F(FaceCatalogueTest, F24OracleMatchesCoordinatePlane) {
  double max_z = -1.0;
  for (const auto& cs : body().curves) {
    for (std::size_t k = 0; k < cs.points.size(); ++k) {
      const double z = cs.points[k][2];
      max_z = std::max(max_z, z);
      if (cs.curve == Curve::kG1 || cs.curve == Curve::kG2) {
        if (cs.params[k] > 0.0) EXPECT_LT(z, 0.0);
      } else {
        EXPECT_EQ(z, 0.0);
      }
    }
  }
  EXPECT_EQ(max_z, 0.0);
  const ExposingPair p = exposing_pair(make_face(FaceKind::kF24), body());
  EXPECT_EQ(p.provenance, PairProvenance::kDerivedOracle);
  EXPECT_NEAR(p.y.normalized()[2], 1.0, 1e-12);
  EXPECT_NEAR(p.d, 0.0, 1e-12);
  const ExposingPair q = exposing_pair(make_face(FaceKind::kF23), body());
  EXPECT_NEAR(q.y.normalized()[0], 1.0, 1e-12);
  EXPECT_NEAR(q.d, 0.0, 1e-12);
}

// Independent plane through p1, p2, p3 with sign fixed by the sample cloud.
TEST_F(FaceCatalogueTest, F21OracleMatchesCrossProduct) {
  const Eigen::Vector3d a = endpoint(1).head<3>();
  const Eigen::Vector3d b = endpoint(2).head<3>();
  const Eigen::Vector3d c = endpoint(3).head<3>();
  Eigen::Vector3d n = (b - a).cross(c - a).normalized();
  double lo = 1e9, hi = -1e9;
  for (const auto& cs : body().curves) {
    for (const auto& x : cs.points) {
      const double v = n.dot(x.head<3>() - a);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  ASSERT_TRUE(lo > -1e-12 || hi < 1e-12);
  if (hi > 1e-12) n = -n;
  const ExposingPair p = exposing_pair(make_face(FaceKind::kF21), body());
  const Eigen::Vector3d y = p.y.head<3>().normalized();
  EXPECT_NEAR(y.dot(n), 1.0, 1e-12);
  EXPECT_NEAR(p.d / p.y.norm(), n.dot(a), 1e-12);
}

TEST_F(FaceCatalogueTest, RuledFaceExposure) {
  const auto f = make_face(FaceKind::kF11, T / 2);
  const ExposingPair p = exposing_pair(f, body());
  const ThetaBundle b = theta_bundle(T / 2);
  EXPECT_NEAR(gamma(Curve::kG1, T / 2).dot(b.y_theta), b.d_theta, 1e-12);
  const ExposureReport r = verify_exposure(f, p, body());
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.max_onface_residual, 1e-9);
  for (const auto& m : r.margins) EXPECT_GT(m.margin, 0.0);
}

TEST_F(FaceCatalogueTest, RuledPairsStrictOnOppositeCurves) {
  for (double th : theta_grid(64)) {
    const ThetaBundle b = theta_bundle(th);
    for (Curve c : {Curve::kG2, Curve::kG4}) {
      for (const auto& x : body().on(c).points) {
        EXPECT_LE(x.dot(b.y_theta), 0.0 + 1e-15);
        EXPECT_LT(x.dot(b.y_theta), b.d_theta);
      }
    }
  }
}

TEST_F(FaceCatalogueTest, PointFaceEqualityOnlyAtItsParameter) {
  const double th = T / 3;
  const double t = t_of_theta(th);
  const auto f = make_face(FaceKind::kF03, t);
  const ExposingPair p = exposing_pair(f, body());
  EXPECT_NEAR(gamma(Curve::kG3, t).dot(p.y), p.d, 1e-12);
  const ExposureReport r = verify_exposure(f, p, body());
  EXPECT_TRUE(r.pass);
}

TEST_F(FaceCatalogueTest, MirrorPairsGiveMatchingReports) {
  for (double th : theta_grid(16)) {
    const auto f11 = make_face(FaceKind::kF11, th);
    const auto f12 = make_face(FaceKind::kF12, th);
    const ExposingPair p11 = exposing_pair(f11, body());
    const ExposingPair p12 = exposing_pair(f12, body());
    EXPECT_LE((mirror(p11.y) - p12.y).norm(), 1e-12);
    EXPECT_NEAR(p11.d, p12.d, 1e-12);
    const ExposureReport r11 = verify_exposure(f11, p11, body());
    const ExposureReport r12 = verify_exposure(f12, p12, body());
    ASSERT_EQ(r11.margins.size(), r12.margins.size());
    for (std::size_t j = 0; j < r11.margins.size(); ++j) {
      EXPECT_NEAR(r11.margins[j].margin, r12.margins[j].margin, 1e-12);
    }
  }
}

TEST_F(FaceCatalogueTest, EveryCataloguedFacePasses) {
  const auto thetas = theta_grid(16);
  for (const auto& f : enumerate_faces(thetas, thetas)) {
    const ExposingPair p = exposing_pair(f, body());
    EXPECT_GT(p.y.norm(), 0.0);
    const ExposureReport r = verify_exposure(f, p, body());
    EXPECT_TRUE(r.pass) << f.label() << " residual " << r.max_onface_residual;
  }
}

TEST_F(FaceCatalogueTest, RuledMidpointsSatisfyEquality) {
  for (double th : theta_grid(64)) {
    const ThetaBundle b = theta_bundle(th);
    const RealVector mid =
        0.5 * (gamma(Curve::kG1, th) + gamma(Curve::kG3, b.t_theta));
    EXPECT_NEAR(mid.dot(b.y_theta), b.d_theta, 1e-9);
  }
}

TEST_F(FaceCatalogueTest, VerifyRejectsInconsistentInput) {
  const auto f = make_face(FaceKind::kF13);
  EXPECT_THROW(verify_exposure(f, {make_vector({0, 0, 0}), 0.0}, body()), InputError);
  EXPECT_THROW(verify_exposure(f, {make_vector({1, 0, 0, 0}), 0.0}, body()), InputError);
  EXPECT_THROW(verify_exposure(f, exposing_pair(f, body()), shifted(body())), InputError);
}

TEST(IdentitySuite, SpotValues) {
  for (double r : identity_suite(T / 3, T / 5)) EXPECT_LE(r, 1e-12);
  const double th = 0.4;
  const ThetaBundle b = theta_bundle(th);
  EXPECT_NEAR(gamma(Curve::kG1, th).dot(b.y_theta) - b.d_theta, 0.0, 1e-15);
  EXPECT_EQ(gamma(Curve::kG2, 0.0).dot(b.y_theta), 0.0);
}

TEST(IdentitySuite, HoldsOnGrid) {
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    for (int j = 1; j <= 100; ++j) {
      for (double r : identity_suite(T * i / 100, T * j / 100)) worst = std::max(worst, r);
    }
  }
  EXPECT_LE(worst, 1e-12);
}

}  // namespace
}  // namespace conefx
