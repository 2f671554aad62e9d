#include "conefx/mesh.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "mesh_oracle.hpp"

namespace conefx {
namespace {

std::string obj_text(const TriangleMesh& m) {
  std::ostringstream os;
  write_obj(m, os);
  return os.str();
}

TEST(Mesh, CountsForFourSamples) {
  const TriangleMesh m = build_mesh(BodyVariant::kRaw, 4);
  EXPECT_EQ(m.vertices.size(), 13u);
  EXPECT_EQ(m.triangles.size(), 22u);
}

TEST(Mesh, CountsFollowFormula) {
  for (int n : {2, 3, 8, 33}) {
    const TriangleMesh m = build_mesh(BodyVariant::kRaw, n);
    EXPECT_EQ(static_cast<int>(m.vertices.size()), 4 * n - 3);
    EXPECT_EQ(static_cast<int>(m.triangles.size()), 8 * n - 10);
  }
  EXPECT_THROW(build_mesh(BodyVariant::kRaw, 1), InputError);
}

TEST(Mesh, ShiftedVerticesAreAffineImages) {
  const TriangleMesh a = build_mesh(BodyVariant::kRaw, 16);
  const TriangleMesh b = build_mesh(BodyVariant::kShifted, 16);
  ASSERT_EQ(a.vertices.size(), b.vertices.size());
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    EXPECT_EQ(b.vertices[i], 2.0 * a.vertices[i] + shift_vector());
  }
  EXPECT_EQ(a.triangles, b.triangles);
}

TEST(Mesh, ObjPassesConvexityOracle) {
  for (BodyVariant v : {BodyVariant::kRaw, BodyVariant::kShifted}) {
    for (int n : {4, 16, 64}) {
      const testing::ObjMesh m = testing::parse_obj(obj_text(build_mesh(v, n)));
      EXPECT_EQ(static_cast<int>(m.vertices.size()), 4 * n - 3);
      const testing::ConvexityResult r = testing::check_convexity(m);
      EXPECT_LE(r.max_height, 1e-12) << "n " << n;
      EXPECT_GT(r.min_face_area, 0.0);
      EXPECT_TRUE(r.closed_manifold);
      EXPECT_EQ(r.euler, 2);
    }
  }
}

TEST(Mesh, ObjRoundTripsExactly) {
  const TriangleMesh m = build_mesh(BodyVariant::kRaw, 8);
  const testing::ObjMesh parsed = testing::parse_obj(obj_text(m));
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(parsed.vertices[i][j], m.vertices[i][j]);
  }
  for (std::size_t i = 0; i < m.triangles.size(); ++i) {
    EXPECT_EQ(parsed.faces[i], m.triangles[i]);
  }
}

TEST(Mesh, UnwritablePathThrows) {
  const TriangleMesh m = build_mesh(BodyVariant::kRaw, 4);
  EXPECT_THROW(write_obj_file(m, "/nonexistent-dir/mesh.obj"), std::runtime_error);
}

TEST(MeshOracle, RejectsMalformedObj) {
  EXPECT_THROW(testing::parse_obj("v 0 0 0\nf 1 2 3\n"), std::runtime_error);
  EXPECT_THROW(testing::parse_obj("v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\nf 1 2 3 4\n"),
               std::runtime_error);
  EXPECT_THROW(testing::parse_obj("vn 0 0 1\n"), std::runtime_error);
}

TEST(MeshOracle, DetectsNonConvexVertex) {
  // Tetrahedron with one face flipped inward has a vertex above a face plane.
  const std::string tet =
      "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\n"
      "f 1 3 2\nf 1 2 4\nf 2 3 4\nf 1 4 3\n";
  const auto good = testing::check_convexity(testing::parse_obj(tet));
  EXPECT_LE(good.max_height, 0.0);
  EXPECT_TRUE(good.closed_manifold);
  EXPECT_EQ(good.euler, 2);
  const std::string flipped =
      "v 0 0 0\nv 1 0 0\nv 0 1 0\nv 0 0 1\n"
      "f 1 2 3\nf 1 2 4\nf 2 3 4\nf 1 4 3\n";
  const auto bad = testing::check_convexity(testing::parse_obj(flipped));
  EXPECT_GT(bad.max_height, 0.0);
  EXPECT_FALSE(bad.closed_manifold);
}

}  // namespace
}  // namespace conefx
