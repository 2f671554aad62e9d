#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "conefx/construction.hpp"

// Closed triangle mesh of the boundary of C (or C'), built from the ruled
// strips, the two planar fans and the two facet triangles.
namespace conefx {

struct TriangleMesh {
  std::vector<RealVector> vertices;
  std::vector<std::array<int, 3>> triangles;  // 0-based, outward oriented
};

// With n = samples: gamma_1, gamma_4 at theta_k = k T / (n - 1) and
// gamma_3, gamma_2 at t_{theta_k}, p0 shared. 4n - 3 vertices, 8n - 10
// triangles. Requires n >= 2.
TriangleMesh build_mesh(BodyVariant which, int samples);

// Wavefront OBJ: "v x y z" lines, then 1-based "f a b c" lines.
void write_obj(const TriangleMesh& mesh, std::ostream& out);

// Throws std::runtime_error when the file cannot be written.
void write_obj_file(const TriangleMesh& mesh, const std::string& path);

}  // namespace conefx
