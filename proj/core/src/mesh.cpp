#include "conefx/mesh.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <Eigen/Geometry>

namespace conefx {

namespace {

RealVector normal_of(const TriangleMesh& m, const std::array<int, 3>& tri) {
  const RealVector& a = m.vertices[static_cast<std::size_t>(tri[0])];
  const RealVector& b = m.vertices[static_cast<std::size_t>(tri[1])];
  const RealVector& c = m.vertices[static_cast<std::size_t>(tri[2])];
  const Eigen::Vector3d u = (b - a).head<3>();
  const Eigen::Vector3d v = (c - a).head<3>();
  const Eigen::Vector3d n = u.cross(v);
  return RealVector(n);
}

class Builder {
 public:
  explicit Builder(TriangleMesh& mesh) : m_(mesh) {
    centroid_ = RealVector::Zero(3);
    for (const auto& v : m_.vertices) centroid_ += v;
    centroid_ /= static_cast<double>(m_.vertices.size());
  }

  // Adds the triangle, flipped if needed so its normal points away from the
  // centroid.
  void add(int a, int b, int c) {
    std::array<int, 3> tri{a, b, c};
    const RealVector n = normal_of(m_, tri);
    const RealVector& p = m_.vertices[static_cast<std::size_t>(a)];
    if (n.dot(centroid_ - p) > 0.0) std::swap(tri[1], tri[2]);
    m_.triangles.push_back(tri);
  }

  // Height of vertex d above the outward plane of triangle (a, b, c).
  double height(int a, int b, int c, int d) const {
    std::array<int, 3> tri{a, b, c};
    RealVector n = normal_of(m_, tri);
    const RealVector& p = m_.vertices[static_cast<std::size_t>(a)];
    if (n.dot(centroid_ - p) > 0.0) n = -n;
    return n.dot(m_.vertices[static_cast<std::size_t>(d)] - p);
  }

  // Quad a0 a1 b1 b0 between two rulings: keep the diagonal whose triangles
  // leave the opposite corner inside.
  void quad(int a0, int a1, int b1, int b0) {
    const double h_first = std::max(height(a0, a1, b1, b0), height(a0, b1, b0, a1));
    const double h_second = std::max(height(a0, a1, b0, b1), height(a1, b1, b0, a0));
    if (h_first <= h_second) {
      add(a0, a1, b1);
      add(a0, b1, b0);
    } else {
      add(a0, a1, b0);
      add(a1, b1, b0);
    }
  }

 private:
  TriangleMesh& m_;
  RealVector centroid_;
};

void put_number(std::ostream& out, double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  out.write(buf, res.ptr - buf);
}

}  // namespace

TriangleMesh build_mesh(BodyVariant which, int samples) {
  if (samples < 2) throw InputError("mesh needs at least 2 samples per curve");
  const int n = samples;
  TriangleMesh m;
  auto place = [&](const RealVector& x) {
    m.vertices.push_back(which == BodyVariant::kShifted ? to_shifted(x) : x);
    return static_cast<int>(m.vertices.size()) - 1;
  };

  // Index tables per curve; entry 0 is the shared p0.
  std::vector<int> g1(n), g2(n), g3(n), g4(n);
  g1[0] = g2[0] = g3[0] = g4[0] = place(endpoint(0));
  for (int k = 1; k < n; ++k) {
    const double theta = k == n - 1 ? kHorizon : kHorizon * k / (n - 1);
    const double t = k == n - 1 ? kHorizon : t_of_theta(theta);
    g1[k] = place(gamma(Curve::kG1, theta));
    g4[k] = place(gamma(Curve::kG4, theta));
    g3[k] = place(gamma(Curve::kG3, t));
    g2[k] = place(gamma(Curve::kG2, t));
  }

  Builder b(m);
  // Ruled strips: [gamma_1(theta), gamma_3(t_theta)] and [gamma_4, gamma_2].
  for (const auto& [a, c] : {std::pair{&g1, &g3}, std::pair{&g4, &g2}}) {
    b.add((*a)[0], (*a)[1], (*c)[1]);
    for (int k = 1; k + 1 < n; ++k) {
      b.quad((*a)[k], (*a)[k + 1], (*c)[k + 1], (*c)[k]);
    }
  }
  // Planar faces x1 = 0 (gamma_1, gamma_2) and x3 = 0 (gamma_4, gamma_3),
  // fanned from p0 around the polygon p0 -> arc -> chord -> arc -> p0.
  for (const auto& [a, c] : {std::pair{&g1, &g2}, std::pair{&g4, &g3}}) {
    std::vector<int> ring;
    for (int k = 1; k < n; ++k) ring.push_back((*a)[k]);
    for (int k = n - 1; k >= 1; --k) ring.push_back((*c)[k]);
    for (std::size_t j = 0; j + 1 < ring.size(); ++j) {
      b.add(g1[0], ring[j], ring[j + 1]);
    }
  }
  b.add(g1[n - 1], g2[n - 1], g3[n - 1]);
  b.add(g2[n - 1], g3[n - 1], g4[n - 1]);
  return m;
}

void write_obj(const TriangleMesh& mesh, std::ostream& out) {
  for (const auto& v : mesh.vertices) {
    out << 'v';
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      out << ' ';
      put_number(out, v[i]);
    }
    out << '\n';
  }
  for (const auto& t : mesh.triangles) {
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  }
}

void write_obj_file(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_obj(mesh, out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace conefx
