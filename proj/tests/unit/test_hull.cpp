#include <doctest.h>

#include <random>

#include <Eigen/Geometry>

#include "jnr/hull.hpp"
#include "jnr/predicates.hpp"

using namespace jnr;

namespace {

Eigen::MatrixXd cube_with_grid(int n) {
  Eigen::MatrixXd p(3, n * n * n);
  Eigen::Index c = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) p.col(c++) = Eigen::Vector3d(i, j, k) / (n - 1);
  return p;
}

/// Brute-force check: every input point lies inside every face plane.
double worst_outside(const HullMesh& mesh, const Eigen::MatrixXd& p) {
  double worst = -1e300;
  for (Eigen::Index c = 0; c < p.cols(); ++c) worst = std::max(worst, max_violation(mesh, p.col(c)));
  return worst;
}

}  // namespace

TEST_CASE("orient2d matches exact integer arithmetic on near-degenerate input") {
  // Points 0.5 + k ulp against the line through (12, 12) and (24, 24):
  // scaled by 2^53 every coordinate is an integer, so __int128 is exact.
  const double ulp = std::ldexp(1.0, -53);
  const auto big = [](double x) { return static_cast<__int128>(std::ldexp(x, 53)); };
  const Eigen::Vector2d b(12, 12), c(24, 24);
  for (int i = 0; i < 64; ++i) {
    for (int j = 0; j < 64; ++j) {
      const Eigen::Vector2d a(0.5 + i * ulp, 0.5 + j * ulp);
      const __int128 det = (big(b.x()) - big(a.x())) * (big(c.y()) - big(a.y())) -
                           (big(b.y()) - big(a.y())) * (big(c.x()) - big(a.x()));
      const int expected = det > 0 ? 1 : (det < 0 ? -1 : 0);
      CHECK(geom::orient2d(a, b, c) == expected);
    }
  }
}

TEST_CASE("orient3d sign on coplanar and perturbed points") {
  const Eigen::Vector3d a(0.1, 0.2, 0.3), b(1.1, 0.2, 0.3), c(0.1, 1.2, 0.3);
  CHECK(geom::orient3d(a, b, c, Eigen::Vector3d(0.7, 0.9, 0.3)) == 0);
  CHECK(geom::orient3d(a, b, c, Eigen::Vector3d(0.7, 0.9, std::nextafter(0.3, 1.0))) == 1);
  CHECK(geom::orient3d(a, b, c, Eigen::Vector3d(0.7, 0.9, std::nextafter(0.3, 0.0))) == -1);
}

TEST_CASE("cube with interior and face grid points has 8 vertices and 6 facets") {
  const Eigen::MatrixXd p = cube_with_grid(5);
  const HullResult r = convex_hull(p);
  REQUIRE(std::holds_alternative<HullMesh>(r));
  const auto& mesh = std::get<HullMesh>(r);
  CHECK(mesh.vertex_count() == 8);
  CHECK(mesh.face_count() == 12);
  CHECK(is_closed_orientable(mesh));
  CHECK(worst_outside(mesh, p) <= 1e-12);
  CHECK(boundary_measure(mesh) == doctest::Approx(6.0));
  const auto facets = merge_coplanar(mesh);
  REQUIRE(facets.size() == 6);
  for (const auto& f : facets) CHECK(f.area == doctest::Approx(1.0));
}

TEST_CASE("points on a sphere are all vertices and Euler's formula holds") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  Eigen::MatrixXd p(3, 500);
  for (Eigen::Index c = 0; c < p.cols(); ++c) p.col(c) = Eigen::Vector3d(g(rng), g(rng), g(rng)).normalized();
  const auto mesh = std::get<HullMesh>(convex_hull(p));
  CHECK(mesh.vertex_count() == 500);
  CHECK(mesh.face_count() == 2 * 500 - 4);
  CHECK(is_closed_orientable(mesh));
  CHECK(worst_outside(mesh, p) <= 1e-12);
  for (Eigen::Index f = 0; f < mesh.face_count(); ++f) CHECK(mesh.normals.col(f).norm() == doctest::Approx(1.0));
}

TEST_CASE("containment against random interior and exterior points") {
  const auto mesh = std::get<HullMesh>(convex_hull(cube_with_grid(2)));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  for (int k = 0; k < 2000; ++k) {
    const Eigen::Vector3d x(u(rng), u(rng), u(rng));
    const bool inside = (x.array() >= 0.0).all() && (x.array() <= 1.0).all();
    CHECK(contains(mesh, x, 0.0) == inside);
  }
}

TEST_CASE("2D hull is a counter-clockwise polygon") {
  Eigen::MatrixXd p(2, 9);
  p << 0, 1, 1, 0, 0.5, 0.5, 0.0, 1.0, 0.25,
       0, 0, 1, 1, 0.5, 0.0, 0.5, 0.5, 0.75;
  const auto mesh = std::get<HullMesh>(convex_hull(p));
  CHECK(mesh.dim == 2);
  REQUIRE(mesh.polygon.size() == 4);
  CHECK(boundary_measure(mesh) == doctest::Approx(4.0));
  double area2 = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const Eigen::Vector2d a = mesh.vertices.col(mesh.polygon[k]), b = mesh.vertices.col(mesh.polygon[(k + 1) % 4]);
    area2 += a.x() * b.y() - a.y() * b.x();
  }
  CHECK(area2 == doctest::Approx(2.0));
}

TEST_CASE("lower-dimensional input gives a degenerate hull") {
  Eigen::MatrixXd planar(3, 5);
  planar << 0, 1, 1, 0, 0.5,
            0, 0, 1, 1, 0.5,
            2, 2, 2, 2, 2;
  const HullResult r = convex_hull(planar);
  REQUIRE(std::holds_alternative<DegenerateHull>(r));
  const auto& d = std::get<DegenerateHull>(r);
  CHECK(d.affine_rank == 2);
  CHECK(d.boundary.size() == 4);
  CHECK(contains(d, planar, Eigen::Vector3d(0.3, 0.6, 2.0), 1e-12));
  CHECK_FALSE(contains(d, planar, Eigen::Vector3d(0.3, 0.6, 2.1), 1e-12));

  Eigen::MatrixXd line(3, 4);
  line << 0, 1, 2, 3,
          0, 1, 2, 3,
          0, 1, 2, 3;
  const auto l = std::get<DegenerateHull>(convex_hull(line));
  CHECK(l.affine_rank == 1);
  CHECK(l.boundary.size() == 2);
}
