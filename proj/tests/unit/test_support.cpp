#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "jnr/fixtures.hpp"
#include "jnr/random.hpp"
#include "jnr/support.hpp"

using namespace jnr;

TEST_CASE("direction helpers") {
  const Direction d = Direction::from_angles(0.7, 2.1);
  CHECK(d.h.norm() == doctest::Approx(1.0));
  const Direction e = Direction::from_vector(2.5 * d.h);
  CHECK(e.theta == doctest::Approx(0.7));
  CHECK(e.phi == doctest::Approx(2.1));
  CHECK(angular_distance(d, Direction::from_vector(-d.h)) == doctest::Approx(std::numbers::pi));

  CHECK(fibonacci_sphere(1000).size() == 1000);
  const auto grid = angle_grid(10, 20);
  CHECK(grid.size() == 200);
  CHECK(grid.front().theta == 0.0);
  CHECK(grid.back().theta == doctest::Approx(std::numbers::pi));
  for (const auto& g : grid) CHECK(g.phi < 2.0 * std::numbers::pi);

  const auto r1 = random_directions(50, 9), r2 = random_directions(50, 9), r3 = random_directions(50, 10);
  CHECK(r1[17].h == r2[17].h);
  CHECK(r1[17].h != r3[17].h);
}

TEST_CASE("supporting point energy agrees with an independent eigensolver") {
  for (const char* name : {"class2", "class7", "setB"}) {
    const auto& ops = fixture(name).operators;
    for (const auto& dir : random_directions(200, 21)) {
      const BoundarySample s = supporting_point(ops, dir);
      const Matrix h = dir.h(0) * ops[0].matrix() + dir.h(1) * ops[1].matrix() + dir.h(2) * ops[2].matrix();
      const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Matrix>(h).eigenvalues();
      CHECK(std::abs(s.energy - ev(0)) < 1e-12);
      CHECK(std::abs(s.gap - (ev(1) - ev(0))) < 1e-12);
      CHECK(std::abs(dir.h.dot(s.point) - s.energy) < 1e-12);
    }
  }
}

TEST_CASE("adaptive sweep certifies its own hull error") {
  const auto& ops = fixture("class6").operators;
  const AdaptiveSweep body = adaptive_sweep(ops, 400);
  CHECK(body.sweep.samples.size() == 400);
  CHECK(body.certified_depth >= 0.0);
  Engine engine = make_engine(31);
  double worst = 0.0;
  for (int k = 0; k < 5000; ++k) {
    const Vector psi = random_pure_vector(3, engine);
    Eigen::Vector3d q;
    for (int i = 0; i < 3; ++i) q(i) = expectation_value(ops[i].matrix(), psi);
    worst = std::max(worst, max_violation(body.mesh, q));
  }
  CHECK(worst <= body.certified_depth + 1e-12);
}

TEST_CASE("level sweeps") {
  Engine engine = make_engine(41);
  const OperatorList pair{random_hermitian(5, engine), random_hermitian(5, engine)};
  const auto dirs = planar_directions(64);
  const PointCloud l0 = level_sweep(pair, 0, dirs);
  const Sweep s = sweep(pair, dirs);
  CHECK((l0.points - s.cloud.points).cwiseAbs().maxCoeff() < 1e-12);
  // Top level at alpha equals the ground level at alpha + pi.
  const PointCloud top = level_sweep(pair, 4, planar_directions(64, std::numbers::pi));
  CHECK((top.points - l0.points).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_THROWS_AS(level_sweep(pair, 5, dirs), InputError);
}

TEST_CASE("projection keeps provenance") {
  const Sweep s = sweep(fixture("class3").operators, fibonacci_sphere(20));
  const PointCloud p = project(s.cloud, {0, 2});
  CHECK(p.n() == 2);
  CHECK(p.provenance.size() == 20);
  CHECK(p.points.row(1) == s.cloud.points.row(2));
}
