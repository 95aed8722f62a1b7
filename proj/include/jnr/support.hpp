#pragma once

// Joint numerical range boundary via ground states of supporting Hamiltonians
// H(h) = sum_i h_i F_i.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "jnr/herm.hpp"
#include "jnr/hull.hpp"

namespace jnr {

/// Unit direction h = (sin t cos p, sin t sin p, cos t) with t in [0, pi] and
/// p in [0, 2 pi). Planar directions use t = pi/2 and p as the planar angle.
struct Direction {
  double theta = 0.0;
  double phi = 0.0;
  Eigen::Vector3d h = Eigen::Vector3d::UnitZ();

  static Direction from_angles(double theta, double phi);
  static Direction from_vector(const Eigen::Vector3d& v);
  static Direction planar(double alpha) { return from_angles(0.5 * 3.14159265358979323846, alpha); }
};

/// Great-circle distance in radians.
double angular_distance(const Direction& a, const Direction& b);

struct BoundarySample {
  Direction direction;
  Eigen::VectorXd point;  ///< (<F_1>, ..., <F_n>) in the ground state
  double energy = 0.0;    ///< lowest eigenvalue of H(h)
  double gap = 0.0;       ///< lambda_1 - lambda_0 of H(h)
  Vector ground_state;
};

struct PointTag {
  enum class Kind : std::uint8_t { direction, level, oracle, flat };
  Kind kind = Kind::direction;
  std::int64_t index = 0;  ///< direction / oracle sample / flat index
  int level = 0;           ///< eigen-level for level sweeps
};

struct PointCloud {
  Eigen::MatrixXd points;  ///< n x N, one point per column
  std::vector<PointTag> provenance;

  int n() const { return static_cast<int>(points.rows()); }
  Eigen::Index size() const { return points.cols(); }
  void append(const Eigen::Ref<const Eigen::VectorXd>& p, PointTag tag);
  void append(const PointCloud& other);
};

struct Sweep {
  PointCloud cloud;
  std::vector<BoundarySample> samples;
};

/// sum_i h_i F_i for the first ops.size() components of h.
HermitianOperator supporting_hamiltonian(std::span<const HermitianOperator> ops, const Eigen::Vector3d& h);

/// Ground-state point of H(h). With n = 2 only (h_1, h_2) are used. When the
/// ground level is degenerate the returned point is one representative of the
/// flat portion; the energy and support contracts still hold.
BoundarySample supporting_point(std::span<const HermitianOperator> ops, const Direction& dir);

/// One sample per direction, in grid order.
Sweep sweep(std::span<const HermitianOperator> ops, std::span<const Direction> grid);

/// Deterministic near-uniform Fibonacci lattice on the sphere.
std::vector<Direction> fibonacci_sphere(std::size_t count);
/// Seeded uniform directions (theta from arccos(1 - 2u), phi uniform).
std::vector<Direction> random_directions(std::size_t count, std::uint64_t seed);
/// Tensor grid: theta_i = pi i / (theta_res - 1), phi_j = 2 pi j / phi_res.
std::vector<Direction> angle_grid(int theta_res, int phi_res);
/// Planar directions alpha_k = offset + 2 pi k / count.
std::vector<Direction> planar_directions(std::size_t count, double offset = 0.0);

/// Hull of a cloud; see convex_hull.
HullResult convex_hull(const PointCloud& cloud);

/// Sweep over `budget` directions placed adaptively: `initial` Fibonacci
/// directions, then repeated rounds that sample opposite the outward normal
/// of the hull facets lying deepest inside the body. For a facet with outward
/// normal n and offset c the depth is s(n) - c, where s(n) = -lambda_0(H(-n))
/// is the body's support value, so `certified_depth` bounds how far any point
/// of the body can lie outside the final hull. `extra` points (e.g. flat rims)
/// join the hull but do not use up directions. Needs three operators.
struct AdaptiveSweep {
  Sweep sweep;
  PointCloud cloud;  ///< sweep points followed by `extra`
  HullMesh mesh;
  double certified_depth = 0.0;
};

AdaptiveSweep adaptive_sweep(std::span<const HermitianOperator> ops, std::size_t budget,
                             const PointCloud& extra = {}, std::size_t initial = 0);

/// Copy of two coordinates (0-based axes) with provenance preserved.
PointCloud project(const PointCloud& cloud, std::pair<int, int> axes);

/// For each planar direction, the expectation pair of the k-th eigenvector of
/// h_1 F_1 + h_2 F_2. Level 0 reproduces the boundary sweep.
PointCloud level_sweep(std::span<const HermitianOperator> pair, int level, std::span<const Direction> grid);

}  // namespace jnr
