#include "jnr/support.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "jnr/parallel.hpp"
#include "jnr/random.hpp"

namespace jnr {

Direction Direction::from_angles(double theta, double phi) {
  Direction d;
  d.theta = theta;
  d.phi = phi;
  d.h = Eigen::Vector3d(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
  return d;
}

Direction Direction::from_vector(const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InputError("direction vector must be nonzero and finite");
  const Eigen::Vector3d u = v / n;
  Direction d;
  d.h = u;
  d.theta = std::acos(std::clamp(u.z(), -1.0, 1.0));
  double phi = std::atan2(u.y(), u.x());
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
  d.phi = (u.x() == 0.0 && u.y() == 0.0) ? 0.0 : phi;
  return d;
}

double angular_distance(const Direction& a, const Direction& b) {
  // atan2 form stays accurate for nearly parallel vectors.
  return std::atan2(a.h.cross(b.h).norm(), a.h.dot(b.h));
}

void PointCloud::append(const Eigen::Ref<const Eigen::VectorXd>& p, PointTag tag) {
  if (points.size() == 0) points.resize(p.size(), 0);
  if (p.size() != points.rows()) throw InputError("point dimension does not match cloud");
  points.conservativeResize(Eigen::NoChange, points.cols() + 1);
  points.col(points.cols() - 1) = p;
  provenance.push_back(tag);
}

void PointCloud::append(const PointCloud& other) {
  if (other.size() == 0) return;
  if (points.size() == 0) points.resize(other.points.rows(), 0);
  if (other.points.rows() != points.rows()) throw InputError("point dimension does not match cloud");
  const Eigen::Index old = points.cols();
  points.conservativeResize(Eigen::NoChange, old + other.points.cols());
  points.rightCols(other.points.cols()) = other.points;
  provenance.insert(provenance.end(), other.provenance.begin(), other.provenance.end());
}

HermitianOperator supporting_hamiltonian(std::span<const HermitianOperator> ops, const Eigen::Vector3d& h) {
  if (ops.size() < 2 || ops.size() > 3) throw InputError("supporting Hamiltonians need 2 or 3 operators");
  return linear_combination(ops, h.head(static_cast<Eigen::Index>(ops.size())));
}

BoundarySample supporting_point(std::span<const HermitianOperator> ops, const Direction& dir) {
  common_dimension(ops);
  const HermitianOperator h = supporting_hamiltonian(ops, dir.h);
  const Spectrum s = eigh(h);
  BoundarySample b;
  b.direction = dir;
  b.energy = s.values(0);
  b.gap = std::max(0.0, s.values(1) - s.values(0));
  b.ground_state = s.vectors.col(0);
  b.point.resize(static_cast<Eigen::Index>(ops.size()));
  for (std::size_t i = 0; i < ops.size(); ++i) {
    b.point(static_cast<Eigen::Index>(i)) = expectation_value(ops[i].matrix(), b.ground_state);
  }
  return b;
}

Sweep sweep(std::span<const HermitianOperator> ops, std::span<const Direction> grid) {
  if (grid.empty()) throw InputError("sweep needs a nonempty direction grid");
  common_dimension(ops);
  Sweep out;
  out.samples.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { out.samples[i] = supporting_point(ops, grid[i]); });
  out.cloud.points.resize(static_cast<Eigen::Index>(ops.size()), static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out.cloud.points.col(static_cast<Eigen::Index>(i)) = out.samples[i].point;
    out.cloud.provenance.push_back({PointTag::Kind::direction, static_cast<std::int64_t>(i), 0});
  }
  return out;
}

std::vector<Direction> fibonacci_sphere(std::size_t count) {
  std::vector<Direction> out;
  out.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < count; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
    const double phi = std::fmod(golden * static_cast<double>(i), 2.0 * std::numbers::pi);
    out.push_back(Direction::from_angles(std::acos(z), phi));
  }
  return out;
}

std::vector<Direction> random_directions(std::size_t count, std::uint64_t seed) {
  Engine engine = make_engine(seed, 0xd1ec);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Direction> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double a = u(engine);
    const double b = u(engine);
    out.push_back(Direction::from_angles(std::acos(1.0 - 2.0 * a), 2.0 * std::numbers::pi * b));
  }
  return out;
}

std::vector<Direction> angle_grid(int theta_res, int phi_res) {
  if (theta_res < 2 || phi_res < 1) throw InputError("angle grid needs theta_res >= 2 and phi_res >= 1");
  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>(theta_res) * static_cast<std::size_t>(phi_res));
  for (int i = 0; i < theta_res; ++i) {
    const double theta = std::numbers::pi * i / (theta_res - 1);
    for (int j = 0; j < phi_res; ++j) {
      out.push_back(Direction::from_angles(theta, 2.0 * std::numbers::pi * j / phi_res));
    }
  }
  return out;
}

std::vector<Direction> planar_directions(std::size_t count, double offset) {
  std::vector<Direction> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    double a = offset + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
    a = std::fmod(a, 2.0 * std::numbers::pi);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    out.push_back(Direction::planar(a));
  }
  return out;
}

HullResult convex_hull(const PointCloud& cloud) { return convex_hull(cloud.points); }

namespace {

/// Support value s(n) = max over the body of n . x.
double support_value(std::span<const HermitianOperator> ops, const Eigen::Vector3d& n) {
  Matrix h = -n(0) * ops[0].matrix();
  for (std::size_t i = 1; i < ops.size(); ++i) h.noalias() -= n(static_cast<Eigen::Index>(i)) * ops[i].matrix();
  return -jacobi_eigh<double>(h).values(0);
}

std::vector<double> facet_depths(std::span<const HermitianOperator> ops, const HullMesh& mesh) {
  std::vector<double> depth(static_cast<std::size_t>(mesh.face_count()));
  parallel_for(depth.size(), [&](std::size_t f) {
    const auto fi = static_cast<Eigen::Index>(f);
    depth[f] = support_value(ops, mesh.normals.col(fi)) - mesh.offsets(fi);
  });
  return depth;
}

}  // namespace

AdaptiveSweep adaptive_sweep(std::span<const HermitianOperator> ops, std::size_t budget, const PointCloud& extra,
                             std::size_t initial) {
  if (ops.size() != 3) throw InputError("adaptive sweep needs exactly three operators");
  if (budget < 4) throw InputError("adaptive sweep needs a budget of at least 4 directions");
  if (initial == 0 || initial > budget) initial = std::max<std::size_t>(4, 3 * budget / 4);
  std::vector<Direction> dirs = fibonacci_sphere(initial);
  AdaptiveSweep out;
  auto rebuild = [&] {
    out.sweep = sweep(ops, dirs);
    out.cloud = out.sweep.cloud;
    out.cloud.append(extra);
    HullResult hull = convex_hull(out.cloud);
    if (!std::holds_alternative<HullMesh>(hull)) throw InputError("adaptive sweep needs a full-dimensional body");
    out.mesh = std::move(std::get<HullMesh>(hull));
  };
  rebuild();
  const std::size_t batch = std::max<std::size_t>(16, budget / 40);
  // New directions in one round keep apart by half the mean lattice spacing.
  const double spacing = 0.5 * std::sqrt(4.0 * std::numbers::pi / static_cast<double>(budget));
  while (dirs.size() < budget) {
    const std::vector<double> depth = facet_depths(ops, out.mesh);
    std::vector<std::size_t> order(depth.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return depth[a] > depth[b]; });
    const std::size_t before = dirs.size();
    const std::size_t target = std::min(budget, before + batch);
    for (std::size_t f : order) {
      if (dirs.size() >= target || !(depth[f] > 0.0)) break;
      const Direction d = Direction::from_vector(-out.mesh.normals.col(static_cast<Eigen::Index>(f)));
      const bool near = std::any_of(dirs.begin() + static_cast<std::ptrdiff_t>(before), dirs.end(),
                                    [&](const Direction& e) { return angular_distance(d, e) < spacing; });
      if (!near) dirs.push_back(d);
    }
    if (dirs.size() == before) break;
    rebuild();
  }
  const std::vector<double> depth = facet_depths(ops, out.mesh);
  out.certified_depth = depth.empty() ? 0.0 : std::max(0.0, *std::max_element(depth.begin(), depth.end()));
  return out;
}

PointCloud project(const PointCloud& cloud, std::pair<int, int> axes) {
  const int n = cloud.n();
  if (axes.first == axes.second || axes.first < 0 || axes.second < 0 || axes.first >= n || axes.second >= n) {
    throw InputError("invalid projection axes");
  }
  PointCloud out;
  out.points.resize(2, cloud.size());
  out.points.row(0) = cloud.points.row(axes.first);
  out.points.row(1) = cloud.points.row(axes.second);
  out.provenance = cloud.provenance;
  return out;
}

PointCloud level_sweep(std::span<const HermitianOperator> pair, int level, std::span<const Direction> grid) {
  if (pair.size() != 2) throw InputError("level_sweep takes exactly two operators");
  const Eigen::Index d = common_dimension(pair);
  if (level < 0 || level >= d) throw InputError("level out of range");
  PointCloud out;
  out.points.resize(2, static_cast<Eigen::Index>(grid.size()));
  out.provenance.resize(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    const Spectrum s = eigh(supporting_hamiltonian(pair, grid[i].h));
    const auto v = s.vectors.col(level);
    out.points(0, static_cast<Eigen::Index>(i)) = expectation_value(pair[0].matrix(), v);
    out.points(1, static_cast<Eigen::Index>(i)) = expectation_value(pair[1].matrix(), v);
    out.provenance[i] = {PointTag::Kind::level, static_cast<std::int64_t>(i), level};
  });
  return out;
}

}  // namespace jnr
