#include <algorithm>
#include <cmath>
#include <numbers>

#include "jnr/flat.hpp"
#include "jnr/parallel.hpp"

namespace jnr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

double cyclic_distance(double a, double b) {
  const double d = std::abs(wrap(a) - wrap(b));
  return std::min(d, kTwoPi - d);
}

double planar_gap(std::span<const HermitianOperator> pair, double alpha) {
  const Matrix h = std::cos(alpha) * pair[0].matrix() + std::sin(alpha) * pair[1].matrix();
  const Spectrum s = jacobi_eigh<double>(h);
  return std::max(0.0, s.values(1) - s.values(0));
}

double refine_angle(std::span<const HermitianOperator> pair, double centre, double half_width, double& gap) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = centre - half_width, b = centre + half_width;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = planar_gap(pair, c), fd = planar_gap(pair, d);
  double best = planar_gap(pair, centre), xbest = centre;
  for (int k = 0; k < 120 && b - a > 0.0; ++k) {
    if (fc < best) best = fc, xbest = c;
    if (fd < best) best = fd, xbest = d;
    if (fc < fd) {
      b = d, d = c, fd = fc;
      c = b - r * (b - a);
      fc = planar_gap(pair, c);
    } else {
      a = c, c = d, fc = fd;
      d = a + r * (b - a);
      fd = planar_gap(pair, d);
    }
  }
  gap = best;
  return wrap(xbest);
}

double point_line_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  const Eigen::Vector2d u = b - a;
  const double len = u.norm();
  if (len == 0.0) return (p - a).norm();
  return std::abs(u.x() * (p.y() - a.y()) - u.y() * (p.x() - a.x())) / len;
}

double turn_angle(const Eigen::Vector2d& prev, const Eigen::Vector2d& at, const Eigen::Vector2d& next) {
  const Eigen::Vector2d u = at - prev;
  const Eigen::Vector2d v = next - at;
  return std::atan2(u.x() * v.y() - u.y() * v.x(), u.dot(v));
}

}  // namespace

PlanarBoundary planar_boundary(std::span<const HermitianOperator> pair, std::size_t angles, const FlatOptions& opt) {
  if (pair.size() != 2) throw InputError("planar boundary needs exactly two operators");
  if (angles < 8) throw InputError("planar boundary needs at least 8 directions");
  common_dimension(pair);
  const double scale = tolerance_scale(pair);
  const double tau = opt.tau_factor * scale;
  const auto dirs = planar_directions(angles);
  Sweep sw = sweep(pair, dirs);

  const double step = kTwoPi / static_cast<double>(angles);
  const std::size_t n = dirs.size();
  std::vector<double> starts;
  for (std::size_t k = 0; k < n; ++k) {
    const double g = sw.samples[k].gap;
    const bool minimum = g <= sw.samples[(k + n - 1) % n].gap && g <= sw.samples[(k + 1) % n].gap;
    if (minimum || g < opt.promotion_factor * scale) starts.push_back(dirs[k].phi);
  }
  std::vector<double> refined(starts.size()), gaps(starts.size());
  parallel_for(starts.size(), [&](std::size_t k) { refined[k] = refine_angle(pair, starts[k], step, gaps[k]); });

  std::vector<std::size_t> order(starts.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gaps[a] < gaps[b]; });
  PlanarBoundary out;
  for (std::size_t k : order) {
    if (!(gaps[k] < tau)) continue;
    const bool duplicate = std::any_of(out.degenerate_angles.begin(), out.degenerate_angles.end(),
                                       [&](double a) { return cyclic_distance(a, refined[k]) < opt.merge_radius; });
    if (!duplicate) out.degenerate_angles.push_back(refined[k]);
  }
  std::sort(out.degenerate_angles.begin(), out.degenerate_angles.end());

  out.cloud = sw.cloud;
  for (std::size_t k = 0; k < out.degenerate_angles.size(); ++k) {
    const Direction dir = Direction::planar(out.degenerate_angles[k]);
    const Matrix h = dir.h(0) * pair[0].matrix() + dir.h(1) * pair[1].matrix();
    const Spectrum s = jacobi_eigh<double>(h);
    DegenerateDirection d;
    d.direction = dir;
    d.refined_gap = s.values(1) - s.values(0);
    d.basis = s.vectors.leftCols(2);
    d.energy = s.values(0);
    const FlatPortion flat = make_flat(pair, d, opt.rank_tolerance);
    const Eigen::MatrixXd rim = flat_rim(flat, 5);
    for (Eigen::Index c = 0; c < rim.cols(); ++c) {
      out.cloud.append(rim.col(c), {PointTag::Kind::flat, static_cast<std::int64_t>(k), 0});
    }
  }

  std::vector<double> sampled;
  for (const auto& d : dirs) sampled.push_back(d.phi);
  sampled.insert(sampled.end(), out.degenerate_angles.begin(), out.degenerate_angles.end());
  std::sort(sampled.begin(), sampled.end());
  out.max_step = kTwoPi - sampled.back() + sampled.front();
  for (std::size_t k = 1; k < sampled.size(); ++k) out.max_step = std::max(out.max_step, sampled[k] - sampled[k - 1]);
  return out;
}

PlanarClassification classify_projection_2d(std::span<const HermitianOperator> pair, const PlanarBoundary& boundary) {
  if (pair.size() != 2) throw InputError("planar classification needs exactly two operators");
  PlanarClassification out;
  const HullResult hull = convex_hull(boundary.cloud.points);
  if (!std::holds_alternative<HullMesh>(hull)) return out;
  const HullMesh& mesh = std::get<HullMesh>(hull);
  const auto m = mesh.polygon.size();
  if (m < 3) return out;
  std::vector<Eigen::Vector2d> v(m);
  for (std::size_t k = 0; k < m; ++k) v[k] = mesh.vertices.col(mesh.polygon[k]);
  auto at = [&](std::size_t k) -> const Eigen::Vector2d& { return v[k % m]; };

  // A vertex is straight when it sits on the chord of its neighbours to
  // within 1e-6 of that chord's length.
  std::vector<bool> straight(m);
  for (std::size_t k = 0; k < m; ++k) {
    const auto& prev = at(k + m - 1);
    const auto& next = at(k + 1);
    straight[k] = point_line_distance(v[k], prev, next) <= 1e-6 * (next - prev).norm();
  }
  const double corner_threshold = 2.0 * boundary.max_step + 1e-3;
  std::vector<bool> corner(m);
  for (std::size_t k = 0; k < m; ++k) corner[k] = !straight[k] && turn_angle(at(k + m - 1), v[k], at(k + 1)) > corner_threshold;

  std::size_t first = 0;
  while (first < m && straight[first]) ++first;
  if (first == m) return out;

  const double diameter = mesh.diameter;
  auto has_interior_point = [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    const Eigen::Vector2d u = b - a;
    const double len2 = u.squaredNorm();
    if (len2 == 0.0) return false;
    for (Eigen::Index c = 0; c < boundary.cloud.size(); ++c) {
      const Eigen::Vector2d p = boundary.cloud.points.col(c);
      const double t = (p - a).dot(u) / len2;
      if (t > 1e-6 && t < 1.0 - 1e-6 && point_line_distance(p, a, b) <= 1e-6 * std::sqrt(len2)) return true;
    }
    return false;
  };

  // Runs of edges joined at straight vertices, each bounded by non-straight
  // vertices; a run is a segment of the boundary when it has an interior
  // sample and is not negligibly short.
  std::vector<std::pair<std::size_t, std::size_t>> segments;  // run endpoints (vertex positions)
  std::size_t k = first;
  do {
    std::size_t end = (k + 1) % m;
    std::size_t edges = 1;
    while (straight[end]) {
      end = (end + 1) % m;
      ++edges;
    }
    const double length = (v[end] - v[k]).norm();
    const bool segment = length > 1e-4 * diameter && (edges >= 2 || has_interior_point(v[k], v[end]));
    if (segment) segments.emplace_back(k, end);
    k = end;
  } while (k != first);

  out.segments = static_cast<int>(segments.size());
  std::vector<std::size_t> corner_ids;
  for (std::size_t c = 0; c < m; ++c)
    if (corner[c]) corner_ids.push_back(c);
  out.corners = static_cast<int>(corner_ids.size());

  auto is_endpoint = [&](std::size_t c, const std::pair<std::size_t, std::size_t>& s) { return s.first == c || s.second == c; };
  if (out.segments == 0 && out.corners == 0) {
    out.label = PlanarClass::oval;
  } else if (out.segments == 1 && out.corners == 0) {
    out.label = PlanarClass::flat_portion;
  } else if (out.segments == 2 && out.corners == 1 && is_endpoint(corner_ids[0], segments[0]) &&
             is_endpoint(corner_ids[0], segments[1])) {
    out.label = PlanarClass::ellipse_plus_point;
  } else if (out.segments == 3 && out.corners == 3) {
    out.label = PlanarClass::triangle;
  }
  return out;
}

PlanarClassification classify_projection_2d(std::span<const HermitianOperator> pair) {
  return classify_projection_2d(pair, planar_boundary(pair));
}

}  // namespace jnr
