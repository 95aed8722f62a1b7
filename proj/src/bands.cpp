#include "jnr/bands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Geometry>

#include "jnr/parallel.hpp"

namespace jnr {

Direction BandGrid::direction(int i, int j) const {
  return Direction::from_angles(std::numbers::pi * i / (theta_res - 1), 2.0 * std::numbers::pi * j / phi_res);
}

BandGrid band_surface(std::span<const HermitianOperator> ops, int theta_res, int phi_res) {
  if (ops.size() != 3) throw InputError("band surfaces need exactly three operators");
  if (theta_res < 16 || phi_res < 16) throw InputError("band resolutions must be >= 16");
  const Eigen::Index d = common_dimension(ops);
  BandGrid grid;
  grid.theta_res = theta_res;
  grid.phi_res = phi_res;
  grid.levels.assign(static_cast<std::size_t>(d), Eigen::MatrixXd(theta_res, phi_res));
  parallel_for(static_cast<std::size_t>(theta_res), [&](std::size_t row) {
    const int i = static_cast<int>(row);
    for (int j = 0; j < phi_res; ++j) {
      const Direction dir = grid.direction(i, j);
      Matrix h = dir.h(0) * ops[0].matrix();
      h.noalias() += dir.h(1) * ops[1].matrix();
      h.noalias() += dir.h(2) * ops[2].matrix();
      const Spectrum s = jacobi_eigh<double>(h);
      for (Eigen::Index k = 0; k < d; ++k) grid.levels[static_cast<std::size_t>(k)](i, j) = s.values(k);
    }
  });
  return grid;
}

namespace {

std::string describe(const Direction& d) {
  std::ostringstream os;
  os.precision(6);
  os << "(" << d.h.x() << ", " << d.h.y() << ", " << d.h.z() << ")";
  return os.str();
}

double curve_distance(const DegenerateCurve& c, const Direction& d) { return std::abs(c.normal.dot(d.h) - c.offset); }

}  // namespace

GapReport locate_band_degeneracies(const BandGrid& grid, std::span<const HermitianOperator> ops,
                                   const Classification& reference, const FlatOptions& opt) {
  if (grid.levels.size() < 2) throw InputError("band grid has fewer than two levels");
  const Eigen::MatrixXd gap = grid.gap01();
  const double scale = tolerance_scale(ops);
  GapReport report;
  report.min_gap = gap.minCoeff();
  const auto candidates = gap_candidates(gap, opt.promotion_factor * scale);
  FlatOptions local = opt;
  local.theta_res = grid.theta_res;
  local.phi_res = grid.phi_res;
  const double step = 0.5 * std::numbers::pi / (grid.theta_res - 1);
  DegenerateSearch search = refine_candidates(ops, candidates, step, local);
  search.min_grid_gap = report.min_gap;
  report.warnings = search.warnings;
  const Classification found = classify_from_search(ops, search, local);

  auto fail = [](const std::string& what) {
    throw NumericalError("band closings do not match flat classification: " + what);
  };

  if (found.curve.has_value() != reference.curve.has_value()) {
    fail(found.curve ? "bands show a curve of closings, flat search does not"
                     : "flat search shows a curve of closings, bands do not");
  }
  if (found.curve) {
    for (const auto& m : found.curve->members) {
      if (curve_distance(*reference.curve, m.at.direction) > opt.merge_radius) {
        fail("closing " + describe(m.at.direction) + " is off the degenerate curve");
      }
      report.closings.push_back({m.at.direction, m.kind, m.dim_span, m.at.refined_gap, true});
    }
  }

  std::vector<const FlatPortion*> expected;
  for (const auto& f : reference.flats) expected.push_back(&f);
  for (const auto& f : reference.points) expected.push_back(&f);
  std::vector<const FlatPortion*> seen;
  for (const auto& f : found.flats) seen.push_back(&f);
  for (const auto& f : found.points) seen.push_back(&f);
  if (seen.size() != expected.size()) {
    fail(std::to_string(seen.size()) + " isolated closings in the bands, " + std::to_string(expected.size()) +
         " degenerate directions in the flat search");
  }
  std::vector<bool> used(expected.size(), false);
  for (const FlatPortion* f : seen) {
    std::size_t best = expected.size();
    double best_distance = opt.merge_radius;
    for (std::size_t k = 0; k < expected.size(); ++k) {
      const double dist = angular_distance(f->at.direction, expected[k]->at.direction);
      if (!used[k] && dist < best_distance) {
        best = k;
        best_distance = dist;
      }
    }
    if (best == expected.size()) fail("closing " + describe(f->at.direction) + " has no flat-search partner");
    used[best] = true;
    report.closings.push_back({f->at.direction, expected[best]->kind, expected[best]->dim_span, f->at.refined_gap, false});
  }
  std::sort(report.closings.begin(), report.closings.end(), [](const BandClosing& a, const BandClosing& b) {
    if (a.direction.theta != b.direction.theta) return a.direction.theta < b.direction.theta;
    return a.direction.phi < b.direction.phi;
  });
  return report;
}

GapReport locate_band_degeneracies(const BandGrid& grid, std::span<const HermitianOperator> ops,
                                   const FlatOptions& opt) {
  const Classification reference = classify_from_search(ops, find_degenerate_directions(ops, opt), opt);
  return locate_band_degeneracies(grid, ops, reference, opt);
}

}  // namespace jnr
