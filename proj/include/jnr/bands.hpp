#pragma once

// Energy bands E_k(theta, phi) of H(h) over the direction sphere and the
// gap closings between the two lowest bands.

#include <span>
#include <vector>

#include <Eigen/Core>

#include "jnr/flat.hpp"
#include "jnr/herm.hpp"
#include "jnr/support.hpp"

namespace jnr {

/// levels[k](i, j) is the k-th eigenvalue of H at theta_i = pi i / (theta_res - 1),
/// phi_j = 2 pi j / phi_res.
struct BandGrid {
  int theta_res = 0;
  int phi_res = 0;
  std::vector<Eigen::MatrixXd> levels;

  Eigen::MatrixXd gap01() const { return levels.at(1) - levels.at(0); }
  Direction direction(int i, int j) const;
};

struct BandClosing {
  Direction direction;
  FlatKind kind = FlatKind::point;
  int dim_span = 1;
  double refined_gap = 0.0;
  bool on_curve = false;  ///< member of a one-parameter family of closings
};

struct GapReport {
  double min_gap = 0.0;
  std::vector<BandClosing> closings;  ///< sorted by (theta, phi)
  std::vector<RefinementWarning> warnings;
};

BandGrid band_surface(std::span<const HermitianOperator> ops, int theta_res = 181, int phi_res = 360);

/// Refines the grid minima of gap01 and annotates each closing with the flat
/// kind found by an independent flat-classify search. Throws NumericalError
/// when the two sets of directions do not correspond one-to-one within
/// opt.merge_radius.
GapReport locate_band_degeneracies(const BandGrid& grid, std::span<const HermitianOperator> ops,
                                   const FlatOptions& opt = {});

/// Same, cross-referenced against an already computed classification.
GapReport locate_band_degeneracies(const BandGrid& grid, std::span<const HermitianOperator> ops,
                                   const Classification& reference, const FlatOptions& opt = {});

}  // namespace jnr
