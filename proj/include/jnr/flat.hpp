#pragma once

// Flat portions of the joint numerical range of three 3x3 Hermitian operators.
//
// A face of dimension >= 1 on the boundary appears exactly where the supporting
// Hamiltonian H(h) has a degenerate ground level. For a doubly degenerate
// level with orthonormal ground vectors X, the compressions G_i = X^H F_i X
// and I_2 span a space S with 1 <= dim S <= 3:
//   dim S = 1  the plane touches the body at a point,
//   dim S = 2  the contact set is a segment,
//   dim S = 3  the contact set is a filled ellipse.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "jnr/herm.hpp"
#include "jnr/support.hpp"

namespace jnr {

struct FlatOptions {
  int theta_res = 128;
  int phi_res = 256;
  double tau_factor = 1e-9;        ///< tau_deg = tau_factor * scale
  double promotion_factor = 1e-2;  ///< grid nodes below this * scale are refined
  double merge_radius = 1e-3;      ///< radians
  int max_iterations = 200;        ///< Nelder-Mead iteration cap
  double simplex_tolerance = 1e-12;
  double rank_tolerance = 1e-7;    ///< relative singular-value cut for dim S
  int curve_min_points = 13;       ///< more than 12 directions on a circle => curve
  double curve_tolerance = 1e-6;
};

/// A refinement that stopped at the iteration cap without reaching the
/// degeneracy threshold or a converged simplex.
struct RefinementWarning {
  Direction start;
  Direction reached;
  double gap = 0.0;
  int iterations = 0;
  std::string reason;
};

struct DegenerateDirection {
  Direction direction;
  double refined_gap = 0.0;
  Matrix basis;         ///< d x 2, orthonormal ground vectors
  double energy = 0.0;  ///< ground eigenvalue of H(h)
};

enum class FlatKind { point, segment, ellipse };

const char* to_string(FlatKind kind);

struct FlatPortion {
  DegenerateDirection at;
  std::vector<Matrix> compressed;  ///< G_i = X^H F_i X, 2x2 Hermitian
  int dim_span = 1;
  FlatKind kind = FlatKind::point;
};

/// Outcome of one local refinement.
struct Refinement {
  Direction direction;
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct DegenerateSearch {
  std::vector<DegenerateDirection> directions;  ///< sorted by (theta, phi)
  std::vector<RefinementWarning> warnings;
  double tau = 0.0;
  double scale = 1.0;
  double min_grid_gap = 0.0;
};

/// lambda_1 - lambda_0 of H(h).
double gap_function(std::span<const HermitianOperator> ops, const Direction& dir);

/// Local minimisation of the gap starting from `start`: Nelder-Mead in a
/// tangent chart (iteration cap and simplex tolerance from `opt`), followed by
/// a degenerate-perturbation polish once the gap is small.
Refinement refine_degeneracy(std::span<const HermitianOperator> ops, const Direction& start, double step,
                             const FlatOptions& opt, double scale);

/// Grid scan, refinement of promoted nodes, threshold at tau_deg and merge.
DegenerateSearch find_degenerate_directions(std::span<const HermitianOperator> ops, const FlatOptions& opt = {});

/// Refine candidate directions (e.g. grid minima found elsewhere) and keep the
/// degenerate ones, merged and sorted like find_degenerate_directions.
DegenerateSearch refine_candidates(std::span<const HermitianOperator> ops, std::span<const Direction> candidates,
                                   double step, const FlatOptions& opt);

/// Nodes of a gap array over angle_grid(rows, cols) that are local minima of
/// their 8-neighbourhood (phi periodic, each pole one node) or fall below
/// `promote`.
std::vector<Direction> gap_candidates(const Eigen::MatrixXd& gap, double promote);

/// G_i = X^H F_i X.
std::vector<Matrix> compress(std::span<const HermitianOperator> ops, const Matrix& basis);

/// Rank of the real Gram matrix of {I_2, G_1, ..., G_n} in the Pauli basis.
int span_dim(std::span<const Matrix> compressed, double rank_tolerance = 1e-7);

/// Builds X, the compressions, dim S and the kind for one degenerate direction.
FlatPortion make_flat(std::span<const HermitianOperator> ops, const DegenerateDirection& at,
                      double rank_tolerance = 1e-7);

/// Expectation tuple (<F_1>, ..., <F_n>) of the ground-space state X c.
Eigen::VectorXd flat_point(const FlatPortion& flat, const Eigen::Vector2cd& c);

/// Points on the relative boundary of a flat: the ellipse rim (count points,
/// evenly spaced) or the segment endpoints plus interior points.
Eigen::MatrixXd flat_rim(const FlatPortion& flat, int count);

struct ClassLabel {
  int s = 0;
  int e = 0;
  bool s_infinite = false;
  bool irreducible = true;
  /// "sXeY", or "s_inf_eY" for a degenerate curve.
  std::string class_name() const;
  bool operator==(const ClassLabel&) const = default;
};

/// Degenerate directions forming a circle on the direction sphere
/// {h : normal . h = offset}.
struct DegenerateCurve {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  double offset = 0.0;
  double residual = 0.0;
  std::vector<FlatPortion> members;
};

struct Classification {
  ClassLabel label;
  std::vector<FlatPortion> flats;   ///< isolated segments and ellipses
  std::vector<FlatPortion> points;  ///< isolated point-kind degeneracies
  std::optional<DegenerateCurve> curve;
  std::vector<RefinementWarning> warnings;
  double tau = 0.0;
  double scale = 1.0;
  double min_grid_gap = 0.0;
};

enum class PlanarClass { oval, flat_portion, ellipse_plus_point, triangle, unclassified };

const char* to_string(PlanarClass c);

struct PlanarClassification {
  PlanarClass label = PlanarClass::unclassified;
  int segments = 0;
  int corners = 0;
};

/// {F_1, F_2, F_3, I} is linearly dependent: the body lies in a plane and is
/// analysed as a pair. For a triangle or ellipse-plus-point pair, the body of
/// revolution of that planar range (the unitarily reducible classes) is
/// reported as `rotational_label`.
struct ReducibleInput {
  Eigen::Vector4d relation = Eigen::Vector4d::Zero();  ///< c with c0 F1 + c1 F2 + c2 F3 + c3 I = 0
  std::array<int, 2> pair{0, 1};
  PlanarClassification planar;
  std::optional<ClassLabel> rotational_label;
};

using ClassifyResult = std::variant<Classification, ReducibleInput>;

/// Rank of the Hilbert-Schmidt Gram matrix of {F_1, ..., F_n, I}.
int operator_span_rank(std::span<const HermitianOperator> ops);

/// (s, e) class of a triple of 3x3 Hermitian operators.
ClassifyResult classify(std::span<const HermitianOperator> ops, const FlatOptions& opt = {});

/// Classification from an existing degenerate-direction search.
Classification classify_from_search(std::span<const HermitianOperator> ops, const DegenerateSearch& search,
                                    const FlatOptions& opt = {});

struct StabilityRow {
  double tau = 0.0;
  ClassLabel label;
  int degenerate_directions = 0;
};

/// Classification at several tau_deg values (absolute, already scaled) from a
/// single grid scan.
std::vector<StabilityRow> tolerance_sweep(std::span<const HermitianOperator> ops, std::span<const double> taus,
                                          const FlatOptions& opt = {});

// ---------------------------------------------------------------- n = 2

struct PlanarBoundary {
  PointCloud cloud;                      ///< 2 x N: sweep points, then flat points
  std::vector<double> degenerate_angles;
  double max_step = 0.0;                 ///< largest gap between sampled angles
};

/// Ground-state boundary of a pair at `angles` evenly spaced planar
/// directions, plus the full extent of every flat found by refining the
/// planar gap.
PlanarBoundary planar_boundary(std::span<const HermitianOperator> pair, std::size_t angles = 720,
                               const FlatOptions& opt = {});

/// Oval / flat portion / ellipse plus point / triangle from the structure of
/// the sampled 2D hull: straight runs of collinear hull vertices and corners
/// whose turning angle exceeds the sampling resolution by more than 1e-3 rad.
PlanarClassification classify_projection_2d(std::span<const HermitianOperator> pair, const PlanarBoundary& boundary);

/// Convenience: planar_boundary + classify_projection_2d.
PlanarClassification classify_projection_2d(std::span<const HermitianOperator> pair);

// ---------------------------------------------------------------- checks

/// Direct algebraic conic fit a x^2 + b xy + c y^2 + d x + e y + f = 0: the
/// coefficient vector is the eigenvector of the smallest eigenvalue of the
/// scatter matrix of the lifted points (after centring and scaling).
struct ConicFit {
  Eigen::Matrix<double, 6, 1> coefficients;
  double max_residual = 0.0;  ///< max |Q(p)| / |grad Q(p)|, a first-order distance
  bool is_ellipse = false;
};

ConicFit fit_conic(const Eigen::Matrix2Xd& points);

}  // namespace jnr
