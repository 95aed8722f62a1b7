#pragma once

// Convex hulls of 2D/3D point sets with exact orientation decisions.

#include <array>
#include <cstddef>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace jnr {

/// Convex polytope given by its vertices and outward face planes
/// {x : normal . x = offset}. In 3D the faces are triangles; in 2D the faces
/// are the edges of a counter-clockwise polygon.
struct HullMesh {
  int dim = 3;
  Eigen::MatrixXd vertices;                      ///< dim x V
  std::vector<Eigen::Index> source;              ///< input column of each vertex
  std::vector<std::array<Eigen::Index, 3>> triangles;  ///< 3D only; vertex positions
  std::vector<Eigen::Index> polygon;             ///< 2D only; ccw vertex positions
  Eigen::MatrixXd normals;                       ///< dim x F, outward unit
  Eigen::VectorXd offsets;                       ///< F
  double diameter = 0.0;                         ///< of the input point set

  Eigen::Index face_count() const { return offsets.size(); }
  Eigen::Index vertex_count() const { return vertices.cols(); }
  /// Default hull tolerance, 1e-9 x diameter.
  double tolerance() const { return 1e-9 * diameter; }
};

/// Points spanning fewer than `dim` affine dimensions. The hull is reported in
/// the affine subspace origin + basis * t.
struct DegenerateHull {
  int dim = 3;
  int affine_rank = 0;
  Eigen::VectorXd origin;
  Eigen::MatrixXd basis;                   ///< dim x affine_rank, orthonormal
  std::vector<Eigen::Index> boundary;      ///< input columns: ccw polygon (rank 2), endpoints (rank 1), point (rank 0)
  double diameter = 0.0;
};

using HullResult = std::variant<HullMesh, DegenerateHull>;

/// Convex hull of the columns of `points` (2 or 3 rows).
///
/// The affine rank is measured with an SVD of the centred points (singular
/// values below 1e-9 x the largest count as zero). Full-rank input goes to an
/// exact-predicate quickhull (3D) or monotone chain (2D); lower rank yields a
/// DegenerateHull.
HullResult convex_hull(const Eigen::MatrixXd& points);

/// n_f . p <= c_f + tol for every face.
bool contains(const HullMesh& mesh, const Eigen::Ref<const Eigen::VectorXd>& p, double tol);

/// Membership in the lower-dimensional hull: distance to the affine subspace
/// and to the sub-hull both within tol.
bool contains(const DegenerateHull& hull, const Eigen::MatrixXd& points,
              const Eigen::Ref<const Eigen::VectorXd>& p, double tol);

/// Largest n_f . p - c_f over faces (positive means outside).
double max_violation(const HullMesh& mesh, const Eigen::Ref<const Eigen::VectorXd>& p);

/// Group of edge-connected coplanar triangles.
struct Facet {
  Eigen::Vector3d normal;
  double offset = 0.0;
  double area = 0.0;
  std::vector<Eigen::Index> faces;
};

/// Merge edge-adjacent triangles whose normals differ by less than
/// `angle_tol` radians (3D meshes only). Facets are sorted by decreasing area.
std::vector<Facet> merge_coplanar(const HullMesh& mesh, double angle_tol = 1e-6);

/// Every undirected edge is shared by exactly two triangles with opposite
/// orientations.
bool is_closed_orientable(const HullMesh& mesh);

/// Total surface area (3D) or perimeter (2D).
double boundary_measure(const HullMesh& mesh);

}  // namespace jnr
