#pragma once

// File formats: operator files (JSON), classification reports (JSON), CSV
// tables and ASCII PLY meshes.

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "jnr/bands.hpp"
#include "jnr/flat.hpp"
#include "jnr/herm.hpp"
#include "jnr/hull.hpp"
#include "jnr/photonic.hpp"
#include "jnr/support.hpp"

namespace jnr::io {

// ---------------------------------------------------------------- operators
//
// {"format": "jnr-operators", "version": 1, "dim": d,
//  "labels": ["F1", ...],                      (optional)
//  "operators": [{"re": [[...]], "im": [[...]]}, ...]}
//
// "im" may be omitted for real operators.

struct OperatorFile {
  int dim = 0;
  OperatorList operators;
  std::string digest;  ///< FNV-1a 64 of the source bytes, 16 hex digits
};

/// Throws InputError; syntax errors carry "line L, column C".
OperatorFile parse_operator_file(const std::string& text, const std::string& source = "<input>");
OperatorFile read_operator_file(const std::filesystem::path& path);
std::string operator_file_json(const OperatorList& ops);

std::string fnv1a64_hex(const std::string& bytes);
std::string read_text(const std::filesystem::path& path);

/// 17 significant digits (%.17g); used for every float in CSV, JSON and PLY.
std::string format_double(double x);

// ---------------------------------------------------------------- reports

struct ReportDirection {
  double theta = 0.0;
  double phi = 0.0;
  Eigen::Vector3d h = Eigen::Vector3d::Zero();
  double gap = 0.0;
  int dim_span = 1;
  std::string kind;        ///< point | segment | ellipse
  bool on_curve = false;

  bool operator==(const ReportDirection&) const = default;
};

struct ReportStability {
  double tau = 0.0;
  std::string class_name;
  int s = 0;
  int e = 0;
  bool s_infinite = false;
  int directions = 0;

  bool operator==(const ReportStability&) const = default;
};

struct ReportPlanar {
  std::array<int, 2> pair{0, 1};  ///< 0-based operator indices
  std::string label;
  int segments = 0;
  int corners = 0;

  bool operator==(const ReportPlanar&) const = default;
};

struct ReportV1 {
  std::string version;
  std::string input_digest;
  std::optional<std::string> timestamp;
  std::string class_name;
  int s = 0;
  int e = 0;
  bool s_infinite = false;
  bool reducible = false;
  std::vector<ReportDirection> degenerate_directions;
  std::optional<double> band_min_gap;
  std::array<int, 2> band_grid{0, 0};
  double tau_deg = 0.0;
  double scale = 1.0;
  double rank_tolerance = 0.0;
  double merge_radius = 0.0;
  std::array<int, 2> grid{0, 0};
  std::vector<std::string> warnings;
  std::optional<ReportPlanar> planar;
  std::vector<ReportStability> stability;

  bool operator==(const ReportV1&) const = default;
};

ReportV1 make_report(const ClassifyResult& result, const FlatOptions& opt, double scale);
std::string report_json(const ReportV1& r);
ReportV1 parse_report(const std::string& text);

/// {"format": "jnr-closings", "min_gap", "closings": [{theta, phi, h, kind,
/// dimS, gap, on_curve}], "warnings": [...]}
std::string closings_json(const GapReport& g);

// ---------------------------------------------------------------- CSV

/// n = 3: theta,phi,x,y,z,energy,gap. n = 2: theta,phi,x,y,energy,gap
/// (planar directions, theta = pi/2 and phi the planar angle).
void write_points_csv(std::ostream& os, const Sweep& sweep);

/// theta,phi,E0,...,E{d-1},gap01
void write_bands_csv(std::ostream& os, const BandGrid& grid);

/// Header theta,phi,x,y with the chosen axes as x,y.
void write_projection_csv(std::ostream& os, const Sweep& sweep, std::pair<int, int> axes);

/// level,alpha,x,y
void write_levels_csv(std::ostream& os, const std::vector<PointCloud>& levels, std::span<const Direction> grid);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Throws InputError if the column is missing.
  std::size_t column(const std::string& name) const;
  bool has(const std::string& name) const;
};

/// Numeric CSV with a header line. Errors name the line.
CsvTable parse_csv(const std::string& text, const std::string& source = "<csv>");
CsvTable read_csv(const std::filesystem::path& path);

/// Columns x,y[,z] of a points table as a dim x N matrix.
Eigen::MatrixXd points_from_table(const CsvTable& t);

/// theta_a,theta_b,phi1,phi2 rows.
std::vector<PrepAngles> prep_from_table(const CsvTable& t);

// ---------------------------------------------------------------- PLY

/// ASCII PLY. 3D: vertices and triangles. 2D: vertices with z = 0 and one
/// polygon face. Degenerate hulls: the boundary vertices, plus one polygon
/// face when they span a plane.
void write_ply(std::ostream& os, const HullResult& hull, const Eigen::MatrixXd& points);

struct PlyMesh {
  Eigen::MatrixXd vertices;  ///< 3 x V
  std::vector<std::vector<int>> faces;
};

PlyMesh parse_ply(const std::string& text);

}  // namespace jnr::io
