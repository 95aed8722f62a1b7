#include "jnr/io.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace jnr::io {

using nlohmann::json;

namespace {

std::string position_of(const std::string& text, std::size_t byte) {
  // nlohmann reports the 1-based index of the offending byte.
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  std::size_t line = 1, column = 1;
  for (std::size_t k = 0; k < end; ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

Eigen::MatrixXd real_matrix(const json& j, int d, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != d) {
    throw InputError(what + ": expected " + std::to_string(d) + " rows");
  }
  Eigen::MatrixXd m(d, d);
  for (int r = 0; r < d; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      throw InputError(what + ": row " + std::to_string(r) + " must have " + std::to_string(d) + " entries");
    }
    for (int c = 0; c < d; ++c) {
      if (!row[c].is_number()) {
        throw InputError(what + ": entry (" + std::to_string(r) + "," + std::to_string(c) + ") is not a number");
      }
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

// nlohmann prints the shortest round-trip form; every float is written here
// with format_double instead so that all artifacts share one number format.
void emit(const json& j, std::string& out, int level) {
  const std::string pad(2 * static_cast<std::size_t>(level + 1), ' ');
  const std::string close(2 * static_cast<std::size_t>(level), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump() + ": ";
        emit(it.value(), out, level + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::none_of(j.begin(), j.end(), [](const json& v) { return v.is_structured(); });
      if (flat) {
        out += "[";
        for (std::size_t k = 0; k < j.size(); ++k) {
          if (k) out += ", ";
          emit(j[k], out, level + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += ",\n";
        out += pad;
        emit(j[k], out, level + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

std::string dump(const json& j) {
  std::string out;
  emit(j, out, 0);
  out += "\n";
  return out;
}

template <typename T>
T field(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("report: missing or malformed field \"") + key + "\"");
  }
}

std::array<int, 2> int_pair(const json& j, const char* key) {
  const auto v = field<std::vector<int>>(j, key);
  if (v.size() != 2) throw InputError(std::string("report: field \"") + key + "\" must have two entries");
  return {v[0], v[1]};
}

ReportDirection report_direction(const FlatPortion& f, bool on_curve) {
  ReportDirection r;
  r.theta = f.at.direction.theta;
  r.phi = f.at.direction.phi;
  r.h = f.at.direction.h;
  r.gap = f.at.refined_gap;
  r.dim_span = f.dim_span;
  r.kind = to_string(f.kind);
  r.on_curve = on_curve;
  return r;
}

std::string describe(const RefinementWarning& w) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "refinement from (theta=%.6f, phi=%.6f) stopped at (theta=%.6f, phi=%.6f), gap %.3e after %d iterations",
                w.start.theta, w.start.phi, w.reached.theta, w.reached.phi, w.gap, w.iterations);
  std::string s = buf;
  if (!w.reason.empty()) s += ": " + w.reason;
  return s;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

// ---------------------------------------------------------------- operators

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

OperatorFile parse_operator_file(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": JSON syntax error at " + position_of(text, e.byte));
  }
  if (!j.is_object()) throw InputError(source + ": top level must be an object");
  if (j.contains("format") && j["format"] != "jnr-operators") {
    throw InputError(source + ": format must be \"jnr-operators\"");
  }
  if (j.contains("version") && j["version"] != 1) throw InputError(source + ": unsupported version");
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<int>() < 2) {
    throw InputError(source + ": \"dim\" must be an integer >= 2");
  }
  const int d = j["dim"].get<int>();
  if (!j.contains("operators") || !j["operators"].is_array() || j["operators"].empty()) {
    throw InputError(source + ": \"operators\" must be a non-empty array");
  }
  const json& list = j["operators"];
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array() || j["labels"].size() != list.size()) {
      throw InputError(source + ": \"labels\" must be an array with one entry per operator");
    }
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw InputError(source + ": labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }

  OperatorFile out;
  out.dim = d;
  out.digest = fnv1a64_hex(text);
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string name = labels.empty() ? "F" + std::to_string(k + 1) : labels[k];
    const std::string what = source + ": operator " + name;
    const json& op = list[k];
    if (!op.is_object() || !op.contains("re")) throw InputError(what + ": needs a \"re\" matrix");
    const Eigen::MatrixXd re = real_matrix(op["re"], d, what + " re");
    const Eigen::MatrixXd im = op.contains("im") ? real_matrix(op["im"], d, what + " im") : Eigen::MatrixXd::Zero(d, d);
    for (int r = 0; r < d; ++r) {
      for (int c = r; c < d; ++c) {
        const double dre = std::abs(re(r, c) - re(c, r));
        const double dim = std::abs(im(r, c) + im(c, r));
        if (dre > HermitianOperator::kTolerance || dim > HermitianOperator::kTolerance) {
          throw InputError(what + " is not Hermitian at entry (" + std::to_string(r) + "," + std::to_string(c) +
                           "): re asymmetry " + format_double(dre) + ", im symmetry " + format_double(dim));
        }
      }
    }
    Matrix m(d, d);
    m.real() = re;
    m.imag() = im;
    out.operators.emplace_back(m, name);
  }
  return out;
}

OperatorFile read_operator_file(const std::filesystem::path& path) {
  return parse_operator_file(read_text(path), path.string());
}

std::string operator_file_json(const OperatorList& ops) {
  if (ops.empty()) throw InputError("empty operator list");
  const Eigen::Index d = common_dimension(ops);
  json j;
  j["format"] = "jnr-operators";
  j["version"] = 1;
  j["dim"] = d;
  json labels = json::array();
  json list = json::array();
  for (std::size_t k = 0; k < ops.size(); ++k) {
    labels.push_back(ops[k].name().empty() ? "F" + std::to_string(k + 1) : ops[k].name());
    list.push_back({{"re", matrix_json(ops[k].matrix().real())}, {"im", matrix_json(ops[k].matrix().imag())}});
  }
  j["labels"] = labels;
  j["operators"] = list;
  return dump(j);
}

// ---------------------------------------------------------------- reports

ReportV1 make_report(const ClassifyResult& result, const FlatOptions& opt, double scale) {
  ReportV1 r;
  r.version = JNR_VERSION;
  r.scale = scale;
  r.tau_deg = opt.tau_factor * scale;
  r.rank_tolerance = opt.rank_tolerance;
  r.merge_radius = opt.merge_radius;
  r.grid = {opt.theta_res, opt.phi_res};
  if (const auto* c = std::get_if<Classification>(&result)) {
    r.class_name = c->label.class_name();
    r.s = c->label.s;
    r.e = c->label.e;
    r.s_infinite = c->label.s_infinite;
    r.reducible = c->label.s_infinite;
    r.tau_deg = c->tau;
    r.scale = c->scale;
    for (const auto& f : c->flats) r.degenerate_directions.push_back(report_direction(f, false));
    for (const auto& f : c->points) r.degenerate_directions.push_back(report_direction(f, false));
    if (c->curve) {
      for (const auto& f : c->curve->members) r.degenerate_directions.push_back(report_direction(f, true));
    }
    std::sort(r.degenerate_directions.begin(), r.degenerate_directions.end(),
              [](const ReportDirection& a, const ReportDirection& b) {
                return a.theta != b.theta ? a.theta < b.theta : a.phi < b.phi;
              });
    for (const auto& w : c->warnings) r.warnings.push_back(describe(w));
  } else {
    const auto& red = std::get<ReducibleInput>(result);
    r.reducible = true;
    if (red.rotational_label) {
      r.class_name = red.rotational_label->class_name();
      r.s = red.rotational_label->s;
      r.e = red.rotational_label->e;
      r.s_infinite = red.rotational_label->s_infinite;
    } else {
      r.class_name = "reducible";
    }
    r.planar = ReportPlanar{red.pair, to_string(red.planar.label), red.planar.segments, red.planar.corners};
  }
  return r;
}

std::string report_json(const ReportV1& r) {
  json j;
  j["format"] = "jnr-report";
  j["schema_version"] = 1;
  j["version"] = r.version;
  j["input_digest"] = r.input_digest;
  if (r.timestamp) j["timestamp"] = *r.timestamp;
  j["class_name"] = r.class_name;
  j["s"] = r.s;
  j["e"] = r.e;
  j["s_infinite"] = r.s_infinite;
  j["reducible"] = r.reducible;
  json dirs = json::array();
  for (const auto& d : r.degenerate_directions) {
    dirs.push_back({{"theta", d.theta},
                    {"phi", d.phi},
                    {"h", {d.h.x(), d.h.y(), d.h.z()}},
                    {"gap", d.gap},
                    {"dimS", d.dim_span},
                    {"kind", d.kind},
                    {"on_curve", d.on_curve}});
  }
  j["degenerate_directions"] = dirs;
  j["band_min_gap"] = r.band_min_gap ? json(*r.band_min_gap) : json(nullptr);
  j["band_grid"] = r.band_grid;
  j["tolerances"] = {{"tau_deg", r.tau_deg},
                     {"scale", r.scale},
                     {"rank_tolerance", r.rank_tolerance},
                     {"merge_radius", r.merge_radius},
                     {"grid", r.grid}};
  j["warnings"] = r.warnings;
  if (r.planar) {
    j["planar"] = {{"pair", r.planar->pair},
                   {"label", r.planar->label},
                   {"segments", r.planar->segments},
                   {"corners", r.planar->corners}};
  }
  json rows = json::array();
  for (const auto& s : r.stability) {
    rows.push_back({{"tau_deg", s.tau},
                    {"class_name", s.class_name},
                    {"s", s.s},
                    {"e", s.e},
                    {"s_infinite", s.s_infinite},
                    {"degenerate_directions", s.directions}});
  }
  j["stability"] = rows;
  return dump(j);
}

ReportV1 parse_report(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("report: JSON syntax error at " + position_of(text, e.byte));
  }
  if (!j.is_object() || j.value("format", "") != "jnr-report") throw InputError("report: not a jnr-report document");
  if (j.value("schema_version", 0) != 1) throw InputError("report: unsupported schema_version");
  ReportV1 r;
  r.version = field<std::string>(j, "version");
  r.input_digest = field<std::string>(j, "input_digest");
  if (j.contains("timestamp")) r.timestamp = field<std::string>(j, "timestamp");
  r.class_name = field<std::string>(j, "class_name");
  r.s = field<int>(j, "s");
  r.e = field<int>(j, "e");
  r.s_infinite = field<bool>(j, "s_infinite");
  r.reducible = field<bool>(j, "reducible");
  for (const auto& d : field<json>(j, "degenerate_directions")) {
    ReportDirection x;
    x.theta = field<double>(d, "theta");
    x.phi = field<double>(d, "phi");
    const auto h = field<std::vector<double>>(d, "h");
    if (h.size() != 3) throw InputError("report: direction h must have three entries");
    x.h = Eigen::Vector3d(h[0], h[1], h[2]);
    x.gap = field<double>(d, "gap");
    x.dim_span = field<int>(d, "dimS");
    x.kind = field<std::string>(d, "kind");
    x.on_curve = field<bool>(d, "on_curve");
    r.degenerate_directions.push_back(x);
  }
  if (!j.contains("band_min_gap")) throw InputError("report: missing field \"band_min_gap\"");
  if (!j["band_min_gap"].is_null()) r.band_min_gap = field<double>(j, "band_min_gap");
  r.band_grid = int_pair(j, "band_grid");
  const json tol = field<json>(j, "tolerances");
  r.tau_deg = field<double>(tol, "tau_deg");
  r.scale = field<double>(tol, "scale");
  r.rank_tolerance = field<double>(tol, "rank_tolerance");
  r.merge_radius = field<double>(tol, "merge_radius");
  r.grid = int_pair(tol, "grid");
  r.warnings = field<std::vector<std::string>>(j, "warnings");
  if (j.contains("planar")) {
    const json& p = j["planar"];
    r.planar = ReportPlanar{int_pair(p, "pair"), field<std::string>(p, "label"), field<int>(p, "segments"),
                            field<int>(p, "corners")};
  }
  for (const auto& s : field<json>(j, "stability")) {
    r.stability.push_back({field<double>(s, "tau_deg"), field<std::string>(s, "class_name"), field<int>(s, "s"),
                           field<int>(s, "e"), field<bool>(s, "s_infinite"), field<int>(s, "degenerate_directions")});
  }
  return r;
}

std::string closings_json(const GapReport& g) {
  json list = json::array();
  for (const auto& c : g.closings) {
    list.push_back({{"theta", c.direction.theta},
                    {"phi", c.direction.phi},
                    {"h", {c.direction.h.x(), c.direction.h.y(), c.direction.h.z()}},
                    {"kind", to_string(c.kind)},
                    {"dimS", c.dim_span},
                    {"gap", c.refined_gap},
                    {"on_curve", c.on_curve}});
  }
  json warnings = json::array();
  for (const auto& w : g.warnings) warnings.push_back(describe(w));
  return dump({{"format", "jnr-closings"}, {"min_gap", g.min_gap}, {"closings", list}, {"warnings", warnings}});
}

// ---------------------------------------------------------------- CSV

void write_points_csv(std::ostream& os, const Sweep& sweep) {
  const int n = sweep.cloud.n();
  if (n != 2 && n != 3) throw InputError("points CSV needs two or three operators");
  os << (n == 3 ? "theta,phi,x,y,z,energy,gap\n" : "theta,phi,x,y,energy,gap\n");
  for (const auto& s : sweep.samples) {
    os << format_double(s.direction.theta) << ',' << format_double(s.direction.phi);
    for (Eigen::Index i = 0; i < s.point.size(); ++i) os << ',' << format_double(s.point(i));
    os << ',' << format_double(s.energy) << ',' << format_double(s.gap) << '\n';
  }
}

void write_bands_csv(std::ostream& os, const BandGrid& grid) {
  const auto d = grid.levels.size();
  os << "theta,phi";
  for (std::size_t k = 0; k < d; ++k) os << ",E" << k;
  os << ",gap01\n";
  for (int i = 0; i < grid.theta_res; ++i) {
    for (int j = 0; j < grid.phi_res; ++j) {
      const Direction dir = grid.direction(i, j);
      os << format_double(dir.theta) << ',' << format_double(dir.phi);
      for (std::size_t k = 0; k < d; ++k) os << ',' << format_double(grid.levels[k](i, j));
      os << ',' << format_double(grid.levels[1](i, j) - grid.levels[0](i, j)) << '\n';
    }
  }
}

void write_projection_csv(std::ostream& os, const Sweep& sweep, std::pair<int, int> axes) {
  const int n = sweep.cloud.n();
  if (axes.first < 0 || axes.second < 0 || axes.first >= n || axes.second >= n || axes.first == axes.second) {
    throw InputError("projection axes out of range");
  }
  os << "theta,phi,x,y\n";
  for (const auto& s : sweep.samples) {
    os << format_double(s.direction.theta) << ',' << format_double(s.direction.phi) << ','
       << format_double(s.point(axes.first)) << ',' << format_double(s.point(axes.second)) << '\n';
  }
}

void write_levels_csv(std::ostream& os, const std::vector<PointCloud>& levels, std::span<const Direction> grid) {
  os << "level,alpha,x,y\n";
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const PointCloud& c = levels[k];
    if (c.size() != static_cast<Eigen::Index>(grid.size()) || c.n() != 2) {
      throw InputError("level cloud does not match the direction grid");
    }
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      os << k << ',' << format_double(grid[static_cast<std::size_t>(i)].phi) << ',' << format_double(c.points(0, i))
         << ',' << format_double(c.points(1, i)) << '\n';
    }
  }
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw InputError("CSV: missing column \"" + name + "\"");
  return static_cast<std::size_t>(it - header.begin());
}

bool CsvTable::has(const std::string& name) const {
  return std::find(header.begin(), header.end(), name) != header.end();
}

CsvTable parse_csv(const std::string& text, const std::string& source) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_line(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw InputError(source + ": line " + std::to_string(number) + ": expected " + std::to_string(t.header.size()) +
                       " fields, found " + std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || end != cell.c_str() + cell.size()) {
        throw InputError(source + ": line " + std::to_string(number) + ": not a number: \"" + cell + "\"");
      }
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw InputError(source + ": empty CSV");
  return t;
}

CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_text(path), path.string()); }

Eigen::MatrixXd points_from_table(const CsvTable& t) {
  std::vector<std::size_t> cols{t.column("x"), t.column("y")};
  if (t.has("z")) cols.push_back(t.column("z"));
  Eigen::MatrixXd p(static_cast<Eigen::Index>(cols.size()), static_cast<Eigen::Index>(t.rows.size()));
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(r)) = t.rows[r][cols[i]];
    }
  }
  return p;
}

std::vector<PrepAngles> prep_from_table(const CsvTable& t) {
  const auto a = t.column("theta_a"), b = t.column("theta_b"), p1 = t.column("phi1"), p2 = t.column("phi2");
  std::vector<PrepAngles> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) out.push_back({row[a], row[b], row[p1], row[p2]});
  return out;
}

// ---------------------------------------------------------------- PLY

void write_ply(std::ostream& os, const HullResult& hull, const Eigen::MatrixXd& points) {
  Eigen::MatrixXd v;
  std::vector<std::vector<Eigen::Index>> faces;
  if (const auto* mesh = std::get_if<HullMesh>(&hull)) {
    v = Eigen::MatrixXd::Zero(3, mesh->vertex_count());
    v.topRows(mesh->dim) = mesh->vertices;
    if (mesh->dim == 3) {
      for (const auto& t : mesh->triangles) faces.push_back({t[0], t[1], t[2]});
    } else {
      faces.emplace_back(mesh->polygon.begin(), mesh->polygon.end());
    }
  } else {
    const auto& deg = std::get<DegenerateHull>(hull);
    const auto m = static_cast<Eigen::Index>(deg.boundary.size());
    v = Eigen::MatrixXd::Zero(3, m);
    for (Eigen::Index k = 0; k < m; ++k) v.col(k).head(points.rows()) = points.col(deg.boundary[static_cast<std::size_t>(k)]);
    if (deg.affine_rank == 2) {
      faces.emplace_back();
      for (Eigen::Index k = 0; k < m; ++k) faces.back().push_back(k);
    }
  }
  os << "ply\nformat ascii 1.0\ncomment jnr convex hull\n";
  os << "element vertex " << v.cols() << "\nproperty double x\nproperty double y\nproperty double z\n";
  os << "element face " << faces.size() << "\nproperty list uchar int vertex_indices\nend_header\n";
  for (Eigen::Index k = 0; k < v.cols(); ++k) {
    os << format_double(v(0, k)) << ' ' << format_double(v(1, k)) << ' ' << format_double(v(2, k)) << '\n';
  }
  for (const auto& f : faces) {
    if (f.size() > 255) throw InputError("PLY face with more than 255 vertices");
    os << f.size();
    for (auto i : f) os << ' ' << i;
    os << '\n';
  }
}

PlyMesh parse_ply(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "ply") throw InputError("PLY: missing magic line");
  long vertices = -1, faces = 0;
  bool ascii = false;
  while (std::getline(in, line) && line != "end_header") {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "format") {
      std::string fmt;
      ls >> fmt;
      ascii = fmt == "ascii";
    } else if (key == "element") {
      std::string what;
      long count = 0;
      ls >> what >> count;
      if (what == "vertex") vertices = count;
      if (what == "face") faces = count;
    }
  }
  if (line != "end_header") throw InputError("PLY: missing end_header");
  if (!ascii) throw InputError("PLY: only ascii format is supported");
  if (vertices < 0) throw InputError("PLY: no vertex element");
  PlyMesh mesh;
  mesh.vertices.resize(3, vertices);
  for (long k = 0; k < vertices; ++k) {
    if (!std::getline(in, line)) throw InputError("PLY: truncated vertex list");
    std::istringstream ls(line);
    if (!(ls >> mesh.vertices(0, k) >> mesh.vertices(1, k) >> mesh.vertices(2, k))) {
      throw InputError("PLY: malformed vertex " + std::to_string(k));
    }
  }
  for (long k = 0; k < faces; ++k) {
    if (!std::getline(in, line)) throw InputError("PLY: truncated face list");
    std::istringstream ls(line);
    int count = 0;
    ls >> count;
    std::vector<int> f(static_cast<std::size_t>(std::max(count, 0)));
    for (auto& i : f) ls >> i;
    if (!ls || count < 1) throw InputError("PLY: malformed face " + std::to_string(k));
    for (int i : f) {
      if (i < 0 || i >= vertices) throw InputError("PLY: face " + std::to_string(k) + " has an out-of-range index");
    }
    mesh.faces.push_back(std::move(f));
  }
  return mesh;
}

}  // namespace jnr::io
