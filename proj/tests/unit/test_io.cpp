#include <doctest.h>

#include <cstring>
#include <random>
#include <sstream>

#include "jnr/fixtures.hpp"
#include "jnr/io.hpp"

using namespace jnr;

TEST_CASE("format_double round-trips doubles exactly") {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<std::uint64_t> bits;
  int checked = 0;
  while (checked < 10000) {
    const std::uint64_t b = bits(rng);
    double x;
    std::memcpy(&x, &b, sizeof x);
    if (!std::isfinite(x)) continue;
    CHECK(std::strtod(io::format_double(x).c_str(), nullptr) == x);
    ++checked;
  }
  CHECK(io::format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("operator files round-trip") {
  const auto& ops = class_fixture(2).operators;
  const std::string text = io::operator_file_json(ops);
  const io::OperatorFile f = io::parse_operator_file(text);
  CHECK(f.dim == 3);
  REQUIRE(f.operators.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(f.operators[k].matrix() == ops[k].matrix());
    CHECK(f.operators[k].name() == ops[k].name());
  }
  CHECK(f.digest == io::fnv1a64_hex(text));
  CHECK(f.digest.size() == 16);
  CHECK(io::operator_file_json(f.operators) == text);
}

TEST_CASE("FNV-1a reference values") {
  CHECK(io::fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(io::fnv1a64_hex("a") == "af63dc4c8601ec8c");
  CHECK(io::fnv1a64_hex("foobar") == "85944171f73967e8");
}

TEST_CASE("operator file errors") {
  CHECK_THROWS_WITH_AS(io::parse_operator_file("{\"dim\": 2,\n  \"operators\": [,]}", "f.json"),
                       "f.json: JSON syntax error at line 2, column 17", InputError);
  CHECK_THROWS_WITH_AS(io::parse_operator_file(R"({"dim": 2, "labels": ["A"], "operators": [{"re": [[0, 1], [1, 0]], "im": [[0, 1], [1, 0]]}]})", "f.json"),
                       doctest::Contains("f.json: operator A is not Hermitian at entry (0,1)"), InputError);
  CHECK_THROWS_AS(io::parse_operator_file(R"({"operators": []})"), InputError);
  CHECK_THROWS_AS(io::parse_operator_file(R"({"dim": 2, "operators": [{"re": [[0, 1], [1]]}]})"), InputError);
  CHECK_THROWS_AS(io::parse_operator_file(R"({"dim": 2, "operators": [{"re": [[0, "x"], [0, 0]]}]})"), InputError);
  CHECK_THROWS_AS(io::parse_operator_file(R"({"format": "other", "dim": 2, "operators": [{"re": [[1, 0], [0, 1]]}]})"),
                  InputError);
  const auto f = io::parse_operator_file(R"({"dim": 2, "operators": [{"re": [[1, 2], [2, 1]]}]})");
  CHECK(f.operators[0].name() == "F1");
}

TEST_CASE("reports round-trip losslessly") {
  const auto& ops = class_fixture(8).operators;
  const FlatOptions opt;
  io::ReportV1 r = io::make_report(classify(ops, opt), opt, tolerance_scale(ops));
  r.input_digest = "0123456789abcdef";
  r.timestamp = "2026-01-02T03:04:05Z";
  r.band_min_gap = 1.0 / 3.0;
  r.band_grid = {181, 360};
  r.warnings.push_back("a \"quoted\" warning");
  r.stability.push_back({1e-7, "s1e2", 1, 2, false, 3});
  CHECK(r.class_name == "s1e2");
  CHECK(r.degenerate_directions.size() == 3);
  const io::ReportV1 back = io::parse_report(io::report_json(r));
  CHECK(back == r);
  CHECK(io::report_json(back) == io::report_json(r));

  const auto red = io::make_report(classify(fixture("reducible").operators), opt, 2.0);
  CHECK(red.reducible);
  CHECK(red.class_name == "s_inf_e1");
  REQUIRE(red.planar);
  CHECK(red.planar->label == "triangle");
  CHECK(io::parse_report(io::report_json(red)) == red);

  CHECK_THROWS_AS(io::parse_report("{\"format\": \"jnr-report\", \"schema_version\": 1}"), InputError);
}

TEST_CASE("CSV tables") {
  const io::CsvTable t = io::parse_csv("x, y,z\n1,2,3\n\n4,5,6.5\n");
  CHECK(t.header == std::vector<std::string>{"x", "y", "z"});
  CHECK(t.rows.size() == 2);
  const Eigen::MatrixXd p = io::points_from_table(t);
  CHECK(p.rows() == 3);
  CHECK(p(2, 1) == 6.5);
  CHECK_THROWS_WITH_AS(io::parse_csv("x,y\n1,2\n3\n", "p.csv"), "p.csv: line 3: expected 2 fields, found 1", InputError);
  CHECK_THROWS_WITH_AS(io::parse_csv("x,y\n1,abc\n", "p.csv"), "p.csv: line 2: not a number: \"abc\"", InputError);
  CHECK_THROWS_AS(t.column("w"), InputError);

  const auto prep = io::prep_from_table(io::parse_csv("phi2,theta_a,theta_b,phi1\n4,1,2,3\n"));
  REQUIRE(prep.size() == 1);
  CHECK(prep[0].theta_a == 1);
  CHECK(prep[0].phi2 == 4);
}

TEST_CASE("points CSV rows satisfy the energy identity after parsing") {
  const auto& ops = class_fixture(3).operators;
  const Sweep s = sweep(ops, random_directions(50, 4));
  std::ostringstream os;
  io::write_points_csv(os, s);
  const io::CsvTable t = io::parse_csv(os.str());
  REQUIRE(t.rows.size() == 50);
  for (const auto& row : t.rows) {
    const Direction d = Direction::from_angles(row[0], row[1]);
    CHECK(std::abs(d.h.dot(Eigen::Vector3d(row[2], row[3], row[4])) - row[5]) < 1e-10);
  }
}

TEST_CASE("PLY meshes round-trip with outward faces") {
  Eigen::MatrixXd cube(3, 9);
  cube << 0, 1, 0, 0, 1, 1, 0, 1, 0.5,
          0, 0, 1, 0, 1, 0, 1, 1, 0.5,
          0, 0, 0, 1, 0, 1, 1, 1, 0.5;
  std::ostringstream os;
  io::write_ply(os, convex_hull(cube), cube);
  const io::PlyMesh m = io::parse_ply(os.str());
  CHECK(m.vertices.cols() == 8);
  REQUIRE(m.faces.size() == 12);
  const Eigen::Vector3d centre = m.vertices.rowwise().mean();
  for (const auto& f : m.faces) {
    const Eigen::Vector3d a = m.vertices.col(f[0]), b = m.vertices.col(f[1]), c = m.vertices.col(f[2]);
    CHECK((b - a).cross(c - a).dot(a - centre) > 0.0);
  }

  Eigen::MatrixXd square(3, 4);
  square << 0, 1, 1, 0,
            0, 0, 1, 1,
            2, 2, 2, 2;
  std::ostringstream flat;
  io::write_ply(flat, convex_hull(square), square);
  const io::PlyMesh fm = io::parse_ply(flat.str());
  CHECK(fm.vertices.cols() == 4);
  REQUIRE(fm.faces.size() == 1);
  CHECK(fm.faces[0].size() == 4);

  CHECK_THROWS_AS(io::parse_ply("ply\nformat binary_little_endian 1.0\nend_header\n"), InputError);
  CHECK_THROWS_AS(io::parse_ply("ply\nformat ascii 1.0\nelement vertex 2\nend_header\n0 0 0\n"), InputError);
}
