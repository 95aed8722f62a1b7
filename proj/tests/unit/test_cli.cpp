#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "jnr/commands.hpp"
#include "jnr/io.hpp"

using namespace jnr;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result jnr_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path dir = fs::temp_directory_path() / ("jnr_cli_test_" + std::to_string(::getpid()));
  TempDir() { fs::create_directories(dir); }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
};

fs::path workdir() {
  static const TempDir temp;
  return temp.dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

std::string fixture_file(const std::string& name) {
  const std::string p = path(name + ".json");
  if (!fs::exists(p)) REQUIRE(jnr_run({"fixtures", "--dump", name, "--out", p}).code == 0);
  return p;
}

void write(const std::string& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("sample: 300 seeded directions satisfy the energy identity") {
  const Result r = jnr_run({"sample", "--input", fixture_file("class8"), "--directions", "300", "--seed", "7"});
  REQUIRE(r.code == 0);
  const io::CsvTable t = io::parse_csv(r.out);
  CHECK(t.header == std::vector<std::string>{"theta", "phi", "x", "y", "z", "energy", "gap"});
  REQUIRE(t.rows.size() == 300);
  for (const auto& row : t.rows) {
    const Direction d = Direction::from_angles(row[0], row[1]);
    CHECK(std::abs(d.h.dot(Eigen::Vector3d(row[2], row[3], row[4])) - row[5]) < 1e-10);
  }
  CHECK(jnr_run({"sample", "--input", fixture_file("class8"), "--directions", "300", "--seed", "7"}).out == r.out);
}

TEST_CASE("sample: grid size and dimension checks") {
  const Result g = jnr_run({"sample", "--input", fixture_file("class4"), "--grid", "64x128"});
  REQUIRE(g.code == 0);
  CHECK(io::parse_csv(g.out).rows.size() == 8192);

  const Result d2 = jnr_run({"sample", "--input", fixture_file("pauli_triple")});
  CHECK(d2.code == 2);
  CHECK(d2.err.find("requires d=3") != std::string::npos);
  CHECK(d2.err.front() == '{');
  CHECK(jnr_run({"sample", "--input", fixture_file("pauli_triple"), "--allow-any-dim"}).code == 0);

  write(path("syntax.json"), "{\"dim\": 3,\n\"operators\": [}");
  const Result s = jnr_run({"sample", "--input", path("syntax.json")});
  CHECK(s.code == 2);
  CHECK(s.err.find("line 2, column 15") != std::string::npos);
  CHECK(jnr_run({"sample", "--input", path("missing.json")}).code == 2);
  CHECK(jnr_run({"sample", "--fixture", "class1", "--grid", "64by128"}).code == 2);
}

TEST_CASE("classify: every class fixture gets its class name") {
  const char* names[] = {"s0e0", "s0e1", "s0e2", "s0e3", "s0e4", "s1e0", "s1e1", "s1e2"};
  for (int k = 1; k <= 8; ++k) {
    const std::string in = fixture_file("class" + std::to_string(k));
    const Result r = jnr_run({"classify", "--input", in, "--no-timestamp", "--band-res", "31x60"});
    REQUIRE(r.code == 0);
    const io::ReportV1 rep = io::parse_report(r.out);
    CHECK(rep.class_name == names[k - 1]);
    CHECK_FALSE(rep.timestamp);
    CHECK(rep.input_digest == io::fnv1a64_hex(io::read_text(in)));
    CHECK(rep.version == "0.1.0");
  }
}

TEST_CASE("classify: set B lists one point-kind degeneracy") {
  const Result r = jnr_run({"classify", "--input", fixture_file("setB"), "--no-bands"});
  REQUIRE(r.code == 0);
  const io::ReportV1 rep = io::parse_report(r.out);
  CHECK(rep.class_name == "s0e0");
  REQUIRE(rep.degenerate_directions.size() == 1);
  CHECK(rep.degenerate_directions[0].kind == "point");
  CHECK((rep.degenerate_directions[0].h - Eigen::Vector3d::UnitX()).norm() < 1e-6);
  CHECK(rep.timestamp);
  CHECK_FALSE(rep.band_min_gap);
}

TEST_CASE("classify: tolerance sweep, reducible input, broken Hermiticity") {
  const Result t = jnr_run({"classify", "--fixture", "class6", "--tol-sweep", "--no-bands", "--out", path("r6.json")});
  REQUIRE(t.code == 0);
  CHECK(t.out.rfind("tau_deg,class_name,s,e,degenerate_directions\n", 0) == 0);
  const io::ReportV1 rep = io::parse_report(io::read_text(path("r6.json")));
  CHECK(rep.stability.size() == 7);
  for (const auto& row : rep.stability) CHECK(row.class_name == "s1e0");

  const Result red = jnr_run({"classify", "--input", fixture_file("reducible"), "--no-bands"});
  CHECK(red.code == 0);
  CHECK(io::parse_report(red.out).reducible);

  write(path("broken.json"),
        R"({"dim": 3, "labels": ["A", "B", "C"], "operators": [)"
        R"({"re": [[1,0,0],[0,0,0],[0,0,0]]},)"
        R"({"re": [[0,0,0],[0,0,1],[0,1,0]], "im": [[0,0,0],[0,0,1],[0,1,0]]},)"
        R"({"re": [[0,0,0],[0,1,0],[0,0,0]]}]})");
  const Result bad = jnr_run({"classify", "--input", path("broken.json")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("operator B is not Hermitian at entry (1,2)") != std::string::npos);
}

TEST_CASE("hull: cube corners give an 8-vertex PLY") {
  write(path("cube.csv"), "x,y,z\n0,0,0\n1,0,0\n0,1,0\n0,0,1\n1,1,0\n1,0,1\n0,1,1\n1,1,1\n0.5,0.5,0.5\n");
  const Result r = jnr_run({"hull", "--points", path("cube.csv")});
  REQUIRE(r.code == 0);
  const io::PlyMesh m = io::parse_ply(r.out);
  CHECK(m.vertices.cols() == 8);
  CHECK(m.faces.size() == 12);
  CHECK(jnr_run({"hull"}).code == 2);
}

TEST_CASE("project: chosen axes of a points file") {
  REQUIRE(jnr_run({"sample", "--fixture", "class2", "--directions", "20", "--out", path("p2.csv")}).code == 0);
  const Result r = jnr_run({"project", "--points", path("p2.csv"), "--axes", "13"});
  REQUIRE(r.code == 0);
  const io::CsvTable src = io::read_csv(path("p2.csv"));
  const io::CsvTable t = io::parse_csv(r.out);
  REQUIRE(t.rows.size() == 20);
  CHECK(t.rows[5][2] == src.rows[5][2]);
  CHECK(t.rows[5][3] == src.rows[5][4]);
  CHECK(jnr_run({"project", "--points", path("p2.csv"), "--axes", "14"}).code == 2);
}

TEST_CASE("simulate: noiseless counts match theory exactly") {
  write(path("prep.csv"), "theta_a,theta_b,phi1,phi2\n0.3,1.1,0.7,4.0\n1.2,0.2,2.0,0.5\n0,0,0,0\n");
  const Result r = jnr_run({"simulate", "--fixture", "class5", "--states", path("prep.csv"), "--shots", "0",
                            "--similarity", path("sim.csv")});
  REQUIRE(r.code == 0);
  const io::CsvTable counts = io::parse_csv(r.out);
  CHECK(counts.rows.size() == 9);
  for (const auto& row : counts.rows) CHECK(std::abs(row[counts.column("expectation")] - row[counts.column("exact")]) < 1e-12);
  const io::CsvTable sim = io::read_csv(path("sim.csv"));
  for (const auto& row : sim.rows) CHECK(std::abs(row[2] - 1.0) < 1e-12);

  const Result a = jnr_run({"simulate", "--fixture", "class5", "--states", path("prep.csv"), "--seed", "3"});
  const Result b = jnr_run({"simulate", "--fixture", "class5", "--states", path("prep.csv"), "--seed", "3"});
  CHECK(a.out == b.out);
  CHECK(jnr_run({"simulate", "--fixture", "class5", "--states", path("prep.csv"), "--visibility", "2"}).code == 2);
}

TEST_CASE("levels: every level of a random pair") {
  const Result r = jnr_run({"levels", "--dim", "4", "--seed", "2", "--directions", "30"});
  REQUIRE(r.code == 0);
  CHECK(io::parse_csv(r.out).rows.size() == 120);
}

TEST_CASE("reproduce: class 4 artifacts, deterministic for a fixed seed") {
  const std::string a = path("rep_a"), b = path("rep_b");
  REQUIRE(jnr_run({"reproduce", "--class", "4", "--outdir", a, "--no-timestamp", "--seed", "9"}).code == 0);
  REQUIRE(jnr_run({"reproduce", "--class", "4", "--outdir", b, "--no-timestamp", "--seed", "9"}).code == 0);
  const io::ReportV1 rep = io::parse_report(io::read_text(a + "/report.json"));
  CHECK(rep.s == 0);
  CHECK(rep.e == 3);
  for (const char* f : {"points.csv", "mesh.ply", "report.json", "bands.csv", "counts.csv", "similarity.csv",
                        "prep.csv", "closings.json", "projection_12.csv"}) {
    INFO(f);
    REQUIRE(fs::exists(a + "/" + f));
    CHECK(io::read_text(a + "/" + f) == io::read_text(b + "/" + f));
  }
  CHECK(io::read_csv(a + "/points.csv").rows.size() == 300);
  const io::CsvTable counts = io::read_csv(a + "/counts.csv");
  CHECK(counts.rows.size() == 900);
  CHECK(counts.rows[0][counts.column("shots")] == 10000);
  CHECK(jnr_run({"reproduce", "--class", "9"}).code == 2);
}

TEST_CASE("help, version and usage errors") {
  CHECK(jnr_run({"--help"}).code == 0);
  const Result v = jnr_run({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out == "0.1.0\n");
  const Result u = jnr_run({"frobnicate"});
  CHECK(u.code == 2);
  CHECK(u.err.find("\"error\":\"usage\"") != std::string::npos);
  CHECK(jnr_run({}).code == 2);
}
