#include "jnr/commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "jnr/bands.hpp"
#include "jnr/fixtures.hpp"
#include "jnr/flat.hpp"
#include "jnr/io.hpp"
#include "jnr/photonic.hpp"
#include "jnr/random.hpp"
#include "jnr/support.hpp"

namespace jnr::cli {

namespace {

using nlohmann::json;

struct Source {
  std::string input;
  std::string fixture;
};

struct Loaded {
  OperatorList ops;
  std::string digest;
};

void add_source(CLI::App* cmd, Source& src) {
  auto* in = cmd->add_option("--input", src.input, "OperatorFileV1 JSON file");
  auto* fx = cmd->add_option("--fixture", src.fixture, "built-in operator tuple (see `jnr fixtures`)");
  in->excludes(fx);
}

Loaded load(const Source& src) {
  if (!src.input.empty()) {
    io::OperatorFile f = io::read_operator_file(src.input);
    return {std::move(f.operators), f.digest};
  }
  if (!src.fixture.empty()) {
    const Fixture& f = fixture(src.fixture);
    return {f.operators, io::fnv1a64_hex(io::operator_file_json(f.operators))};
  }
  throw InputError("one of --input or --fixture is required");
}

void require_triple(const OperatorList& ops, const std::string& what) {
  if (ops.size() != 3) throw InputError(what + " needs three operators, got " + std::to_string(ops.size()));
  if (common_dimension(ops) != 3) {
    throw InputError(what + " requires d=3 operators, got d=" + std::to_string(ops.front().dim()));
  }
}

std::pair<int, int> parse_resolution(const std::string& text, const std::string& flag) {
  std::string t = text;
  for (const std::string times : {"\xc3\x97", "X"}) {
    for (auto p = t.find(times); p != std::string::npos; p = t.find(times)) t.replace(p, times.size(), "x");
  }
  int a = 0, b = 0;
  char sep = 0;
  std::istringstream in(t);
  if (!(in >> a >> sep >> b) || sep != 'x' || !in.eof() || a <= 0 || b <= 0) {
    throw InputError(flag + " expects TxP with positive integers, got \"" + text + "\"");
  }
  return {a, b};
}

std::pair<int, int> parse_axes(const std::string& text, int n) {
  if (text.size() != 2 || text[0] == text[1] || text[0] < '1' || text[1] < '1' || text[0] > '0' + n ||
      text[1] > '0' + n) {
    throw InputError("--axes expects two distinct digits in 1.." + std::to_string(n) + ", got \"" + text + "\"");
  }
  return {text[0] - '1', text[1] - '1'};
}

/// Runs `write` against the file at `path`, or `out` for "-".
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& write) {
  if (path == "-") {
    write(out);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  write(f);
  if (!f) throw InputError("write failed for " + path);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t record_seed(std::uint64_t seed, std::uint64_t index) { return splitmix64(seed ^ splitmix64(index + 1)); }

// ---------------------------------------------------------------- classify

struct ClassifyArgs {
  Source src;
  std::string out = "-";
  bool tol_sweep = false;
  bool no_timestamp = false;
  std::string band_res = "181x360";
  bool no_bands = false;
};

io::ReportV1 build_report(const OperatorList& ops, const std::string& digest, const ClassifyArgs& a,
                          Classification* classification = nullptr) {
  require_triple(ops, "classify");
  const FlatOptions opt;
  const double scale = tolerance_scale(ops);
  const ClassifyResult result = classify(ops, opt);
  io::ReportV1 r = io::make_report(result, opt, scale);
  r.input_digest = digest;
  if (!a.no_timestamp) r.timestamp = utc_timestamp();
  if (!a.no_bands) {
    const auto [t, p] = parse_resolution(a.band_res, "--band-res");
    const BandGrid grid = band_surface(ops, t, p);
    r.band_min_gap = grid.gap01().minCoeff();
    r.band_grid = {t, p};
  }
  if (a.tol_sweep) {
    if (!std::holds_alternative<Classification>(result)) {
      throw InputError("--tol-sweep needs an irreducible triple");
    }
    std::vector<double> taus;
    for (int k = 6; k <= 12; ++k) taus.push_back(std::pow(10.0, -k) * scale);
    for (const auto& row : tolerance_sweep(ops, taus, opt)) {
      r.stability.push_back({row.tau, row.label.class_name(), row.label.s, row.label.e, row.label.s_infinite,
                             row.degenerate_directions});
    }
  }
  if (classification) {
    if (const auto* c = std::get_if<Classification>(&result)) *classification = *c;
  }
  return r;
}

int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
  const Loaded in = load(a.src);
  const io::ReportV1 r = build_report(in.ops, in.digest, a);
  emit(a.out, out, [&](std::ostream& os) { os << io::report_json(r); });
  if (a.tol_sweep && a.out != "-") {
    out << "tau_deg,class_name,s,e,degenerate_directions\n";
    for (const auto& s : r.stability) {
      out << io::format_double(s.tau) << ',' << s.class_name << ',' << (s.s_infinite ? std::string("inf") : std::to_string(s.s))
          << ',' << s.e << ',' << s.directions << '\n';
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
  Source src;
  std::size_t directions = 300;
  std::string grid;
  std::uint64_t seed = 1;
  bool lattice = false;
  bool allow_any_dim = false;
  std::string out = "-";
};

int cmd_sample(const SampleArgs& a, std::ostream& out) {
  const Loaded in = load(a.src);
  const auto n = in.ops.size();
  if (n != 2 && n != 3) throw InputError("sample needs two or three operators, got " + std::to_string(n));
  const Eigen::Index d = common_dimension(in.ops);
  if (d != 3 && !a.allow_any_dim) {
    throw InputError("sample requires d=3 operators for the direction-sphere sweep, got d=" + std::to_string(d) +
                     " (pass --allow-any-dim to sweep other dimensions)");
  }
  std::vector<Direction> dirs;
  if (n == 2) {
    if (!a.grid.empty()) throw InputError("--grid needs three operators; pairs use --directions planar angles");
    dirs = planar_directions(a.directions);
  } else if (!a.grid.empty()) {
    const auto [t, p] = parse_resolution(a.grid, "--grid");
    if (t < 2) throw InputError("--grid needs at least two theta rows");
    dirs = angle_grid(t, p);
  } else {
    dirs = a.lattice ? fibonacci_sphere(a.directions) : random_directions(a.directions, a.seed);
  }
  const Sweep sw = sweep(in.ops, dirs);
  emit(a.out, out, [&](std::ostream& os) { io::write_points_csv(os, sw); });
  return kExitOk;
}

// ---------------------------------------------------------------- hull

struct HullArgs {
  std::string points;
  std::string out = "-";
};

int cmd_hull(const HullArgs& a, std::ostream& out) {
  const Eigen::MatrixXd p = io::points_from_table(io::read_csv(a.points));
  if (p.cols() == 0) throw InputError(a.points + ": no points");
  const HullResult hull = convex_hull(p);
  emit(a.out, out, [&](std::ostream& os) { io::write_ply(os, hull, p); });
  return kExitOk;
}

// ---------------------------------------------------------------- bands

struct BandsArgs {
  Source src;
  std::string res = "181x360";
  std::string out = "-";
  std::string closings;
};

int cmd_bands(const BandsArgs& a, std::ostream& out) {
  const Loaded in = load(a.src);
  if (in.ops.size() != 3) throw InputError("bands needs three operators");
  const auto [t, p] = parse_resolution(a.res, "--res");
  const BandGrid grid = band_surface(in.ops, t, p);
  if (!a.closings.empty()) {
    require_triple(in.ops, "bands --closings");
    const GapReport g = locate_band_degeneracies(grid, in.ops);
    emit(a.closings, out, [&](std::ostream& os) { os << io::closings_json(g); });
  }
  emit(a.out, out, [&](std::ostream& os) { io::write_bands_csv(os, grid); });
  return kExitOk;
}

// ---------------------------------------------------------------- project

struct ProjectArgs {
  std::string points;
  std::string axes = "12";
  std::string out = "-";
};

int cmd_project(const ProjectArgs& a, std::ostream& out) {
  const io::CsvTable t = io::read_csv(a.points);
  const Eigen::MatrixXd p = io::points_from_table(t);
  const auto [i, j] = parse_axes(a.axes, static_cast<int>(p.rows()));
  const bool angles = t.has("theta") && t.has("phi");
  emit(a.out, out, [&](std::ostream& os) {
    os << (angles ? "theta,phi,x,y\n" : "x,y\n");
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      if (angles) {
        os << io::format_double(t.rows[r][t.column("theta")]) << ',' << io::format_double(t.rows[r][t.column("phi")])
           << ',';
      }
      const auto c = static_cast<Eigen::Index>(r);
      os << io::format_double(p(i, c)) << ',' << io::format_double(p(j, c)) << '\n';
    }
  });
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  Source src;
  std::string states;
  std::int64_t shots = 10000;
  std::uint64_t seed = 1;
  double visibility = 1.0;
  std::string out = "-";
  std::string similarity;
};

struct Measured {
  std::vector<CountRecord> records;  ///< state-major, one per (state, operator)
  std::vector<double> exact;         ///< <F_i> of the prepared state
  std::vector<double> similarities;
};

Measured measure(const OperatorList& ops, const std::vector<PrepAngles>& prep, std::int64_t shots,
                 std::uint64_t seed, double visibility) {
  std::vector<MeasurementSetup> setups;
  for (const auto& f : ops) setups.push_back(measurement_unitary(f));
  Measured m;
  const std::size_t n = ops.size();
  m.records.resize(prep.size() * n);
  m.exact.resize(prep.size() * n);
  m.similarities.resize(prep.size() * n);
  for (std::size_t s = 0; s < prep.size(); ++s) {
    const QuantumState state = prepare_state(prep[s]);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t k = s * n + i;
      m.records[k] = simulate_measurement(state, setups[i], shots, record_seed(seed, k), visibility);
      m.exact[k] = expectation(ops[i], state);
      m.similarities[k] = similarity(m.records[k].probabilities, outcome_probabilities(state, setups[i]));
    }
  }
  return m;
}

void write_counts(std::ostream& os, const Measured& m, std::size_t n) {
  os << "state,operator,shots,n0,n1,n2,p0,p1,p2,expectation,exact\n";
  for (std::size_t k = 0; k < m.records.size(); ++k) {
    const auto& r = m.records[k];
    os << k / n << ',' << k % n + 1 << ',' << r.shots << ',' << r.counts[0] << ',' << r.counts[1] << ','
       << r.counts[2];
    for (int j = 0; j < 3; ++j) os << ',' << io::format_double(r.probabilities(j));
    os << ',' << io::format_double(r.expectation) << ',' << io::format_double(m.exact[k]) << '\n';
  }
}

void write_similarity(std::ostream& os, const Measured& m, std::size_t n) {
  os << "state,operator,similarity\n";
  for (std::size_t k = 0; k < m.similarities.size(); ++k) {
    os << k / n << ',' << k % n + 1 << ',' << io::format_double(m.similarities[k]) << '\n';
  }
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const Loaded in = load(a.src);
  if (common_dimension(in.ops) != 3) throw InputError("simulate requires d=3 operators");
  const std::vector<PrepAngles> prep = io::prep_from_table(io::read_csv(a.states));
  const Measured m = measure(in.ops, prep, a.shots, a.seed, a.visibility);
  emit(a.out, out, [&](std::ostream& os) { write_counts(os, m, in.ops.size()); });
  if (!a.similarity.empty()) {
    emit(a.similarity, out, [&](std::ostream& os) { write_similarity(os, m, in.ops.size()); });
  }
  return kExitOk;
}

// ---------------------------------------------------------------- levels

struct LevelsArgs {
  Source src;
  int dim = 9;
  std::uint64_t seed = 1;
  std::size_t directions = 720;
  std::string out = "-";
};

int cmd_levels(const LevelsArgs& a, std::ostream& out) {
  OperatorList pair;
  if (!a.src.input.empty() || !a.src.fixture.empty()) {
    pair = load(a.src).ops;
  } else {
    if (a.dim < 2) throw InputError("--dim must be >= 2");
    Engine engine = make_engine(a.seed);
    pair.push_back(random_hermitian(a.dim, engine, "F1"));
    pair.push_back(random_hermitian(a.dim, engine, "F2"));
  }
  if (pair.size() != 2) throw InputError("levels needs exactly two operators");
  const auto dirs = planar_directions(a.directions);
  std::vector<PointCloud> levels;
  for (Eigen::Index k = 0; k < common_dimension(pair); ++k) levels.push_back(level_sweep(pair, static_cast<int>(k), dirs));
  emit(a.out, out, [&](std::ostream& os) { io::write_levels_csv(os, levels, dirs); });
  return kExitOk;
}

// ---------------------------------------------------------------- reproduce

struct ReproduceArgs {
  int klass = 0;
  std::string outdir = ".";
  std::uint64_t seed = 1;
  std::int64_t shots = 10000;
  bool no_timestamp = false;
};

int cmd_reproduce(const ReproduceArgs& a, std::ostream& out) {
  const Fixture& fx = class_fixture(a.klass);
  const OperatorList& ops = fx.operators;
  const std::filesystem::path dir(a.outdir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create " + dir.string() + ": " + ec.message());
  auto file = [&](const char* name) { return (dir / name).string(); };

  const Sweep points = sweep(ops, random_directions(300, a.seed));
  emit(file("points.csv"), out, [&](std::ostream& os) { io::write_points_csv(os, points); });
  for (const auto& [name, axes] : {std::pair{"projection_12.csv", std::pair{0, 1}},
                                   std::pair{"projection_13.csv", std::pair{0, 2}},
                                   std::pair{"projection_23.csv", std::pair{1, 2}}}) {
    emit(file(name), out, [&](std::ostream& os) { io::write_projection_csv(os, points, axes); });
  }

  ClassifyArgs ca;
  ca.no_timestamp = a.no_timestamp;
  Classification c;
  const io::ReportV1 report = build_report(ops, io::fnv1a64_hex(io::operator_file_json(ops)), ca, &c);
  emit(file("report.json"), out, [&](std::ostream& os) { os << io::report_json(report); });

  PointCloud rims;
  for (const auto* group : {&c.flats, &c.points}) {
    for (const auto& f : *group) {
      const Eigen::MatrixXd rim = flat_rim(f, 64);
      for (Eigen::Index k = 0; k < rim.cols(); ++k) rims.append(rim.col(k), {PointTag::Kind::flat, 0, 0});
    }
  }
  const AdaptiveSweep body = adaptive_sweep(ops, 2000, rims);
  emit(file("mesh.ply"), out, [&](std::ostream& os) { io::write_ply(os, body.mesh, body.cloud.points); });

  const BandGrid grid = band_surface(ops);
  const GapReport closings = locate_band_degeneracies(grid, ops, c);
  emit(file("bands.csv"), out, [&](std::ostream& os) { io::write_bands_csv(os, grid); });
  emit(file("closings.json"), out, [&](std::ostream& os) { os << io::closings_json(closings); });

  std::vector<PrepAngles> prep;
  for (const auto& s : points.samples) prep.push_back(solve_prep_angles(s.ground_state));
  emit(file("prep.csv"), out, [&](std::ostream& os) {
    os << "theta_a,theta_b,phi1,phi2\n";
    for (const auto& p : prep) {
      os << io::format_double(p.theta_a) << ',' << io::format_double(p.theta_b) << ',' << io::format_double(p.phi1)
         << ',' << io::format_double(p.phi2) << '\n';
    }
  });
  const Measured m = measure(ops, prep, a.shots, a.seed, 1.0);
  emit(file("counts.csv"), out, [&](std::ostream& os) { write_counts(os, m, ops.size()); });
  emit(file("similarity.csv"), out, [&](std::ostream& os) { write_similarity(os, m, ops.size()); });

  double mean = 0.0;
  for (double s : m.similarities) mean += s;
  mean /= static_cast<double>(m.similarities.size());
  out << fx.name << ": " << report.class_name << ", " << closings.closings.size() << " band closings, mean similarity "
      << io::format_double(mean) << ", outputs in " << dir.string() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- fixtures

struct FixturesArgs {
  std::string dump;
  std::string out = "-";
};

int cmd_fixtures(const FixturesArgs& a, std::ostream& out) {
  if (!a.dump.empty()) {
    const Fixture& f = fixture(a.dump);
    emit(a.out, out, [&](std::ostream& os) { os << io::operator_file_json(f.operators); });
    return kExitOk;
  }
  for (const auto& f : fixtures()) {
    out << f.name << "\td=" << f.operators.front().dim() << " n=" << f.operators.size() << "\t" << f.description << '\n';
  }
  return kExitOk;
}

void error_line(std::ostream& err, const char* kind, int code, const std::string& message) {
  err << json{{"error", kind}, {"exit_code", code}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Joint numerical ranges of Hermitian operator tuples", "jnr"};
  app.set_version_flag("--version", JNR_VERSION);
  app.require_subcommand(1);

  ClassifyArgs classify_args;
  auto* classify_cmd = app.add_subcommand("classify", "(s, e) class of a d=3 triple as a report");
  add_source(classify_cmd, classify_args.src);
  classify_cmd->add_option("--out", classify_args.out, "report path, - for stdout");
  classify_cmd->add_flag("--tol-sweep", classify_args.tol_sweep, "classify at tau_deg = 1e-6 ... 1e-12 (x scale)");
  classify_cmd->add_flag("--no-timestamp", classify_args.no_timestamp, "omit the timestamp field");
  classify_cmd->add_option("--band-res", classify_args.band_res, "band grid for band_min_gap, TxP");
  classify_cmd->add_flag("--no-bands", classify_args.no_bands, "skip the band grid");

  SampleArgs sample_args;
  auto* sample_cmd = app.add_subcommand("sample", "boundary points from supporting Hamiltonians");
  add_source(sample_cmd, sample_args.src);
  auto* n_opt = sample_cmd->add_option("--directions", sample_args.directions, "number of directions");
  auto* g_opt = sample_cmd->add_option("--grid", sample_args.grid, "theta x phi grid, e.g. 64x128");
  n_opt->excludes(g_opt);
  sample_cmd->add_option("--seed", sample_args.seed, "seed for random directions");
  sample_cmd->add_flag("--lattice", sample_args.lattice, "Fibonacci lattice instead of random directions");
  sample_cmd->add_flag("--allow-any-dim", sample_args.allow_any_dim, "accept operators with d != 3");
  sample_cmd->add_option("--out", sample_args.out, "CSV path, - for stdout");

  HullArgs hull_args;
  auto* hull_cmd = app.add_subcommand("hull", "convex hull of a points CSV as ASCII PLY");
  hull_cmd->add_option("--points", hull_args.points, "CSV with columns x,y[,z]")->required();
  hull_cmd->add_option("--out", hull_args.out, "PLY path, - for stdout");

  BandsArgs bands_args;
  auto* bands_cmd = app.add_subcommand("bands", "energy bands over the direction sphere");
  add_source(bands_cmd, bands_args.src);
  bands_cmd->add_option("--res", bands_args.res, "theta x phi resolution");
  bands_cmd->add_option("--out", bands_args.out, "CSV path, - for stdout");
  bands_cmd->add_option("--closings", bands_args.closings, "also locate gap closings, written as JSON");

  ProjectArgs project_args;
  auto* project_cmd = app.add_subcommand("project", "2D projection of a points CSV");
  project_cmd->add_option("--points", project_args.points, "CSV with columns x,y,z")->required();
  project_cmd->add_option("--axes", project_args.axes, "two 1-based axis digits, e.g. 12");
  project_cmd->add_option("--out", project_args.out, "CSV path, - for stdout");

  SimulateArgs simulate_args;
  auto* simulate_cmd = app.add_subcommand("simulate", "prepare-and-measure simulation with shot noise");
  add_source(simulate_cmd, simulate_args.src);
  simulate_cmd->add_option("--states", simulate_args.states, "CSV with theta_a,theta_b,phi1,phi2")->required();
  simulate_cmd->add_option("--shots", simulate_args.shots, "shots per state and observable, 0 for exact")
      ->check(CLI::NonNegativeNumber);
  simulate_cmd->add_option("--seed", simulate_args.seed, "sampling seed");
  simulate_cmd->add_option("--visibility", simulate_args.visibility, "mixing with uniform noise")
      ->check(CLI::Range(0.0, 1.0));
  simulate_cmd->add_option("--out", simulate_args.out, "counts CSV path, - for stdout");
  simulate_cmd->add_option("--similarity", simulate_args.similarity, "per-record similarity CSV");

  LevelsArgs levels_args;
  auto* levels_cmd = app.add_subcommand("levels", "expectation pairs of every eigen-level of a pair");
  add_source(levels_cmd, levels_args.src);
  levels_cmd->add_option("--dim", levels_args.dim, "dimension of the random pair when no input is given");
  levels_cmd->add_option("--seed", levels_args.seed, "seed of the random pair");
  levels_cmd->add_option("--directions", levels_args.directions, "planar directions");
  levels_cmd->add_option("--out", levels_args.out, "CSV path, - for stdout");

  ReproduceArgs reproduce_args;
  auto* reproduce_cmd = app.add_subcommand("reproduce", "all artifacts for one of the eight classes");
  reproduce_cmd->add_option("--class", reproduce_args.klass, "class 1..8")->required()->check(CLI::Range(1, 8));
  reproduce_cmd->add_option("--outdir", reproduce_args.outdir, "output directory");
  reproduce_cmd->add_option("--seed", reproduce_args.seed, "seed for directions and shots");
  reproduce_cmd->add_option("--shots", reproduce_args.shots, "shots per state and observable")
      ->check(CLI::NonNegativeNumber);
  reproduce_cmd->add_flag("--no-timestamp", reproduce_args.no_timestamp, "omit the report timestamp");

  FixturesArgs fixtures_args;
  auto* fixtures_cmd = app.add_subcommand("fixtures", "list built-in operator tuples");
  fixtures_cmd->add_option("--dump", fixtures_args.dump, "write one fixture as an operator file");
  fixtures_cmd->add_option("--out", fixtures_args.out, "path for --dump, - for stdout");

  std::vector<const char*> argv{"jnr"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << JNR_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    error_line(err, "usage", kExitInput, e.what());
    return kExitInput;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(classify_args, out);
    if (sample_cmd->parsed()) return cmd_sample(sample_args, out);
    if (hull_cmd->parsed()) return cmd_hull(hull_args, out);
    if (bands_cmd->parsed()) return cmd_bands(bands_args, out);
    if (project_cmd->parsed()) return cmd_project(project_args, out);
    if (simulate_cmd->parsed()) return cmd_simulate(simulate_args, out);
    if (levels_cmd->parsed()) return cmd_levels(levels_args, out);
    if (reproduce_cmd->parsed()) return cmd_reproduce(reproduce_args, out);
    if (fixtures_cmd->parsed()) return cmd_fixtures(fixtures_args, out);
  } catch (const InputError& e) {
    error_line(err, "input", kExitInput, e.what());
    return kExitInput;
  } catch (const NumericalError& e) {
    error_line(err, "numerical", kExitNumerical, e.what());
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace jnr::cli
