// Acceptance suite: one [PASS]/[FAIL] line per primary criterion. Exit status
// is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "jnr/bands.hpp"
#include "jnr/fixtures.hpp"
#include "jnr/flat.hpp"
#include "jnr/photonic.hpp"
#include "jnr/random.hpp"
#include "jnr/support.hpp"

using namespace jnr;

namespace {

// Class 1 band grid (181 x 360) minimum of E1 - E0, recorded at first run.
constexpr double kClass1MinGridGap = 0.99999999999999878;

const std::vector<std::string> kFixtures = {"class1", "class2", "class3", "class4", "class5",
                                            "class6", "class7", "class8", "setA",   "setB"};

int failures = 0;

void verdict(const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] %s: %s\n", pass ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Lowest eigenvalue from Eigen's solver, independent of the library's Jacobi.
double oracle_ground_energy(std::span<const HermitianOperator> ops, const Eigen::Vector3d& h) {
  Matrix m = Matrix::Zero(ops[0].dim(), ops[0].dim());
  for (std::size_t i = 0; i < ops.size(); ++i) m += h(static_cast<Eigen::Index>(i)) * ops[i].matrix();
  return Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

/// Expectation triples of Haar-random pure states.
Eigen::Matrix3Xd pure_oracle_points(std::span<const HermitianOperator> ops, int count, std::uint64_t seed) {
  Engine engine = make_engine(seed);
  Eigen::Matrix3Xd q(3, count);
  for (int k = 0; k < count; ++k) {
    const Vector psi = random_pure_vector(ops[0].dim(), engine);
    for (int i = 0; i < 3; ++i) q(i, k) = expectation_value(ops[static_cast<std::size_t>(i)].matrix(), psi);
  }
  return q;
}

/// Expectation triples of random mixed states of rank 1, 2, 3 in turn.
Eigen::Matrix3Xd mixed_oracle_points(std::span<const HermitianOperator> ops, int count, std::uint64_t seed) {
  Engine engine = make_engine(seed, 1);
  Eigen::Matrix3Xd q(3, count);
  for (int k = 0; k < count; ++k) {
    const QuantumState rho = random_mixed_state(ops[0].dim(), 1 + k % 3, engine);
    for (int i = 0; i < 3; ++i) q(i, k) = expectation(ops[static_cast<std::size_t>(i)], rho);
  }
  return q;
}

/// max over points and faces of n . q - c.
double worst_violation(const HullMesh& mesh, const Eigen::Matrix3Xd& q) {
  double worst = -1e300;
  const Eigen::MatrixXd nt = mesh.normals.transpose();
  for (Eigen::Index start = 0; start < q.cols(); start += 4096) {
    const Eigen::Index len = std::min<Eigen::Index>(4096, q.cols() - start);
    Eigen::MatrixXd v = nt * q.middleCols(start, len);
    v.colwise() -= mesh.offsets;
    worst = std::max(worst, v.maxCoeff());
  }
  return worst;
}

std::multiset<std::string> kinds_of(const Classification& c) {
  std::multiset<std::string> out;
  for (const auto& f : c.flats) out.insert(to_string(f.kind));
  for (const auto& f : c.points) out.insert(to_string(f.kind));
  return out;
}

std::string join(const std::multiset<std::string>& s) {
  std::string out = "{";
  for (const auto& x : s) out += (out.size() > 1 ? "," : "") + x;
  return out + "}";
}

// ---------------------------------------------------------------- criteria

std::map<std::string, Classification> classification_golden() {
  const ClassLabel expected[] = {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 0}, {1, 1}, {1, 2}};
  std::map<std::string, Classification> out;
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::string got;
  for (int k = 1; k <= 8; ++k) {
    const ClassifyResult r = classify(class_fixture(k).operators);
    const auto* c = std::get_if<Classification>(&r);
    const bool ok = c && c->label.s == expected[k - 1].s && c->label.e == expected[k - 1].e && !c->label.s_infinite;
    pass = pass && ok;
    got += (k > 1 ? " " : "") + (c ? c->label.class_name() : std::string("reducible"));
    if (c) out.emplace(class_fixture(k).name, *c);
  }
  const double elapsed = seconds_since(t0);
  verdict("classification golden (8 classes, < 60 s)", pass && elapsed < 60.0,
          fmt("%s in %.2f s", got.c_str(), elapsed));
  return out;
}

void degenerate_direction_golden(const std::map<std::string, Classification>& census) {
  struct Expected {
    Eigen::Vector3d h;
    int dim;
  };
  const double r = std::sqrt(0.5);
  const std::vector<std::pair<std::string, std::vector<Expected>>> cases = {
      {"class4", {{{1, 0, 0}, 3}, {{-r, -r, 0}, 3}, {{-r, r, 0}, 3}}},
      {"class8", {{{1, 0, 0}, 2}, {{-r, 0, -r}, 3}, {{-r, 0, r}, 3}}},
  };
  bool pass = true;
  double worst = 0.0;
  for (const auto& [name, want] : cases) {
    const Classification& c = census.at(name);
    std::vector<FlatPortion> found = c.flats;
    found.insert(found.end(), c.points.begin(), c.points.end());
    if (found.size() != want.size()) {
      pass = false;
      continue;
    }
    for (const auto& w : want) {
      const Direction target = Direction::from_vector(w.h);
      const auto best = std::min_element(found.begin(), found.end(), [&](const FlatPortion& a, const FlatPortion& b) {
        return angular_distance(a.at.direction, target) < angular_distance(b.at.direction, target);
      });
      const double err = angular_distance(best->at.direction, target);
      worst = std::max(worst, err);
      pass = pass && err < 1e-6 && best->dim_span == w.dim;
      found.erase(best);
    }
  }
  verdict("degenerate-direction golden (class 4, class 8)", pass, fmt("max angular error %.2e rad", worst));
}

void set_b(const std::map<std::string, Classification>&) {
  const auto c = std::get<Classification>(classify(fixture("setB").operators));
  bool pass = c.label.s == 0 && c.label.e == 0 && !c.label.s_infinite && c.flats.empty() && c.points.size() == 1;
  double err = -1.0;
  if (c.points.size() == 1) {
    err = angular_distance(c.points[0].at.direction, Direction::from_vector(Eigen::Vector3d::UnitX()));
    pass = pass && err < 1e-6 && c.points[0].kind == FlatKind::point;
  }
  verdict("set B: (0,0) with one point-kind degeneracy at (1,0,0)", pass,
          fmt("%s, %zu point(s), angular error %.2e", c.label.class_name().c_str(), c.points.size(), err));
}

void bloch_sphere() {
  const auto& ops = fixture("pauli_triple").operators;
  const Sweep s = sweep(ops, fibonacci_sphere(2000));
  double norm_err = 0.0, energy_err = 0.0;
  for (const auto& b : s.samples) {
    norm_err = std::max(norm_err, std::abs(b.point.norm() - 1.0));
    energy_err = std::max(energy_err, std::abs(b.energy + 1.0));
  }
  verdict("Bloch-sphere oracle (2000 directions)", norm_err < 1e-9 && energy_err < 1e-9,
          fmt("max | |p| - 1 | = %.2e, max |E + 1| = %.2e", norm_err, energy_err));
}

void energy_hyperplane() {
  bool pass = true;
  double worst_identity = 0.0, worst_support = 0.0;
  for (std::size_t f = 0; f < kFixtures.size(); ++f) {
    const auto& ops = fixture(kFixtures[f]).operators;
    const double scale = tolerance_scale(ops);
    const auto dirs = random_directions(1000, 100 + f);
    const Eigen::Matrix3Xd q = pure_oracle_points(ops, 100000, 200 + f);
    Eigen::MatrixXd h(static_cast<Eigen::Index>(dirs.size()), 3);
    Eigen::VectorXd hp(h.rows());
    for (std::size_t k = 0; k < dirs.size(); ++k) {
      const BoundarySample b = supporting_point(ops, dirs[k]);
      const double identity = std::abs(dirs[k].h.dot(b.point) - oracle_ground_energy(ops, dirs[k].h)) / scale;
      worst_identity = std::max(worst_identity, identity);
      h.row(static_cast<Eigen::Index>(k)) = dirs[k].h.transpose();
      hp(static_cast<Eigen::Index>(k)) = dirs[k].h.dot(b.point);
    }
    Eigen::VectorXd min_hq = Eigen::VectorXd::Constant(h.rows(), 1e300);
    for (Eigen::Index start = 0; start < q.cols(); start += 4096) {
      const Eigen::Index len = std::min<Eigen::Index>(4096, q.cols() - start);
      min_hq = min_hq.cwiseMin((h * q.middleCols(start, len)).rowwise().minCoeff());
    }
    // Violation of h.q >= h.p - 1e-9 scale, in units of scale.
    const double support = ((hp - min_hq).maxCoeff()) / scale;
    worst_support = std::max(worst_support, support);
    pass = pass && (worst_identity < 1e-10) && (support < 1e-9);
  }
  verdict("energy/hyperplane identities (1000 directions x 1e5 Haar states, 10 fixtures)", pass,
          fmt("max |h.p - lambda0| / scale = %.2e, max (h.p - min h.q) / scale = %.2e", worst_identity,
              worst_support));
}

void janr_closure(const std::map<std::string, Classification>& census) {
  bool pass = true;
  double worst_pure = -1e300, worst_mixed = -1e300, worst_depth = 0.0;
  std::string failed;
  for (std::size_t f = 0; f < kFixtures.size(); ++f) {
    const auto& ops = fixture(kFixtures[f]).operators;
    const double scale = tolerance_scale(ops);
    PointCloud rims;
    const auto it = census.find(kFixtures[f]);
    const Classification c = it != census.end() ? it->second : std::get<Classification>(classify(ops));
    for (const auto* group : {&c.flats, &c.points}) {
      for (const auto& flat : *group) {
        const Eigen::MatrixXd rim = flat_rim(flat, 64);
        for (Eigen::Index k = 0; k < rim.cols(); ++k) rims.append(rim.col(k), {PointTag::Kind::flat, 0, 0});
      }
    }
    const AdaptiveSweep body = adaptive_sweep(ops, 2000, rims);
    const double vp = worst_violation(body.mesh, pure_oracle_points(ops, 100000, 300 + f)) / scale;
    const double vm = worst_violation(body.mesh, mixed_oracle_points(ops, 10000, 400 + f)) / scale;
    worst_pure = std::max(worst_pure, vp);
    worst_mixed = std::max(worst_mixed, vm);
    worst_depth = std::max(worst_depth, body.certified_depth / scale);
    if (!(vp <= 1e-3 && vm <= 1e-3)) {
      pass = false;
      failed += " " + kFixtures[f];
    }
  }
  verdict("JANR closure (1e5 pure + 1e4 mixed states, 2000-direction hull, tol 1e-3 x scale)", pass,
          fmt("worst violation / scale: pure %.2e, mixed %.2e; certified depth / scale %.2e%s", worst_pure,
              worst_mixed, worst_depth, failed.empty() ? "" : (";" + failed).c_str()));
}

void band_correspondence(const std::map<std::string, Classification>& census) {
  bool pass = true;
  std::string detail;
  double class1_gap = 0.0;
  for (const auto& name : kFixtures) {
    const auto& ops = fixture(name).operators;
    const auto it = census.find(name);
    const Classification c = it != census.end() ? it->second : std::get<Classification>(classify(ops));
    const BandGrid grid = band_surface(ops);
    std::multiset<std::string> closing_kinds;
    try {
      const GapReport g = locate_band_degeneracies(grid, ops);
      for (const auto& cl : g.closings) closing_kinds.insert(to_string(cl.kind));
    } catch (const NumericalError& e) {
      closing_kinds.insert(std::string("error: ") + e.what());
    }
    const bool ok = closing_kinds == kinds_of(c);
    pass = pass && ok;
    if (!ok || name == "class1" || name == "class7") detail += " " + name + "=" + join(closing_kinds);
    if (name == "class1") class1_gap = grid.gap01().minCoeff();
  }
  const bool gap_ok = class1_gap > 0.0 && std::abs(class1_gap - kClass1MinGridGap) <= 1e-12;
  verdict("band correspondence (closings = flat census, 10 fixtures)", pass && gap_ok,
          fmt("%s; class1 min grid gap %.17g (regression %.17g)", detail.c_str() + 1, class1_gap, kClass1MinGridGap));
}

void planar_classes() {
  const auto& f5 = class_fixture(5).operators;
  const OperatorList tri{f5[0], f5[2]}, ell{f5[0], f5[1]};
  const PlanarClassification t = classify_projection_2d(tri);
  const PlanarClassification e = classify_projection_2d(ell);
  const ClassifyResult r = classify(fixture("reducible").operators);
  const auto* red = std::get_if<ReducibleInput>(&r);
  const bool red_ok = red && red->rotational_label && red->rotational_label->s_infinite && red->rotational_label->e == 1;
  verdict("2D four-class test", t.label == PlanarClass::triangle && e.label == PlanarClass::ellipse_plus_point && red_ok,
          fmt("(F51,F53) %s, (F51,F52) %s, (F51,F53,F53) %s", to_string(t.label), to_string(e.label),
              red_ok ? red->rotational_label->class_name().c_str() : "not reducible"));
}

void simulator_equivalence() {
  // Noiseless simulation against direct expectations.
  double worst_exact = 0.0;
  for (const auto& fx : fixtures()) {
    if (fx.operators.front().dim() != 3) continue;
    std::vector<MeasurementSetup> setups;
    for (const auto& f : fx.operators) setups.push_back(measurement_unitary(f));
    Engine engine = make_engine(500);
    for (int k = 0; k < 200; ++k) {
      const QuantumState s = k % 2 ? QuantumState::pure(random_pure_vector(3, engine))
                                   : random_mixed_state(3, 1 + (k / 2) % 3, engine);
      for (std::size_t i = 0; i < fx.operators.size(); ++i) {
        const CountRecord rec = simulate_measurement(s, setups[i], 0, 0);
        worst_exact = std::max(worst_exact, std::abs(rec.expectation - expectation(fx.operators[i], s)));
      }
    }
  }

  double worst_decomp = 0.0;
  Engine engine = make_engine(600);
  for (int k = 0; k < 1000; ++k) {
    const Matrix u = random_unitary(3, engine);
    const auto b = decompose_unitary(u);
    worst_decomp = std::max(worst_decomp, (b[2].embed() * b[1].embed() * b[0].embed() - u).norm());
  }

  double worst_qhq = 0.0;
  const Complex i(0.0, 1.0);
  for (int k = 0; k < 100; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / 100;
    Eigen::Matrix2cd target = Eigen::Matrix2cd::Zero();
    target(0, 0) = std::exp(i * (std::numbers::pi - phi));
    target(1, 1) = 1.0;
    const Eigen::Matrix2cd got = qhq_phase(phi);
    worst_qhq = std::max(worst_qhq, (got / got(1, 1) - target).norm());
  }

  // Ground states -> preparation angles -> prepared state -> 1e4 shots.
  double min_mean = 1.0;
  for (int k = 1; k <= 8; ++k) {
    const auto& ops = class_fixture(k).operators;
    std::vector<MeasurementSetup> setups;
    for (const auto& f : ops) setups.push_back(measurement_unitary(f));
    const Sweep s = sweep(ops, random_directions(300, 700 + k));
    double sum = 0.0;
    int count = 0;
    for (std::size_t j = 0; j < s.samples.size(); ++j) {
      const QuantumState state = prepare_state(solve_prep_angles(s.samples[j].ground_state));
      for (std::size_t f = 0; f < ops.size(); ++f) {
        const CountRecord rec = simulate_measurement(state, setups[f], 10000, splitmix64(800 + 3 * j + f), 1.0);
        sum += similarity(rec.probabilities, outcome_probabilities(state, setups[f]));
        ++count;
      }
    }
    min_mean = std::min(min_mean, sum / count);
  }
  verdict("simulator equivalence",
          worst_exact < 1e-10 && worst_decomp < 1e-10 && worst_qhq < 1e-10 && min_mean >= 0.999,
          fmt("noiseless %.2e, decomposition %.2e, QHQ %.2e, min class mean S %.6f", worst_exact, worst_decomp,
              worst_qhq, min_mean));
}

void nested_levels() {
  Engine engine = make_engine(900);
  const OperatorList pair{random_hermitian(9, engine, "F1"), random_hermitian(9, engine, "F2")};
  const auto dirs = planar_directions(720);
  const PointCloud l0 = level_sweep(pair, 0, dirs);
  const PointCloud l1 = level_sweep(pair, 1, dirs);
  const PointCloud l2 = level_sweep(pair, 2, dirs);
  const PointCloud l8 = level_sweep(pair, 8, dirs);
  const auto mesh = std::get<HullMesh>(convex_hull(l0.points));
  double inside = -1e300;
  for (const PointCloud* c : {&l1, &l2}) {
    for (Eigen::Index k = 0; k < c->size(); ++k) inside = std::max(inside, max_violation(mesh, c->points.col(k)));
  }
  // Direction alpha + pi is grid index k + 360, so level 8 at k pairs with level 0 there.
  double duality = 0.0;
  for (Eigen::Index k = 0; k < 720; ++k) {
    duality = std::max(duality, (l8.points.col(k) - l0.points.col((k + 360) % 720)).norm());
  }
  verdict("nested-level property (random 9x9 pair)", inside <= 1e-6 && duality < 1e-10,
          fmt("max hull violation of levels 1, 2: %.2e; max |level 8 (h) - level 0 (-h)| = %.2e", inside, duality));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto census = classification_golden();
  degenerate_direction_golden(census);
  set_b(census);
  bloch_sphere();
  energy_hyperplane();
  janr_closure(census);
  band_correspondence(census);
  planar_classes();
  simulator_equivalence();
  nested_levels();
  std::printf("%d criteria failed, %.1f s total\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
