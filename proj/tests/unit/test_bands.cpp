#include <doctest.h>

#include <set>

#include "jnr/bands.hpp"
#include "jnr/fixtures.hpp"

using namespace jnr;

TEST_CASE("Pauli bands are flat at -1 and +1") {
  const BandGrid g = band_surface(fixture("pauli_triple").operators, 19, 36);
  REQUIRE(g.levels.size() == 2);
  CHECK((g.levels[0].array() + 1.0).abs().maxCoeff() < 1e-12);
  CHECK((g.levels[1].array() - 1.0).abs().maxCoeff() < 1e-12);
}

TEST_CASE("band identities: ordering, antipodal duality, trace sum, ground energy") {
  for (int k : {1, 3, 7}) {
    const auto& ops = class_fixture(k).operators;
    // Even phi_res and odd theta_res put -h on the grid: (pi - theta, phi + pi).
    const int tr = 37, pr = 72;
    const BandGrid g = band_surface(ops, tr, pr);
    const double t1 = ops[0].matrix().trace().real(), t2 = ops[1].matrix().trace().real(),
                 t3 = ops[2].matrix().trace().real();
    for (int i = 0; i < tr; ++i) {
      for (int j = 0; j < pr; ++j) {
        CHECK(g.levels[0](i, j) <= g.levels[1](i, j));
        CHECK(g.levels[1](i, j) <= g.levels[2](i, j));
        const Direction d = g.direction(i, j);
        const double trace = d.h(0) * t1 + d.h(1) * t2 + d.h(2) * t3;
        CHECK(std::abs(g.levels[0](i, j) + g.levels[1](i, j) + g.levels[2](i, j) - trace) < 1e-10);
        CHECK(std::abs(g.levels[0](i, j) - supporting_point(ops, d).energy) < 1e-10);
        if (i == 0 || i == tr - 1) continue;
        const int ai = tr - 1 - i, aj = (j + pr / 2) % pr;
        CHECK(std::abs(g.levels[0](i, j) + g.levels[2](ai, aj)) < 1e-10);
        CHECK(std::abs(g.levels[1](i, j) + g.levels[1](ai, aj)) < 1e-10);
      }
    }
  }
}

TEST_CASE("resolution check") {
  CHECK_THROWS_AS(band_surface(class_fixture(1).operators, 15, 360), InputError);
}

TEST_CASE("gap closings carry flat kinds") {
  const auto& c1 = class_fixture(1).operators;
  const GapReport r1 = locate_band_degeneracies(band_surface(c1), c1);
  CHECK(r1.closings.empty());
  CHECK(r1.min_gap > 0.0);

  const auto& c7 = class_fixture(7).operators;
  const GapReport r7 = locate_band_degeneracies(band_surface(c7), c7);
  std::multiset<FlatKind> kinds;
  for (const auto& c : r7.closings) kinds.insert(c.kind);
  CHECK(kinds == std::multiset<FlatKind>{FlatKind::segment, FlatKind::ellipse});
  for (const auto& c : r7.closings) CHECK(c.refined_gap < 1e-9 * tolerance_scale(c7));

  const auto& c5 = class_fixture(5).operators;
  const GapReport r5 = locate_band_degeneracies(band_surface(c5), c5);
  CHECK(r5.closings.size() == 4);
  for (const auto& c : r5.closings) CHECK(c.kind == FlatKind::ellipse);
}

TEST_CASE("a reference classification that disagrees is an inconsistency") {
  const auto& c7 = class_fixture(7).operators;
  Classification wrong = std::get<Classification>(classify(class_fixture(4).operators));
  CHECK_THROWS_AS(locate_band_degeneracies(band_surface(c7, 61, 120), c7, wrong), NumericalError);
}
