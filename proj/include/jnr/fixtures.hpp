#pragma once

// Built-in operator tuples.
//
//   class1 ... class8     the eight irreducible (s, e) classes of 3x3 triples
//   setA, setB            two gapped triples; setB has one point-kind degeneracy
//   pauli_triple          (sx, sy, sz), d = 2
//   pauli_pair            (sx, sz), d = 2
//   pauli_oval            (sx + 0, sz + 0), d = 3, a disc in the plane
//   reducible             (F51, F53, F53), linearly dependent
//   rotating_triangle     (F51, F53, sy on modes 0,1), the triangle L(F51, F53) rotated about its axis

#include <string>
#include <vector>

#include "jnr/herm.hpp"

namespace jnr {

struct Fixture {
  std::string name;
  std::string description;
  OperatorList operators;
};

const std::vector<Fixture>& fixtures();

/// Throws InputError for unknown names.
const Fixture& fixture(const std::string& name);

/// The triple of class k (1..8).
const Fixture& class_fixture(int k);

}  // namespace jnr
