#include "jnr/fixtures.hpp"

#include <initializer_list>

namespace jnr {

namespace {

const Complex I(0.0, 1.0);

Matrix m3(std::initializer_list<Complex> v) {
  Matrix m(3, 3);
  auto it = v.begin();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = *it++;
  return m;
}

Matrix m2(std::initializer_list<Complex> v) {
  Matrix m(2, 2);
  auto it = v.begin();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = *it++;
  return m;
}

OperatorList named(const std::string& prefix, std::initializer_list<Matrix> mats) {
  OperatorList out;
  int k = 1;
  for (const auto& m : mats) out.emplace_back(m, prefix + std::to_string(k++));
  return out;
}

std::vector<Fixture> build() {
  const Matrix d001 = m3({0, 0, 0, 0, 0, 0, 0, 0, 1});
  const Matrix x01 = m3({0, 1, 0, 1, 0, 0, 0, 0, 0});
  const Matrix x02 = m3({0, 0, 1, 0, 0, 0, 1, 0, 0});
  const Matrix x12 = m3({0, 0, 0, 0, 0, 1, 0, 1, 0});
  const Matrix y01 = m3({0, -I, 0, I, 0, 0, 0, 0, 0});

  std::vector<Fixture> f;
  f.push_back({"class1", "s=0 e=0", named("F1", {x02, m3({0, 0, I, 0, 0, 0, -I, 0, 0}), x12})});
  f.push_back({"class2", "s=0 e=1",
               named("F2", {d001, m3({0, 1, 0, 1, 0, 1, 0, 1, 0}), m3({0, I, 1, -I, 0, 0, 1, 0, 0})})});
  f.push_back({"class3", "s=0 e=2",
               named("F3", {d001, m3({0, 1, -1, 1, 0, 0, -1, 0, 0}), m3({1, 0, 0, 0, -1, 1, 0, 1, 0})})});
  f.push_back({"class4", "s=0 e=3", named("F4", {d001, x01, m3({0, I, 1, -I, 0, 0, 1, 0, 0})})});
  f.push_back({"class5", "s=0 e=4", named("F5", {d001, m3({1, 0, 1, 0, -1, 0, 1, 0, 0}), x01})});
  f.push_back({"class6", "s=1 e=0", named("F6", {m3({0, I, 0, -I, 0, 0, 0, 0, 1}), x01, x02})});
  f.push_back({"class7", "s=1 e=1",
               named("F7", {d001, m3({0, 0, -1, 0, 0, 1, -1, 1, 0}), m3({0, 1, 0, 1, 0, 1, 0, 1, 0})})});
  f.push_back({"class8", "s=1 e=2", named("F8", {d001, x02, x01})});
  f.push_back({"setA", "gapped triple without degeneracies", named("A", {x02, m3({0, 0, I, 0, 0, 0, -I, 0, 0}), x12})});
  f.push_back({"setB", "gapped except one point-kind degeneracy at h=(1,0,0)", named("B", {d001, x02, x12})});
  f.push_back({"pauli_triple", "Pauli matrices, the Bloch sphere",
               named("P", {m2({0, 1, 1, 0}), m2({0, -I, I, 0}), m2({1, 0, 0, -1})})});
  f.push_back({"pauli_pair", "sigma_x and sigma_z, the unit disc", named("P", {m2({0, 1, 1, 0}), m2({1, 0, 0, -1})})});
  f.push_back({"pauli_oval", "sigma_x and sigma_z direct sum a zero level, the unit disc",
               named("Q", {x01, m3({1, 0, 0, 0, -1, 0, 0, 0, 0})})});
  {
    OperatorList ops;
    ops.emplace_back(d001, "F51");
    ops.emplace_back(x01, "F53");
    ops.emplace_back(x01, "F53");
    f.push_back({"reducible", "(F51, F53, F53), linearly dependent", std::move(ops)});
  }
  {
    OperatorList ops;
    ops.emplace_back(d001, "F51");
    ops.emplace_back(x01, "F53");
    ops.emplace_back(y01, "Y01");
    f.push_back({"rotating_triangle", "the triangle L(F51, F53) rotated about its axis", std::move(ops)});
  }
  return f;
}

}  // namespace

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = build();
  return all;
}

const Fixture& fixture(const std::string& name) {
  for (const auto& f : fixtures())
    if (f.name == name) return f;
  throw InputError("unknown fixture '" + name + "'");
}

const Fixture& class_fixture(int k) {
  if (k < 1 || k > 8) throw InputError("class must be between 1 and 8, got " + std::to_string(k));
  return fixture("class" + std::to_string(k));
}

}  // namespace jnr
