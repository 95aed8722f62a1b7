#include "jnr/random.hpp"

#include <cmath>

namespace jnr {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Engine make_engine(std::uint64_t seed, std::uint64_t stream) {
  return Engine(splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

Vector complex_gaussian(Eigen::Index d, Engine& engine) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const double re = normal(engine);
    const double im = normal(engine);
    v(i) = Complex(re, im);
  }
  return v;
}

Vector random_pure_vector(Eigen::Index d, Engine& engine) {
  Vector v = complex_gaussian(d, engine);
  double n = v.norm();
  while (n == 0.0) {
    v = complex_gaussian(d, engine);
    n = v.norm();
  }
  return v / n;
}

QuantumState random_pure_state(Eigen::Index d, std::uint64_t seed) {
  if (d < 2) throw InputError("random_pure_state requires d >= 2");
  Engine engine = make_engine(seed);
  return QuantumState::pure(random_pure_vector(d, engine));
}

QuantumState random_mixed_state(Eigen::Index d, Eigen::Index rank, Engine& engine) {
  if (d < 2 || rank < 1) throw InputError("random_mixed_state requires d >= 2 and rank >= 1");
  std::exponential_distribution<double> expo(1.0);
  Eigen::VectorXd w(rank);
  for (Eigen::Index k = 0; k < rank; ++k) w(k) = expo(engine);
  w /= w.sum();
  Matrix rho = Matrix::Zero(d, d);
  for (Eigen::Index k = 0; k < rank; ++k) {
    const Vector x = random_pure_vector(d, engine);
    rho.noalias() += w(k) * (x * x.adjoint());
  }
  rho = (rho + rho.adjoint()) * 0.5;
  rho /= rho.trace().real();
  return QuantumState::mixed(std::move(rho));
}

Matrix random_unitary(Eigen::Index d, Engine& engine) {
  Matrix z(d, d);
  for (Eigen::Index j = 0; j < d; ++j) z.col(j) = complex_gaussian(d, engine);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

HermitianOperator random_hermitian(Eigen::Index d, Engine& engine, std::string name) {
  Matrix g(d, d);
  for (Eigen::Index j = 0; j < d; ++j) g.col(j) = complex_gaussian(d, engine);
  return HermitianOperator(Matrix((g + g.adjoint()) * 0.5), std::move(name));
}

}  // namespace jnr
