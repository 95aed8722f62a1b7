#include "jnr/herm.hpp"

namespace jnr {

Spectrum eigh(const HermitianOperator& h) {
  return jacobi_eigh<double>(h.matrix(), 64, h.label());
}

double spectral_range(const HermitianOperator& f) {
  const Spectrum s = eigh(f);
  return s.values(s.values.size() - 1) - s.values(0);
}

double tolerance_scale(std::span<const HermitianOperator> ops) {
  double range = 0.0;
  for (const auto& f : ops) range = std::max(range, spectral_range(f));
  return 1.0 + range;
}

Eigen::Index common_dimension(std::span<const HermitianOperator> ops) {
  if (ops.empty()) throw InputError("empty operator list");
  const Eigen::Index d = ops.front().dim();
  for (const auto& f : ops) {
    if (f.dim() != d) {
      throw InputError("dimension mismatch: " + f.label() + " has dimension " +
                       std::to_string(f.dim()) + ", expected " + std::to_string(d));
    }
  }
  return d;
}

QuantumState QuantumState::pure(Vector psi) {
  if (psi.size() < 2) throw InputError("state dimension must be >= 2");
  const double n2 = psi.squaredNorm();
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > kTolerance) {
    throw InputError("pure state is not normalized (squared norm " + std::to_string(n2) + ")");
  }
  return QuantumState(std::move(psi));
}

QuantumState QuantumState::mixed(Matrix rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 2) throw InputError("density matrix must be square, d >= 2");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kTolerance) {
    throw InputError("density matrix is not Hermitian");
  }
  Matrix herm = (rho + rho.adjoint()) * 0.5;
  const double tr = herm.trace().real();
  if (std::abs(tr - 1.0) > kTolerance) {
    throw InputError("density matrix trace " + std::to_string(tr) + " differs from 1");
  }
  const Spectrum s = jacobi_eigh<double>(herm);
  if (s.values(0) < -kTolerance) {
    throw InputError("density matrix has negative eigenvalue " + std::to_string(s.values(0)));
  }
  return QuantumState(std::move(herm));
}

Eigen::Index QuantumState::dim() const {
  return std::visit([](const auto& x) { return x.rows(); }, data_);
}

const Vector& QuantumState::vector() const {
  if (!is_pure()) throw InputError("state is mixed; no state vector");
  return std::get<Vector>(data_);
}

Matrix QuantumState::density() const {
  if (is_pure()) {
    const Vector& v = std::get<Vector>(data_);
    return v * v.adjoint();
  }
  return std::get<Matrix>(data_);
}

double expectation(const HermitianOperator& f, const QuantumState& state) {
  if (f.dim() != state.dim()) {
    throw InputError("dimension mismatch: operator " + f.label() + " has dimension " +
                     std::to_string(f.dim()) + ", state has " + std::to_string(state.dim()));
  }
  if (state.is_pure()) return expectation_value(f.matrix(), state.vector());
  return (state.density() * f.matrix()).trace().real();
}

}  // namespace jnr
