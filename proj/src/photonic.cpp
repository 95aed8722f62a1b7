#include "jnr/photonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "jnr/random.hpp"

namespace jnr {

namespace {

constexpr double kZero = 1e-12;

double wrap_phase(double a) {
  a = std::fmod(a, 2.0 * std::numbers::pi);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  return a >= 2.0 * std::numbers::pi ? 0.0 : a;
}

}  // namespace

Vector prepare_vector(const PrepAngles& a) {
  for (double x : {a.theta_a, a.theta_b, a.phi1, a.phi2}) {
    if (!std::isfinite(x)) throw InputError("preparation angles must be finite");
  }
  Vector psi(3);
  psi(0) = std::polar(std::sin(a.theta_a) * std::sin(a.theta_b), a.phi2);
  psi(1) = std::polar(std::cos(a.theta_a), a.phi1);
  psi(2) = Complex(-std::sin(a.theta_a) * std::cos(a.theta_b), 0.0);
  return psi;
}

QuantumState prepare_state(const PrepAngles& a, bool canonical_phase) {
  Vector psi = prepare_vector(a);
  if (canonical_phase) detail::canonicalize_phase(psi, kZero);
  return QuantumState::pure(std::move(psi));
}

PrepAngles solve_prep_angles(const Vector& psi) {
  if (psi.size() != 3) throw InputError("preparation angles need a qutrit state");
  const double n = psi.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InputError("state must be nonzero and finite");
  const Vector v = psi / n;
  PrepAngles a;
  a.theta_a = std::acos(std::clamp(std::abs(v(1)), 0.0, 1.0));
  a.theta_b = std::atan2(std::abs(v(0)), std::abs(v(2)));
  if (std::abs(v(0)) <= kZero && std::abs(v(2)) <= kZero) a.theta_b = 0.0;
  // Global phase gamma so that the |2> amplitude is real and negative, or
  // failing that the |0> (then |1>) amplitude is real positive.
  Complex gamma(1.0, 0.0);
  if (std::abs(v(2)) > kZero) {
    gamma = -std::conj(v(2)) / std::abs(v(2));
  } else if (std::abs(v(0)) > kZero) {
    gamma = std::conj(v(0)) / std::abs(v(0));
  } else if (std::abs(v(1)) > kZero) {
    gamma = std::conj(v(1)) / std::abs(v(1));
  }
  a.phi2 = std::abs(v(0)) > kZero ? wrap_phase(std::arg(gamma * v(0))) : 0.0;
  a.phi1 = std::abs(v(1)) > kZero ? wrap_phase(std::arg(gamma * v(1))) : 0.0;
  return a;
}

Matrix TwoModeBlock::embed() const {
  Matrix m = Matrix::Identity(3, 3);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(modes[static_cast<std::size_t>(r)], modes[static_cast<std::size_t>(c)]) = block(r, c);
  return m;
}

std::array<TwoModeBlock, 3> decompose_unitary(const Matrix& u) {
  if (u.rows() != 3 || u.cols() != 3) throw InputError("decompose_unitary needs a 3x3 matrix");
  const double deviation = (u.adjoint() * u - Matrix::Identity(3, 3)).norm();
  if (!(deviation <= 1e-10)) {
    throw InputError("matrix is not unitary: |U^H U - I| = " + std::to_string(deviation));
  }
  std::array<TwoModeBlock, 3> out;
  out[0].stage = 1;
  out[0].modes = {0, 1};
  out[1].stage = 2;
  out[1].modes = {0, 2};
  out[2].stage = 3;
  out[2].modes = {1, 2};

  // U3 on modes (1,2) chosen so that (U3^H U)(1,2) = 0.
  const Complex x = u(1, 2), y = u(2, 2);
  const double r = std::hypot(std::abs(x), std::abs(y));
  Eigen::Matrix2cd w3 = Eigen::Matrix2cd::Identity();  // U3^H restricted
  if (r > 0.0) {
    const Complex alpha = y / r, beta = -x / r;
    w3 << alpha, beta, -std::conj(beta), std::conj(alpha);
  }
  out[2].block = w3.adjoint();
  const Matrix w = out[2].embed().adjoint() * u;

  // U2 on modes (0,2) whose second column is column 2 of W.
  const Complex q = w(0, 2), s = w(2, 2);
  const double m = std::hypot(std::abs(q), std::abs(s));
  out[1].block << std::conj(s) / m, q / m, -std::conj(q) / m, s / m;
  const Matrix u1 = out[1].embed().adjoint() * w;
  out[0].block = u1.topLeftCorner(2, 2);
  // Fold the residual phase of u1(2,2) (1 up to rounding) into U2.
  out[1].block.col(1) *= u1(2, 2);
  return out;
}

MeasurementSetup measurement_unitary(const HermitianOperator& f) {
  if (f.dim() != 3) throw InputError("measurement setup needs a 3x3 observable, got d=" + std::to_string(f.dim()));
  const Spectrum s = eigh(f);
  MeasurementSetup m;
  m.observable = f;
  m.eigenvalues = s.values;
  m.unitary = s.vectors.adjoint();
  m.blocks = decompose_unitary(m.unitary);
  return m;
}

Eigen::Vector3d outcome_probabilities(const QuantumState& state, const MeasurementSetup& setup, double visibility) {
  if (state.dim() != 3) throw InputError("state dimension does not match the qutrit measurement");
  if (!(visibility >= 0.0 && visibility <= 1.0)) throw InputError("visibility must lie in [0, 1]");
  Eigen::Vector3d q;
  if (state.is_pure()) {
    q = (setup.unitary * state.vector()).cwiseAbs2();
  } else {
    q = (setup.unitary * state.density() * setup.unitary.adjoint()).diagonal().real();
  }
  q = q.cwiseMax(0.0);
  q /= q.sum();
  return visibility * q + Eigen::Vector3d::Constant((1.0 - visibility) / 3.0);
}

CountRecord simulate_measurement(const QuantumState& state, const MeasurementSetup& setup, std::int64_t shots,
                                 std::uint64_t seed, double visibility) {
  if (shots < 0) throw InputError("shots must be nonnegative");
  const Eigen::Vector3d q = outcome_probabilities(state, setup, visibility);
  CountRecord rec;
  rec.shots = shots;
  if (shots == 0) {
    rec.probabilities = q;
  } else {
    Engine engine = make_engine(seed);
    std::int64_t left = shots;
    double mass = 1.0;
    for (int j = 0; j < 2; ++j) {
      const double p = mass > 0.0 ? std::clamp(q(j) / mass, 0.0, 1.0) : 0.0;
      std::binomial_distribution<std::int64_t> draw(left, p);
      rec.counts[static_cast<std::size_t>(j)] = draw(engine);
      left -= rec.counts[static_cast<std::size_t>(j)];
      mass -= q(j);
    }
    rec.counts[2] = left;
    for (int j = 0; j < 3; ++j) {
      rec.probabilities(j) = static_cast<double>(rec.counts[static_cast<std::size_t>(j)]) / static_cast<double>(shots);
    }
  }
  rec.expectation = rec.probabilities.dot(setup.eigenvalues);
  return rec;
}

double similarity(const Eigen::Ref<const Eigen::VectorXd>& p, const Eigen::Ref<const Eigen::VectorXd>& q) {
  if (p.size() != q.size() || p.size() == 0) throw InputError("distributions must have equal, nonzero length");
  for (const auto* v : {&p, &q}) {
    if (!v->allFinite() || (v->array() < 0.0).any()) throw InputError("probabilities must be finite and nonnegative");
    if (std::abs(v->sum() - 1.0) > 1e-9) {
      throw InputError("probabilities sum to " + std::to_string(v->sum()) + ", not 1");
    }
  }
  const double overlap = (p.array() * q.array()).sqrt().sum();
  return std::min(1.0, overlap * overlap);
}

Eigen::Matrix2cd jones_waveplate(Waveplate kind, double angle) {
  Eigen::Matrix2cd m;
  if (kind == Waveplate::half) {
    const double c = std::cos(2.0 * angle), s = std::sin(2.0 * angle);
    m << c, s, s, -c;
    return m;
  }
  const double c = std::cos(angle), s = std::sin(angle);
  const Complex i(0.0, 1.0);
  m << c * c + i * s * s, (1.0 - i) * s * c, (1.0 - i) * s * c, s * s + i * c * c;
  return std::polar(1.0, -std::numbers::pi / 4.0) * m;
}

Eigen::Matrix2cd qhq_phase(double phi) {
  const Eigen::Matrix2cd q = jones_waveplate(Waveplate::quarter, std::numbers::pi / 4.0);
  return q * jones_waveplate(Waveplate::half, phi / 4.0) * q;
}

}  // namespace jnr
