#pragma once

// Prepare-and-measure simulation of a photonic qutrit: waveplate
// parameterised state preparation, measurement in the eigenbasis of an
// observable through a chain of two-mode unitaries, shot noise and the
// similarity between outcome distributions.

#include <array>
#include <cstdint>

#include <Eigen/Core>

#include "jnr/herm.hpp"

namespace jnr {

struct PrepAngles {
  double theta_a = 0.0;  ///< [0, pi/2]
  double theta_b = 0.0;  ///< [0, pi/2]
  double phi1 = 0.0;     ///< [0, 2 pi)
  double phi2 = 0.0;     ///< [0, 2 pi)
};

/// e^{i phi2} sin(tA) sin(tB) |0> + e^{i phi1} cos(tA) |1> - sin(tA) cos(tB) |2>.
Vector prepare_vector(const PrepAngles& a);

/// prepare_vector as a state; with `canonical_phase` the first nonzero
/// amplitude is made real positive.
QuantumState prepare_state(const PrepAngles& a, bool canonical_phase = false);

/// Angles reproducing psi up to a global phase. Free parameters (a zero
/// amplitude's phase, theta_b when sin(tA) = 0) are set to 0.
PrepAngles solve_prep_angles(const Vector& psi);

/// A 2x2 unitary acting on two of the three modes.
struct TwoModeBlock {
  int stage = 1;                    ///< 1: modes (0,1), 2: modes (0,2), 3: modes (1,2)
  std::array<int, 2> modes{0, 1};
  Eigen::Matrix2cd block = Eigen::Matrix2cd::Identity();

  /// The block embedded in a 3x3 identity.
  Matrix embed() const;
};

/// U = U3 U2 U1 with U1 on modes (0,1), U2 on (0,2), U3 on (1,2). Returns
/// {U1, U2, U3}. Throws InputError when U^H U deviates from I by more than
/// 1e-10 (Frobenius norm).
std::array<TwoModeBlock, 3> decompose_unitary(const Matrix& u);

struct MeasurementSetup {
  HermitianOperator observable;
  Eigen::Vector3d eigenvalues;  ///< ascending; detector j records eigenvalues(j)
  Matrix unitary;               ///< U_F, row j = conjugated eigenvector j
  std::array<TwoModeBlock, 3> blocks;
};

MeasurementSetup measurement_unitary(const HermitianOperator& f);

struct CountRecord {
  std::int64_t shots = 0;
  std::array<std::int64_t, 3> counts{0, 0, 0};
  Eigen::Vector3d probabilities = Eigen::Vector3d::Zero();  ///< n_j / shots, or exact when shots = 0
  double expectation = 0.0;                                 ///< sum_j p_j lambda_j
};

/// Exact outcome probabilities |<j|U_F|psi>|^2 (or the diagonal of
/// U_F rho U_F^H), mixed with the uniform distribution as v q + (1 - v) / 3.
Eigen::Vector3d outcome_probabilities(const QuantumState& state, const MeasurementSetup& setup,
                                      double visibility = 1.0);

/// Multinomial counts from `seed`; shots = 0 returns the exact probabilities.
CountRecord simulate_measurement(const QuantumState& state, const MeasurementSetup& setup, std::int64_t shots,
                                 std::uint64_t seed, double visibility = 1.0);

/// (sum_j sqrt(p_j q_j))^2. Both arguments must be nonnegative and sum to 1
/// within 1e-9.
double similarity(const Eigen::Ref<const Eigen::VectorXd>& p, const Eigen::Ref<const Eigen::VectorXd>& q);

enum class Waveplate { half, quarter };

/// Jones matrix of a wave plate with fast axis at `angle` from horizontal:
/// HWP(t) = [[cos 2t, sin 2t], [sin 2t, -cos 2t]],
/// QWP(t) = e^{-i pi/4} [[cos^2 t + i sin^2 t, (1 - i) sin t cos t], [(1 - i) sin t cos t, sin^2 t + i cos^2 t]].
Eigen::Matrix2cd jones_waveplate(Waveplate kind, double angle);

/// QWP(45 deg) HWP(phi / 4) QWP(45 deg): a relative phase between H and V.
Eigen::Matrix2cd qhq_phase(double phi);

}  // namespace jnr
