#pragma once

// Seeded sampling of states, unitaries and Hermitian matrices.
//
// Every routine takes either an explicit seed or an engine reference; there is
// no hidden global generator. Derived seeds come from a SplitMix64 mix so that
// (seed, stream) pairs give independent, reproducible engines.

#include <cstdint>
#include <random>

#include "jnr/herm.hpp"

namespace jnr {

using Engine = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Engine for substream `stream` of a user seed.
Engine make_engine(std::uint64_t seed, std::uint64_t stream = 0);

/// Vector of i.i.d. standard complex Gaussians (E|z|^2 = 1).
Vector complex_gaussian(Eigen::Index d, Engine& engine);

/// Haar-uniform unit vector in C^d.
Vector random_pure_vector(Eigen::Index d, Engine& engine);
QuantumState random_pure_state(Eigen::Index d, std::uint64_t seed);

/// rho = sum_k p_k |x_k><x_k| with Haar x_k and flat-Dirichlet weights p.
QuantumState random_mixed_state(Eigen::Index d, Eigen::Index rank, Engine& engine);

/// Haar-random unitary (QR of a Ginibre matrix with the R-diagonal phases removed).
Matrix random_unitary(Eigen::Index d, Engine& engine);

/// GUE-distributed Hermitian matrix.
HermitianOperator random_hermitian(Eigen::Index d, Engine& engine, std::string name = {});

}  // namespace jnr
