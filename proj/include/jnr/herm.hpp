#pragma once

// Dense complex Hermitian linear algebra for small dimensions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "jnr/errors.hpp"

namespace jnr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

/// A validated d x d complex Hermitian matrix (d >= 2).
///
/// Input is accepted when every pair satisfies |a_ij - conj(a_ji)| <= 1e-12;
/// the stored matrix is the exact Hermitian part (A + A^H) / 2, so later
/// consumers may rely on exact symmetry.
class HermitianOperator {
 public:
  static constexpr double kTolerance = 1e-12;

  HermitianOperator() = default;

  template <typename Derived>
  explicit HermitianOperator(const Eigen::MatrixBase<Derived>& m, std::string name = {})
      : name_(std::move(name)) {
    if (m.rows() != m.cols()) {
      throw InputError("operator " + label() + " is not square");
    }
    if (m.rows() < 2) {
      throw InputError("operator " + label() + " must have dimension >= 2");
    }
    const Matrix a = m.template cast<Complex>();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      for (Eigen::Index j = i; j < a.cols(); ++j) {
        if (std::abs(a(i, j) - std::conj(a(j, i))) > kTolerance) {
          throw InputError("operator " + label() + " is not Hermitian at entry (" +
                           std::to_string(i) + "," + std::to_string(j) + ")");
        }
      }
    }
    matrix_ = (a + a.adjoint()) * 0.5;
    for (Eigen::Index i = 0; i < matrix_.rows(); ++i) {
      matrix_(i, i) = Complex(matrix_(i, i).real(), 0.0);
    }
  }

  const Matrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const std::string& name() const { return name_; }
  std::string label() const { return name_.empty() ? std::string("<unnamed>") : name_; }

 private:
  Matrix matrix_;
  std::string name_;
};

using OperatorList = std::vector<HermitianOperator>;

template <typename Real>
struct BasicSpectrum {
  RealVector<Real> values;          ///< ascending
  ComplexMatrix<Real> vectors;      ///< column k pairs with values[k]
};

using Spectrum = BasicSpectrum<double>;

namespace detail {

/// Multiply v by a unit phase so that its first component with modulus above
/// `floor` becomes real and positive.
template <typename Real, typename Derived>
void canonicalize_phase(Eigen::MatrixBase<Derived>& v, Real floor) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Real mag = std::abs(v(i));
    if (mag > floor) {
      const std::complex<Real> phase = std::conj(v(i)) / mag;
      v *= phase;
      v(i) = std::complex<Real>(mag, Real(0));
      return;
    }
  }
}

template <typename Real>
bool lexicographically_greater(const ComplexMatrix<Real>& m, Eigen::Index a, Eigen::Index b) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const auto x = m(i, a);
    const auto y = m(i, b);
    if (x.real() != y.real()) return x.real() > y.real();
    if (x.imag() != y.imag()) return x.imag() > y.imag();
  }
  return false;
}

}  // namespace detail

/// Cyclic Jacobi eigensolver for a complex Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot a_pq and then applies a
/// real Givens rotation, so the accumulated eigenvector matrix stays unitary
/// to rounding. Output is deterministic: eigenpairs ascend, each eigenvector's
/// first non-negligible component is real positive, and eigenvectors of
/// (numerically) tied eigenvalues are ordered lexicographically.
template <typename Real>
BasicSpectrum<Real> jacobi_eigh(ComplexMatrix<Real> a, int max_sweeps = 64,
                                const std::string& operator_name = {}) {
  using C = std::complex<Real>;
  const Eigen::Index n = a.rows();
  ComplexMatrix<Real> v = ComplexMatrix<Real>::Identity(n, n);
  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real norm = a.norm();

  auto off_norm2 = [&] {
    Real s = 0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) s += std::norm(a(p, q));
    return s;
  };

  const Real target = eps * eps * norm * norm * Real(1e-4);
  bool converged = norm == Real(0) || off_norm2() <= target;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const C apq = a(p, q);
        const Real g = std::abs(apq);
        if (g == Real(0)) continue;
        const Real app = a(p, p).real();
        const Real aqq = a(q, q).real();
        const C phase = apq / g;  // e^{i alpha}
        const Real tau = (aqq - app) / (Real(2) * g);
        const Real t = (tau >= 0 ? Real(1) : Real(-1)) / (std::abs(tau) + std::sqrt(Real(1) + tau * tau));
        const Real c = Real(1) / std::sqrt(Real(1) + t * t);
        const Real s = t * c;
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]] restricted to (p, q).
        const C jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
        for (Eigen::Index k = 0; k < n; ++k) {  // A <- A J
          const C akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {  // A <- J^H A
          const C apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = a(q, p) = C(0);
        a(p, p) = C(a(p, p).real(), 0);
        a(q, q) = C(a(q, q).real(), 0);
        for (Eigen::Index k = 0; k < n; ++k) {  // V <- V J
          const C vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
    converged = off_norm2() <= target;
  }
  if (!converged) {
    throw NumericalError("Jacobi eigensolver did not converge for operator " +
                         (operator_name.empty() ? std::string("<unnamed>") : operator_name));
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x).real() < a(y, y).real(); });

  BasicSpectrum<Real> out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = a(order[k], order[k]).real();
    auto col = out.vectors.col(k);
    col = v.col(order[k]);
    col.normalize();
    detail::canonicalize_phase<Real>(col, Real(1e-10) * std::sqrt(Real(1) / Real(n)));
  }

  // Tie groups: reorder eigenvectors lexicographically, keep values ascending.
  const Real range = out.values(n - 1) - out.values(0);
  const Real tie = Real(8) * eps * (Real(1) + std::abs(range) + out.values.cwiseAbs().maxCoeff());
  for (Eigen::Index start = 0; start < n;) {
    Eigen::Index stop = start + 1;
    while (stop < n && out.values(stop) - out.values(stop - 1) <= tie) ++stop;
    if (stop - start > 1) {
      std::vector<Eigen::Index> idx(static_cast<std::size_t>(stop - start));
      std::iota(idx.begin(), idx.end(), start);
      const ComplexMatrix<Real> block = out.vectors.middleCols(start, stop - start);
      std::sort(idx.begin(), idx.end(), [&](Eigen::Index x, Eigen::Index y) {
        return detail::lexicographically_greater<Real>(out.vectors, x, y);
      });
      for (Eigen::Index k = 0; k < stop - start; ++k) {
        out.vectors.col(start + k) = block.col(idx[static_cast<std::size_t>(k)] - start);
      }
    }
    start = stop;
  }
  return out;
}

/// Eigendecomposition of a validated Hermitian operator.
Spectrum eigh(const HermitianOperator& h);

/// lambda_max - lambda_min.
double spectral_range(const HermitianOperator& f);

/// 1 + max spectral range over the list; every absolute tolerance in the
/// library is multiplied by this factor.
double tolerance_scale(std::span<const HermitianOperator> ops);

/// sum_i coefficients[i] * ops[i]; all operators must share one dimension.
template <typename Derived>
HermitianOperator linear_combination(std::span<const HermitianOperator> ops,
                                     const Eigen::MatrixBase<Derived>& coefficients) {
  if (ops.empty()) throw InputError("empty operator list");
  if (static_cast<Eigen::Index>(ops.size()) > coefficients.size()) {
    throw InputError("coefficient vector shorter than operator list");
  }
  const Eigen::Index d = ops.front().dim();
  Matrix acc = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (ops[i].dim() != d) {
      throw InputError("dimension mismatch: " + ops[i].label() + " has dimension " +
                       std::to_string(ops[i].dim()) + ", expected " + std::to_string(d));
    }
    acc.noalias() += double(coefficients(static_cast<Eigen::Index>(i))) * ops[i].matrix();
  }
  return HermitianOperator(acc);
}

/// Throws InputError unless all operators share a dimension; returns it.
Eigen::Index common_dimension(std::span<const HermitianOperator> ops);

/// A pure (unit vector) or mixed (unit-trace PSD matrix) quantum state.
class QuantumState {
 public:
  static constexpr double kTolerance = 1e-12;

  static QuantumState pure(Vector psi);
  static QuantumState mixed(Matrix rho);

  bool is_pure() const { return std::holds_alternative<Vector>(data_); }
  Eigen::Index dim() const;
  /// Only valid for pure states.
  const Vector& vector() const;
  /// Density matrix; |psi><psi| for pure states.
  Matrix density() const;

 private:
  explicit QuantumState(std::variant<Vector, Matrix> data) : data_(std::move(data)) {}
  std::variant<Vector, Matrix> data_;
};

/// <psi|F|psi> or Tr(rho F). The imaginary rounding residue is discarded.
double expectation(const HermitianOperator& f, const QuantumState& state);

/// Unchecked fast path for <psi|F|psi>.
template <typename DerivedF, typename DerivedV>
double expectation_value(const Eigen::MatrixBase<DerivedF>& f, const Eigen::MatrixBase<DerivedV>& psi) {
  return psi.dot(f * psi).real();
}

}  // namespace jnr
