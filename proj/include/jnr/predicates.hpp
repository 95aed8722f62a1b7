#pragma once

// Adaptive-precision geometric predicates.
//
// A floating-point filter answers most queries; when the filter cannot certify
// the sign, the determinant is re-evaluated exactly with non-overlapping
// floating-point expansions (error-free sums and FMA products).

#include <vector>

#include <Eigen/Core>

namespace jnr::geom {

/// Exact multiprecision value stored as a non-overlapping expansion, ordered
/// by increasing magnitude. Only what the predicates need is provided.
class Expansion {
 public:
  Expansion() = default;
  explicit Expansion(double x) {
    if (x != 0.0) terms_.push_back(x);
  }
  static Expansion difference(double a, double b);

  Expansion operator+(const Expansion& o) const;
  Expansion operator-() const;
  Expansion operator-(const Expansion& o) const { return *this + (-o); }
  Expansion operator*(const Expansion& o) const;
  Expansion operator*(double b) const;

  int sign() const { return terms_.empty() ? 0 : (terms_.back() > 0.0 ? 1 : -1); }
  /// Nearly correctly rounded double approximation.
  double estimate() const;
  const std::vector<double>& terms() const { return terms_; }

 private:
  std::vector<double> terms_;
};

/// Sign of det[b - a, c - a, d - a], i.e. of ((b - a) x (c - a)) . (d - a).
/// Positive when d lies on the side the normal (b - a) x (c - a) points to.
int orient3d(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c,
             const Eigen::Vector3d& d);

/// Sign of (b - a) x (c - a); positive for a counter-clockwise turn.
int orient2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c);

/// (b - a) x (c - a) evaluated exactly and rounded once per component.
Eigen::Vector3d exact_cross(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c);

}  // namespace jnr::geom
