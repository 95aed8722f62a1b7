#include "jnr/predicates.hpp"

#include <cmath>
#include <limits>

namespace jnr::geom {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon() * 0.5;  // unit roundoff
// Shewchuk's first-stage error bounds.
constexpr double kO2dBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kO3dBound = (7.0 + 56.0 * kEps) * kEps;

inline void two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  const double bv = x - a;
  const double av = x - bv;
  y = (a - av) + (b - bv);
}

inline void two_product(double a, double b, double& x, double& y) {
  x = a * b;
  y = std::fma(a, b, -x);
}

// e + b, zero-eliminating (Shewchuk GROW-EXPANSION).
std::vector<double> grow(const std::vector<double>& e, double b) {
  std::vector<double> h;
  h.reserve(e.size() + 1);
  double q = b;
  for (double ei : e) {
    double sum, err;
    two_sum(q, ei, sum, err);
    if (err != 0.0) h.push_back(err);
    q = sum;
  }
  if (q != 0.0 || h.empty()) h.push_back(q);
  if (h.size() == 1 && h[0] == 0.0) h.clear();
  return h;
}

}  // namespace

Expansion Expansion::difference(double a, double b) {
  Expansion r;
  double x, y;
  two_sum(a, -b, x, y);
  if (y != 0.0) r.terms_.push_back(y);
  if (x != 0.0) r.terms_.push_back(x);
  return r;
}

Expansion Expansion::operator+(const Expansion& o) const {
  Expansion r;
  r.terms_ = terms_;
  for (double t : o.terms_) r.terms_ = grow(r.terms_, t);
  return r;
}

Expansion Expansion::operator-() const {
  Expansion r = *this;
  for (double& t : r.terms_) t = -t;
  return r;
}

Expansion Expansion::operator*(double b) const {
  // Shewchuk SCALE-EXPANSION with zero elimination.
  Expansion r;
  if (terms_.empty() || b == 0.0) return r;
  double q, hh;
  two_product(terms_[0], b, q, hh);
  if (hh != 0.0) r.terms_.push_back(hh);
  for (std::size_t i = 1; i < terms_.size(); ++i) {
    double p1, p0;
    two_product(terms_[i], b, p1, p0);
    double sum, err;
    two_sum(q, p0, sum, err);
    if (err != 0.0) r.terms_.push_back(err);
    double s2, e2;
    two_sum(p1, sum, s2, e2);
    if (e2 != 0.0) r.terms_.push_back(e2);
    q = s2;
  }
  if (q != 0.0) r.terms_.push_back(q);
  return r;
}

Expansion Expansion::operator*(const Expansion& o) const {
  Expansion r;
  for (double t : o.terms_) r = r + (*this * t);
  return r;
}

double Expansion::estimate() const {
  double s = 0.0;
  for (double t : terms_) s += t;
  return s;
}

int orient3d(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c,
             const Eigen::Vector3d& d) {
  const double bx = b.x() - a.x(), by = b.y() - a.y(), bz = b.z() - a.z();
  const double cx = c.x() - a.x(), cy = c.y() - a.y(), cz = c.z() - a.z();
  const double dx = d.x() - a.x(), dy = d.y() - a.y(), dz = d.z() - a.z();

  const double t1 = by * cz, t2 = bz * cy;
  const double t3 = bz * cx, t4 = bx * cz;
  const double t5 = bx * cy, t6 = by * cx;
  const double det = dx * (t1 - t2) + dy * (t3 - t4) + dz * (t5 - t6);
  const double permanent = (std::abs(t1) + std::abs(t2)) * std::abs(dx) +
                           (std::abs(t3) + std::abs(t4)) * std::abs(dy) +
                           (std::abs(t5) + std::abs(t6)) * std::abs(dz);
  const double bound = kO3dBound * permanent;
  if (det > bound) return 1;
  if (-det > bound) return -1;

  using E = Expansion;
  const E ebx = E::difference(b.x(), a.x()), eby = E::difference(b.y(), a.y()),
          ebz = E::difference(b.z(), a.z());
  const E ecx = E::difference(c.x(), a.x()), ecy = E::difference(c.y(), a.y()),
          ecz = E::difference(c.z(), a.z());
  const E edx = E::difference(d.x(), a.x()), edy = E::difference(d.y(), a.y()),
          edz = E::difference(d.z(), a.z());
  const E exact = edx * (eby * ecz - ebz * ecy) + edy * (ebz * ecx - ebx * ecz) +
                  edz * (ebx * ecy - eby * ecx);
  return exact.sign();
}

int orient2d(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c) {
  const double l = (b.x() - a.x()) * (c.y() - a.y());
  const double r = (b.y() - a.y()) * (c.x() - a.x());
  const double det = l - r;
  const double bound = kO2dBound * (std::abs(l) + std::abs(r));
  if (det > bound) return 1;
  if (-det > bound) return -1;

  using E = Expansion;
  const E exact = E::difference(b.x(), a.x()) * E::difference(c.y(), a.y()) -
                  E::difference(b.y(), a.y()) * E::difference(c.x(), a.x());
  return exact.sign();
}

Eigen::Vector3d exact_cross(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c) {
  using E = Expansion;
  const E ux = E::difference(b.x(), a.x()), uy = E::difference(b.y(), a.y()),
          uz = E::difference(b.z(), a.z());
  const E vx = E::difference(c.x(), a.x()), vy = E::difference(c.y(), a.y()),
          vz = E::difference(c.z(), a.z());
  return {(uy * vz - uz * vy).estimate(), (uz * vx - ux * vz).estimate(),
          (ux * vy - uy * vx).estimate()};
}

}  // namespace jnr::geom
