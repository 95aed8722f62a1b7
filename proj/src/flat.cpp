#include "jnr/flat.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include "jnr/parallel.hpp"

namespace jnr {

namespace {

Matrix hamiltonian(std::span<const HermitianOperator> ops, const Eigen::Vector3d& h) {
  Matrix m = h(0) * ops[0].matrix();
  for (std::size_t i = 1; i < ops.size(); ++i) m.noalias() += h(static_cast<Eigen::Index>(i)) * ops[i].matrix();
  return m;
}

Spectrum spectrum_at(std::span<const HermitianOperator> ops, const Eigen::Vector3d& h) {
  return jacobi_eigh<double>(hamiltonian(ops, h));
}

double gap_at(std::span<const HermitianOperator> ops, const Eigen::Vector3d& h) {
  const Spectrum s = spectrum_at(ops, h);
  return std::max(0.0, s.values(1) - s.values(0));
}

/// Orthonormal tangent frame at a unit vector; x maps to normalize(origin + E x).
struct Chart {
  Eigen::Vector3d origin;
  Eigen::Matrix<double, 3, 2> frame;

  explicit Chart(const Eigen::Vector3d& h) : origin(h.normalized()) {
    Eigen::Index axis = 0;
    origin.cwiseAbs().minCoeff(&axis);
    const Eigen::Vector3d a = Eigen::Vector3d::Unit(axis);
    const Eigen::Vector3d e1 = (a - a.dot(origin) * origin).normalized();
    frame.col(0) = e1;
    frame.col(1) = origin.cross(e1);
  }
  Eigen::Vector3d at(const Eigen::Vector2d& x) const { return (origin + frame * x).normalized(); }
};

/// Pauli coordinates (identity, x, y, z) of a 2x2 Hermitian matrix.
Eigen::Vector4d pauli_coordinates(const Matrix& g) {
  const Complex b = g(0, 1);
  return {0.5 * (g(0, 0).real() + g(1, 1).real()), b.real(), -b.imag(), 0.5 * (g(0, 0).real() - g(1, 1).real())};
}

struct Simplex {
  Eigen::Vector2d x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
  double diameter = 0.0;
};

Simplex nelder_mead(const std::function<double(const Eigen::Vector2d&)>& f, double step, int max_iterations,
                    double tolerance) {
  std::array<Eigen::Vector2d, 3> p = {Eigen::Vector2d(0, 0), Eigen::Vector2d(step, 0), Eigen::Vector2d(0, step)};
  std::array<double, 3> v = {f(p[0]), f(p[1]), f(p[2])};
  Simplex out;
  auto order = [&] {
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        if (v[b] < v[a]) {
          std::swap(v[a], v[b]);
          std::swap(p[a], p[b]);
        }
  };
  auto diameter = [&] { return std::max((p[1] - p[0]).norm(), (p[2] - p[0]).norm()); };
  int it = 0;
  for (; it < max_iterations; ++it) {
    order();
    if (diameter() < tolerance) {
      out.converged = true;
      break;
    }
    const Eigen::Vector2d c = 0.5 * (p[0] + p[1]);
    const Eigen::Vector2d xr = c + (c - p[2]);
    const double fr = f(xr);
    if (fr < v[0]) {
      const Eigen::Vector2d xe = c + 2.0 * (c - p[2]);
      const double fe = f(xe);
      if (fe < fr) {
        p[2] = xe;
        v[2] = fe;
      } else {
        p[2] = xr;
        v[2] = fr;
      }
      continue;
    }
    if (fr < v[1]) {
      p[2] = xr;
      v[2] = fr;
      continue;
    }
    const bool outside = fr < v[2];
    const Eigen::Vector2d xc = outside ? Eigen::Vector2d(c + 0.5 * (xr - c)) : Eigen::Vector2d(c + 0.5 * (p[2] - c));
    const double fc = f(xc);
    if (outside ? fc <= fr : fc < v[2]) {
      p[2] = xc;
      v[2] = fc;
      continue;
    }
    for (int k = 1; k < 3; ++k) {
      p[k] = p[0] + 0.5 * (p[k] - p[0]);
      v[k] = f(p[k]);
    }
  }
  order();
  out.x = p[0];
  out.f = v[0];
  out.iterations = it;
  out.diameter = diameter();
  return out;
}

/// Golden-section minimisation of g on [lo, hi]; returns the best abscissa seen.
double golden_section(const std::function<double(double)>& g, double lo, double hi, int iterations, double& best) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = g(c), fd = g(d);
  double xbest = 0.0;
  best = g(0.0);
  auto note = [&](double x, double fx) {
    if (fx < best) {
      best = fx;
      xbest = x;
    }
  };
  note(c, fc);
  note(d, fd);
  for (int k = 0; k < iterations && b - a > 0.0; ++k) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = g(c);
      note(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = g(d);
      note(d, fd);
    }
  }
  return xbest;
}

/// First-order model of the degeneracy at h: the traceless part of
/// X^H H(h + dh) X is t + B dh for tangent steps dh.
struct LinearModel {
  Chart chart;
  Eigen::Matrix<double, 3, 2> b;
  Eigen::Vector3d t;
  Eigen::Vector2d singular;
  Eigen::Matrix2d right;
};

LinearModel linear_model(std::span<const HermitianOperator> ops, const Eigen::Vector3d& h) {
  LinearModel m{Chart(h), {}, {}, {}, {}};
  const Spectrum s = spectrum_at(ops, h);
  const Matrix x = s.vectors.leftCols(2);
  Eigen::Matrix3d a = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    a.col(static_cast<Eigen::Index>(i)) = pauli_coordinates(x.adjoint() * ops[i].matrix() * x).tail<3>();
  }
  m.b = a * m.chart.frame;
  m.t = a * m.chart.origin;
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> svd(m.b, Eigen::ComputeFullV);
  m.singular = svd.singularValues();
  m.right = svd.matrixV();
  return m;
}

/// Newton steps on the stiff directions of the linear model; directions with
/// singular value below 1e-3 of the largest are left alone.
Eigen::Vector3d newton_project(std::span<const HermitianOperator> ops, Eigen::Vector3d h, double& gap,
                               double stiff_floor) {
  for (int k = 0; k < 3; ++k) {
    const LinearModel m = linear_model(ops, h);
    if (m.singular(0) <= stiff_floor) break;
    Eigen::Vector2d delta = Eigen::Vector2d::Zero();
    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 2>> svd(m.b, Eigen::ComputeFullU | Eigen::ComputeFullV);
    for (int j = 0; j < 2; ++j) {
      if (m.singular(j) < 1e-3 * m.singular(0)) continue;
      delta -= svd.matrixV().col(j) * (svd.matrixU().col(j).dot(m.t) / m.singular(j));
    }
    if (!delta.allFinite() || delta.norm() > 0.1) break;
    const Eigen::Vector3d hn = m.chart.at(delta);
    const double gn = gap_at(ops, hn);
    if (!(gn < gap)) break;
    h = hn;
    gap = gn;
  }
  return h;
}

/// Local polish once the gap is small. Stiff directions (where the gap grows
/// linearly) are solved by Newton steps on the first-order model; along a
/// remaining soft direction the gap is minimised by golden section with every
/// trial point re-projected onto the stiff solution, which follows curved
/// valleys. With no stiff direction both chart axes are searched directly.
Eigen::Vector3d polish(std::span<const HermitianOperator> ops, Eigen::Vector3d h, double& gap, double width,
                       double scale) {
  const double stiff_floor = 1e-6 * scale;
  for (int round = 0; round < 8; ++round) {
    const double before = gap;
    h = newton_project(ops, h, gap, stiff_floor);
    const LinearModel m = linear_model(ops, h);
    std::vector<Eigen::Vector2d> soft;
    if (m.singular(0) <= stiff_floor) {
      soft = {Eigen::Vector2d::UnitX(), Eigen::Vector2d::UnitY()};
    } else if (m.singular(1) < 1e-3 * m.singular(0)) {
      soft = {m.right.col(1)};
    }
    const bool project = soft.size() == 1;
    double moved = 0.0;
    for (const auto& dir : soft) {
      const Chart local(h);
      auto trial = [&](double u, double& g) {
        Eigen::Vector3d p = local.at(u * dir);
        g = gap_at(ops, p);
        if (project) p = newton_project(ops, p, g, stiff_floor);
        return p;
      };
      double best = gap;
      const double u = golden_section(
          [&](double v) {
            double g = 0.0;
            trial(v, g);
            return g;
          },
          -width, width, 90, best);
      if (best < gap) {
        double g = 0.0;
        const Eigen::Vector3d p = trial(u, g);
        if (g < gap) {
          h = p;
          gap = g;
          moved = std::max(moved, std::abs(u));
        }
      }
    }
    if (!(gap < before)) break;
    width = std::max(1e-9, std::min(width, 4.0 * moved + 1e-9));
  }
  return h;
}

struct Refined {
  Direction start;
  Refinement result;
};

}  // namespace

std::vector<Direction> gap_candidates(const Eigen::MatrixXd& gap, double promote) {
  const auto rows = static_cast<int>(gap.rows());
  const auto cols = static_cast<int>(gap.cols());
  const auto grid = angle_grid(rows, cols);
  std::vector<Direction> out;
  auto at = [&](int i, int j) { return gap(i, (j % cols + cols) % cols); };
  for (int i = 0; i < rows; ++i) {
    const bool pole = i == 0 || i == rows - 1;
    for (int j = 0; j < cols; ++j) {
      if (pole && j > 0) break;
      const double g = at(i, j);
      std::vector<double> nb;
      if (pole) {
        const int ring = i == 0 ? 1 : rows - 2;
        for (int k = 0; k < cols; ++k) nb.push_back(at(ring, k));
      } else {
        for (int di = -1; di <= 1; ++di) {
          const int r = i + di;
          if (r == 0 || r == rows - 1) {
            nb.push_back(at(r, 0));
            continue;
          }
          for (int dj = -1; dj <= 1; ++dj) {
            if (di != 0 || dj != 0) nb.push_back(at(r, j + dj));
          }
        }
      }
      // A plateau (every neighbour within rounding of g) is not a minimum.
      const auto [lo, hi] = std::minmax_element(nb.begin(), nb.end());
      const bool minimum = g <= *lo && *hi > g + 1e-10 * promote;
      if (minimum || g < promote) out.push_back(grid[static_cast<std::size_t>(i) * cols + j]);
    }
  }
  return out;
}

namespace {

std::vector<Refined> refine_all(std::span<const HermitianOperator> ops, std::span<const Direction> candidates,
                                double step, const FlatOptions& opt, double scale) {
  std::vector<Refined> out(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t k) {
    out[k].start = candidates[k];
    out[k].result = refine_degeneracy(ops, candidates[k], step, opt, scale);
  });
  return out;
}

DegenerateSearch assemble(std::span<const HermitianOperator> ops, const std::vector<Refined>& refined, double tau,
                          double scale, const FlatOptions& opt) {
  DegenerateSearch out;
  out.tau = tau;
  out.scale = scale;
  std::vector<const Refinement*> accepted;
  for (const auto& r : refined) {
    if (r.result.gap < tau) {
      accepted.push_back(&r.result);
    } else if (!r.result.converged) {
      out.warnings.push_back({r.start, r.result.direction, r.result.gap, r.result.iterations,
                              "refinement reached the iteration cap above the degeneracy threshold"});
    }
  }
  std::stable_sort(accepted.begin(), accepted.end(), [](const Refinement* a, const Refinement* b) {
    if (a->gap != b->gap) return a->gap < b->gap;
    if (a->direction.theta != b->direction.theta) return a->direction.theta < b->direction.theta;
    return a->direction.phi < b->direction.phi;
  });
  std::vector<Direction> kept;
  for (const Refinement* r : accepted) {
    const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const Direction& d) {
      return angular_distance(d, r->direction) < opt.merge_radius;
    });
    if (!duplicate) kept.push_back(r->direction);
  }
  std::sort(kept.begin(), kept.end(), [](const Direction& a, const Direction& b) {
    if (a.theta != b.theta) return a.theta < b.theta;
    return a.phi < b.phi;
  });
  for (const auto& dir : kept) {
    const Spectrum s = spectrum_at(ops, dir.h);
    DegenerateDirection d;
    d.direction = dir;
    d.refined_gap = std::max(0.0, s.values(1) - s.values(0));
    d.basis = s.vectors.leftCols(2);
    d.energy = s.values(0);
    out.directions.push_back(std::move(d));
  }
  return out;
}

struct GridScan {
  std::vector<Direction> candidates;
  double min_gap = 0.0;
  double step = 0.0;
  double scale = 1.0;
};

GridScan scan_grid(std::span<const HermitianOperator> ops, const FlatOptions& opt) {
  if (ops.size() != 3) throw InputError("degenerate-direction search needs exactly three operators");
  common_dimension(ops);
  GridScan scan;
  scan.scale = tolerance_scale(ops);
  const auto grid = angle_grid(opt.theta_res, opt.phi_res);
  Eigen::MatrixXd gaps(opt.theta_res, opt.phi_res);
  parallel_for(grid.size(), [&](std::size_t k) {
    gaps(static_cast<Eigen::Index>(k) / opt.phi_res, static_cast<Eigen::Index>(k) % opt.phi_res) = gap_at(ops, grid[k].h);
  });
  scan.min_gap = gaps.minCoeff();
  scan.candidates = gap_candidates(gaps, opt.promotion_factor * scan.scale);
  scan.step = 0.5 * std::numbers::pi / (opt.theta_res - 1);
  return scan;
}

}  // namespace

const char* to_string(FlatKind kind) {
  switch (kind) {
    case FlatKind::point: return "point";
    case FlatKind::segment: return "segment";
    case FlatKind::ellipse: return "ellipse";
  }
  return "point";
}

double gap_function(std::span<const HermitianOperator> ops, const Direction& dir) {
  if (ops.size() < 2 || ops.size() > 3) throw InputError("gap function needs 2 or 3 operators");
  common_dimension(ops);
  return gap_at(ops, dir.h);
}

Refinement refine_degeneracy(std::span<const HermitianOperator> ops, const Direction& start, double step,
                             const FlatOptions& opt, double scale) {
  const Chart chart(start.h);
  const Simplex nm = nelder_mead([&](const Eigen::Vector2d& x) { return gap_at(ops, chart.at(x)); }, step,
                                 opt.max_iterations, opt.simplex_tolerance);
  Eigen::Vector3d h = chart.at(nm.x);
  double gap = nm.f;
  if (gap < opt.promotion_factor * scale) {
    h = polish(ops, h, gap, std::max(1e-6, std::min(step, 10.0 * nm.diameter)), scale);
  }
  Refinement r;
  r.direction = Direction::from_vector(h);
  r.gap = gap;
  r.iterations = nm.iterations;
  r.converged = nm.converged;
  return r;
}

DegenerateSearch refine_candidates(std::span<const HermitianOperator> ops, std::span<const Direction> candidates,
                                   double step, const FlatOptions& opt) {
  common_dimension(ops);
  const double scale = tolerance_scale(ops);
  return assemble(ops, refine_all(ops, candidates, step, opt, scale), opt.tau_factor * scale, scale, opt);
}

DegenerateSearch find_degenerate_directions(std::span<const HermitianOperator> ops, const FlatOptions& opt) {
  const GridScan scan = scan_grid(ops, opt);
  DegenerateSearch out = assemble(ops, refine_all(ops, scan.candidates, scan.step, opt, scan.scale),
                                  opt.tau_factor * scan.scale, scan.scale, opt);
  out.min_grid_gap = scan.min_gap;
  return out;
}

std::vector<Matrix> compress(std::span<const HermitianOperator> ops, const Matrix& basis) {
  std::vector<Matrix> out;
  out.reserve(ops.size());
  for (const auto& f : ops) {
    Matrix g = basis.adjoint() * f.matrix() * basis;
    out.push_back(0.5 * (g + g.adjoint()));
  }
  return out;
}

int span_dim(std::span<const Matrix> compressed, double rank_tolerance) {
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(compressed.size()) + 1, 4);
  rows.row(0) << 1.0, 0.0, 0.0, 0.0;
  for (std::size_t i = 0; i < compressed.size(); ++i) {
    rows.row(static_cast<Eigen::Index>(i) + 1) = pauli_coordinates(compressed[i]).transpose();
  }
  const Eigen::MatrixXd gram = rows * rows.transpose();
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(gram).singularValues();
  const double cut = rank_tolerance * sv(0);
  return static_cast<int>((sv.array() > cut).count());
}

FlatPortion make_flat(std::span<const HermitianOperator> ops, const DegenerateDirection& at, double rank_tolerance) {
  FlatPortion flat;
  flat.at = at;
  flat.compressed = compress(ops, at.basis);
  flat.dim_span = span_dim(flat.compressed, rank_tolerance);
  flat.kind = flat.dim_span >= 3 ? FlatKind::ellipse : flat.dim_span == 2 ? FlatKind::segment : FlatKind::point;
  return flat;
}

Eigen::VectorXd flat_point(const FlatPortion& flat, const Eigen::Vector2cd& c) {
  const double n2 = c.squaredNorm();
  if (!(n2 > 0.0)) throw InputError("flat_point needs a nonzero coefficient vector");
  Eigen::VectorXd p(static_cast<Eigen::Index>(flat.compressed.size()));
  for (std::size_t i = 0; i < flat.compressed.size(); ++i) {
    p(static_cast<Eigen::Index>(i)) = c.dot(flat.compressed[i] * c).real() / n2;
  }
  return p;
}

Eigen::MatrixXd flat_rim(const FlatPortion& flat, int count) {
  const auto n = static_cast<Eigen::Index>(flat.compressed.size());
  Eigen::VectorXd centre(n);
  Eigen::MatrixXd a(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Vector4d p = pauli_coordinates(flat.compressed[static_cast<std::size_t>(i)]);
    centre(i) = p(0);
    a.row(i) = p.tail<3>().transpose();
  }
  if (flat.kind == FlatKind::point || count < 2) return centre;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const Eigen::Vector3d v1 = svd.matrixV().col(0);
  const Eigen::Vector3d v2 = svd.matrixV().col(1);
  Eigen::MatrixXd out(n, count);
  for (int k = 0; k < count; ++k) {
    Eigen::Vector3d r;
    if (flat.kind == FlatKind::ellipse) {
      const double t = 2.0 * std::numbers::pi * k / count;
      r = std::cos(t) * v1 + std::sin(t) * v2;
    } else {
      r = std::cos(std::numbers::pi * k / (count - 1)) * v1;
    }
    out.col(k) = centre + a * r;
  }
  return out;
}

std::string ClassLabel::class_name() const {
  return (s_infinite ? std::string("s_inf_") : "s" + std::to_string(s)) + "e" + std::to_string(e);
}

const char* to_string(PlanarClass c) {
  switch (c) {
    case PlanarClass::oval: return "oval";
    case PlanarClass::flat_portion: return "flat_portion";
    case PlanarClass::ellipse_plus_point: return "ellipse_plus_point";
    case PlanarClass::triangle: return "triangle";
    case PlanarClass::unclassified: return "unclassified";
  }
  return "unclassified";
}

int operator_span_rank(std::span<const HermitianOperator> ops) {
  const Eigen::Index d = common_dimension(ops);
  const auto m = static_cast<Eigen::Index>(ops.size()) + 1;
  Eigen::MatrixXcd vecs(d * d, m);
  for (std::size_t i = 0; i < ops.size(); ++i) {
    vecs.col(static_cast<Eigen::Index>(i)) = ops[i].matrix().reshaped();
  }
  vecs.col(m - 1) = Matrix::Identity(d, d).reshaped();
  const Eigen::MatrixXd gram = (vecs.adjoint() * vecs).real();
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(gram).singularValues();
  return static_cast<int>((sv.array() > 1e-12 * sv(0)).count());
}

namespace {

std::optional<DegenerateCurve> detect_curve(const std::vector<FlatPortion>& flats, double link, const FlatOptions& opt,
                                            std::vector<bool>& on_curve) {
  const std::size_t n = flats.size();
  on_curve.assign(n, false);
  if (static_cast<int>(n) < opt.curve_min_points) return std::nullopt;
  std::vector<int> component(n, -1);
  int components = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (component[s] >= 0) continue;
    std::vector<std::size_t> stack{s};
    component[s] = components;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < n; ++v) {
        if (component[v] < 0 && angular_distance(flats[u].at.direction, flats[v].at.direction) < link) {
          component[v] = components;
          stack.push_back(v);
        }
      }
    }
    ++components;
  }
  std::optional<DegenerateCurve> best;
  int best_component = -1;
  for (int c = 0; c < components; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t k = 0; k < n; ++k)
      if (component[k] == c) members.push_back(k);
    if (static_cast<int>(members.size()) < opt.curve_min_points) continue;
    Eigen::MatrixXd pts(3, static_cast<Eigen::Index>(members.size()));
    for (std::size_t k = 0; k < members.size(); ++k) pts.col(static_cast<Eigen::Index>(k)) = flats[members[k]].at.direction.h;
    const Eigen::Vector3d mean = pts.rowwise().mean();
    const Eigen::MatrixXd centred = pts.colwise() - mean;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centred, Eigen::ComputeFullU);
    Eigen::Vector3d normal = svd.matrixU().col(2);
    double offset = normal.dot(mean);
    if (offset < 0.0) {
      normal = -normal;
      offset = -offset;
    }
    const double residual = (normal.transpose() * pts).array().unaryExpr([&](double x) { return std::abs(x - offset); }).maxCoeff();
    if (residual >= opt.curve_tolerance) continue;
    if (!best || members.size() > best->members.size()) {
      DegenerateCurve curve;
      curve.normal = normal;
      curve.offset = offset;
      curve.residual = residual;
      for (std::size_t k : members) curve.members.push_back(flats[k]);
      best = std::move(curve);
      best_component = c;
    }
  }
  if (best) {
    for (std::size_t k = 0; k < n; ++k) on_curve[k] = component[k] == best_component;
  }
  return best;
}

}  // namespace

Classification classify_from_search(std::span<const HermitianOperator> ops, const DegenerateSearch& search,
                                    const FlatOptions& opt) {
  Classification out;
  out.tau = search.tau;
  out.scale = search.scale;
  out.min_grid_gap = search.min_grid_gap;
  out.warnings = search.warnings;
  std::vector<FlatPortion> all;
  all.reserve(search.directions.size());
  for (const auto& d : search.directions) all.push_back(make_flat(ops, d, opt.rank_tolerance));
  std::vector<bool> on_curve;
  const double link = 6.0 * std::numbers::pi / (opt.theta_res - 1);
  out.curve = detect_curve(all, link, opt, on_curve);
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (on_curve[k]) continue;
    if (all[k].kind == FlatKind::point) {
      out.points.push_back(all[k]);
    } else {
      if (all[k].kind == FlatKind::segment) ++out.label.s;
      if (all[k].kind == FlatKind::ellipse) ++out.label.e;
      out.flats.push_back(all[k]);
    }
  }
  out.label.s_infinite = out.curve.has_value();
  return out;
}

ClassifyResult classify(std::span<const HermitianOperator> ops, const FlatOptions& opt) {
  if (ops.size() != 3) throw InputError("classification needs exactly three operators");
  const Eigen::Index d = common_dimension(ops);
  if (d != 3) throw InputError("unsupported: classification requires d=3, got d=" + std::to_string(d));
  if (operator_span_rank(ops) < 4) {
    ReducibleInput r;
    Eigen::MatrixXcd vecs(d * d, 4);
    for (int i = 0; i < 3; ++i) vecs.col(i) = ops[static_cast<std::size_t>(i)].matrix().reshaped();
    vecs.col(3) = Matrix::Identity(d, d).reshaped();
    const Eigen::MatrixXd gram = (vecs.adjoint() * vecs).real();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram, Eigen::ComputeFullV);
    r.relation = svd.matrixV().col(3);
    const std::array<std::array<int, 2>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
    bool found = false;
    for (const auto& p : pairs) {
      const std::array<HermitianOperator, 2> pair{ops[static_cast<std::size_t>(p[0])], ops[static_cast<std::size_t>(p[1])]};
      if (operator_span_rank(pair) == 3) {
        r.pair = p;
        r.planar = classify_projection_2d(pair);
        found = true;
        break;
      }
    }
    if (found) {
      if (r.planar.label == PlanarClass::triangle) r.rotational_label = ClassLabel{0, 1, true, false};
      if (r.planar.label == PlanarClass::ellipse_plus_point) r.rotational_label = ClassLabel{0, 0, true, false};
    }
    return r;
  }
  return classify_from_search(ops, find_degenerate_directions(ops, opt), opt);
}

std::vector<StabilityRow> tolerance_sweep(std::span<const HermitianOperator> ops, std::span<const double> taus,
                                          const FlatOptions& opt) {
  const GridScan scan = scan_grid(ops, opt);
  const auto refined = refine_all(ops, scan.candidates, scan.step, opt, scan.scale);
  std::vector<StabilityRow> rows;
  for (double tau : taus) {
    DegenerateSearch search = assemble(ops, refined, tau, scan.scale, opt);
    search.min_grid_gap = scan.min_gap;
    const Classification c = classify_from_search(ops, search, opt);
    rows.push_back({tau, c.label, static_cast<int>(search.directions.size())});
  }
  return rows;
}

ConicFit fit_conic(const Eigen::Matrix2Xd& points) {
  if (points.cols() < 6) throw InputError("conic fit needs at least 6 points");
  const Eigen::Vector2d mu = points.rowwise().mean();
  const Eigen::Matrix2Xd c = points.colwise() - mu;
  const double s = std::sqrt(c.colwise().squaredNorm().mean());
  if (!(s > 0.0)) throw InputError("conic fit needs distinct points");
  const Eigen::Matrix2Xd q = c / s;
  Eigen::MatrixXd design(q.cols(), 6);
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const double x = q(0, k), y = q(1, k);
    design.row(k) << x * x, x * y, y * y, x, y, 1.0;
  }
  const Eigen::Matrix<double, 6, 6> scatter = design.transpose() * design;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(scatter);
  const Eigen::Matrix<double, 6, 1> w = es.eigenvectors().col(0);
  const double s2 = s * s, mx = mu(0), my = mu(1);
  Eigen::Matrix<double, 6, 1> k;
  k(0) = w(0) / s2;
  k(1) = w(1) / s2;
  k(2) = w(2) / s2;
  k(3) = -2.0 * w(0) * mx / s2 - w(1) * my / s2 + w(3) / s;
  k(4) = -2.0 * w(2) * my / s2 - w(1) * mx / s2 + w(4) / s;
  k(5) = (w(0) * mx * mx + w(1) * mx * my + w(2) * my * my) / s2 - (w(3) * mx + w(4) * my) / s + w(5);
  k /= k.norm();
  ConicFit fit;
  fit.coefficients = k;
  fit.is_ellipse = k(1) * k(1) - 4.0 * k(0) * k(2) < 0.0;
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    const double x = points(0, j), y = points(1, j);
    const double value = k(0) * x * x + k(1) * x * y + k(2) * y * y + k(3) * x + k(4) * y + k(5);
    const Eigen::Vector2d grad(2.0 * k(0) * x + k(1) * y + k(3), k(1) * x + 2.0 * k(2) * y + k(4));
    const double g = grad.norm();
    fit.max_residual = std::max(fit.max_residual, g > 0.0 ? std::abs(value) / g : std::abs(value));
  }
  return fit;
}

}  // namespace jnr
