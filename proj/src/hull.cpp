#include "jnr/hull.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include "jnr/errors.hpp"
#include "jnr/predicates.hpp"

namespace jnr {
namespace {

double point_set_diameter(const Eigen::MatrixXd& pts) {
  // Bounding-box diagonal: within a factor sqrt(dim) of the true diameter and
  // O(N). Used only to scale tolerances.
  if (pts.cols() == 0) return 0.0;
  return (pts.rowwise().maxCoeff() - pts.rowwise().minCoeff()).norm();
}

std::vector<Eigen::Index> unique_columns(const Eigen::MatrixXd& pts) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(pts.cols()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  auto less = [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index r = 0; r < pts.rows(); ++r) {
      if (pts(r, a) != pts(r, b)) return pts(r, a) < pts(r, b);
    }
    return a < b;
  };
  std::sort(idx.begin(), idx.end(), less);
  std::vector<Eigen::Index> out;
  for (Eigen::Index i : idx) {
    if (!out.empty() && pts.col(out.back()) == pts.col(i)) continue;
    out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------- 2D

// Andrew's monotone chain over `idx` (sorted lexicographically, distinct).
// Returns ccw hull without collinear points.
std::vector<Eigen::Index> monotone_chain(const std::vector<Eigen::Vector2d>& p,
                                         const std::vector<Eigen::Index>& order) {
  if (order.size() < 3) return order;
  std::vector<Eigen::Index> h(2 * order.size());
  std::size_t k = 0;
  for (Eigen::Index i : order) {
    while (k >= 2 && geom::orient2d(p[static_cast<std::size_t>(h[k - 2])], p[static_cast<std::size_t>(h[k - 1])],
                                    p[static_cast<std::size_t>(i)]) <= 0)
      --k;
    h[k++] = i;
  }
  const std::size_t lower = k + 1;
  for (auto it = order.rbegin() + 1; it != order.rend(); ++it) {
    const Eigen::Index i = *it;
    while (k >= lower && geom::orient2d(p[static_cast<std::size_t>(h[k - 2])],
                                        p[static_cast<std::size_t>(h[k - 1])], p[static_cast<std::size_t>(i)]) <= 0)
      --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

std::vector<Eigen::Index> hull2d_indices(const std::vector<Eigen::Vector2d>& p) {
  std::vector<Eigen::Index> order(p.size());
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const auto& x = p[static_cast<std::size_t>(a)];
    const auto& y = p[static_cast<std::size_t>(b)];
    return x.x() != y.x() ? x.x() < y.x() : x.y() < y.y();
  });
  order.erase(std::unique(order.begin(), order.end(),
                          [&](Eigen::Index a, Eigen::Index b) {
                            return p[static_cast<std::size_t>(a)] == p[static_cast<std::size_t>(b)];
                          }),
              order.end());
  return monotone_chain(p, order);
}

HullMesh build_mesh2d(const Eigen::MatrixXd& pts, const std::vector<Eigen::Index>& ring, double diameter) {
  HullMesh m;
  m.dim = 2;
  m.diameter = diameter;
  const auto v = static_cast<Eigen::Index>(ring.size());
  m.vertices.resize(2, v);
  m.normals.resize(2, v);
  m.offsets.resize(v);
  for (Eigen::Index i = 0; i < v; ++i) {
    m.vertices.col(i) = pts.col(ring[static_cast<std::size_t>(i)]);
    m.source.push_back(ring[static_cast<std::size_t>(i)]);
    m.polygon.push_back(i);
  }
  for (Eigen::Index i = 0; i < v; ++i) {
    const Eigen::Vector2d a = m.vertices.col(i);
    const Eigen::Vector2d b = m.vertices.col((i + 1) % v);
    // Outward normal of a ccw edge is the edge direction rotated by -90 deg.
    Eigen::Vector2d n(b.y() - a.y(), a.x() - b.x());
    n.normalize();
    m.normals.col(i) = n;
    m.offsets(i) = n.dot(a);
  }
  return m;
}

// ---------------------------------------------------------------- 3D

struct Face {
  std::array<int, 3> v{};
  std::array<int, 3> nb{-1, -1, -1};  // neighbour across edge (v[i], v[i+1])
  Eigen::Vector3d normal = Eigen::Vector3d::Zero();
  double offset = 0.0;
  std::vector<int> outside;
  bool alive = true;
};

class QuickHull {
 public:
  explicit QuickHull(std::vector<Eigen::Vector3d> p) : p_(std::move(p)) {}

  void run() {
    init_simplex();
    for (;;) {
      int fi = -1;
      while (!pending_.empty()) {
        const int c = pending_.back();
        if (faces_[static_cast<std::size_t>(c)].alive && !faces_[static_cast<std::size_t>(c)].outside.empty()) {
          fi = c;
          break;
        }
        pending_.pop_back();
      }
      if (fi < 0) break;
      add_point(fi);
    }
  }

  std::vector<Face> faces() const {
    std::vector<Face> out;
    for (const auto& f : faces_)
      if (f.alive) out.push_back(f);
    return out;
  }

 private:
  const Eigen::Vector3d& pt(int i) const { return p_[static_cast<std::size_t>(i)]; }

  int orient(const Face& f, int q) const { return geom::orient3d(pt(f.v[0]), pt(f.v[1]), pt(f.v[2]), pt(q)); }

  double height(const Face& f, int q) const { return f.normal.dot(pt(q)) - f.offset; }

  int make_face(int a, int b, int c) {
    Face f;
    f.v = {a, b, c};
    Eigen::Vector3d n = geom::exact_cross(pt(a), pt(b), pt(c));
    f.normal = n / n.norm();
    f.offset = f.normal.dot(pt(a));
    faces_.push_back(std::move(f));
    return static_cast<int>(faces_.size()) - 1;
  }

  void init_simplex() {
    const int n = static_cast<int>(p_.size());
    // Extreme pair along coordinate axes.
    std::array<int, 6> ext{};
    for (int k = 0; k < 3; ++k) {
      int lo = 0, hi = 0;
      for (int i = 1; i < n; ++i) {
        if (pt(i)(k) < pt(lo)(k)) lo = i;
        if (pt(i)(k) > pt(hi)(k)) hi = i;
      }
      ext[static_cast<std::size_t>(2 * k)] = lo;
      ext[static_cast<std::size_t>(2 * k + 1)] = hi;
    }
    int i0 = 0, i1 = 1;
    double best = -1.0;
    for (int a : ext)
      for (int b : ext) {
        const double d = (pt(a) - pt(b)).squaredNorm();
        if (d > best) {
          best = d;
          i0 = a;
          i1 = b;
        }
      }
    // Farthest from the line, then from the plane; confirmed with exact tests.
    const Eigen::Vector3d dir = (pt(i1) - pt(i0)).normalized();
    int i2 = -1;
    best = -1.0;
    for (int i = 0; i < n; ++i) {
      const Eigen::Vector3d r = pt(i) - pt(i0);
      const double d = (r - dir * dir.dot(r)).squaredNorm();
      if (d > best && geom::exact_cross(pt(i0), pt(i1), pt(i)).squaredNorm() > 0.0) {
        best = d;
        i2 = i;
      }
    }
    if (i2 < 0) throw NumericalError("quickhull: input is collinear");
    const Eigen::Vector3d pn = geom::exact_cross(pt(i0), pt(i1), pt(i2)).normalized();
    int i3 = -1;
    best = -1.0;
    for (int i = 0; i < n; ++i) {
      const double d = std::abs(pn.dot(pt(i) - pt(i0)));
      if (d > best && geom::orient3d(pt(i0), pt(i1), pt(i2), pt(i)) != 0) {
        best = d;
        i3 = i;
      }
    }
    if (i3 < 0) throw NumericalError("quickhull: input is coplanar");

    if (geom::orient3d(pt(i0), pt(i1), pt(i2), pt(i3)) > 0) std::swap(i1, i2);
    // Now i3 is below (i0, i1, i2); every face must have i3 on its inner side.
    const int f0 = make_face(i0, i1, i2);
    const int f1 = make_face(i0, i3, i1);
    const int f2 = make_face(i1, i3, i2);
    const int f3 = make_face(i2, i3, i0);
    link_all({f0, f1, f2, f3});

    std::vector<int> rest;
    rest.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      if (i != i0 && i != i1 && i != i2 && i != i3) rest.push_back(i);
    assign(rest, {f0, f1, f2, f3});
    for (int f : {f0, f1, f2, f3}) pending_.push_back(f);
  }

  static std::uint64_t edge_key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
  }

  // Link neighbours among the given faces by matching opposite directed edges.
  void link_all(const std::vector<int>& ids) {
    std::unordered_map<std::uint64_t, std::pair<int, int>> edges;
    for (int id : ids) {
      const Face& f = faces_[static_cast<std::size_t>(id)];
      for (int e = 0; e < 3; ++e) edges[edge_key(f.v[static_cast<std::size_t>(e)], f.v[static_cast<std::size_t>((e + 1) % 3)])] = {id, e};
    }
    for (int id : ids) {
      Face& f = faces_[static_cast<std::size_t>(id)];
      for (int e = 0; e < 3; ++e) {
        auto it = edges.find(edge_key(f.v[static_cast<std::size_t>((e + 1) % 3)], f.v[static_cast<std::size_t>(e)]));
        if (it != edges.end()) f.nb[static_cast<std::size_t>(e)] = it->second.first;
      }
    }
  }

  void assign(const std::vector<int>& candidates, const std::vector<int>& targets) {
    for (int q : candidates) {
      for (int t : targets) {
        Face& f = faces_[static_cast<std::size_t>(t)];
        if (orient(f, q) > 0) {
          f.outside.push_back(q);
          break;
        }
      }
    }
  }

  void add_point(int start) {
    Face& sf = faces_[static_cast<std::size_t>(start)];
    int eye = sf.outside.front();
    double hmax = height(sf, eye);
    for (int q : sf.outside) {
      const double h = height(sf, q);
      if (h > hmax) {
        hmax = h;
        eye = q;
      }
    }

    // Strictly visible faces, found by flood fill from the start face.
    std::vector<int> visible{start};
    std::vector<char> mark(faces_.size(), 0);
    mark[static_cast<std::size_t>(start)] = 1;
    for (std::size_t k = 0; k < visible.size(); ++k) {
      const Face& f = faces_[static_cast<std::size_t>(visible[k])];
      for (int nb : f.nb) {
        if (nb < 0 || mark[static_cast<std::size_t>(nb)]) continue;
        if (orient(faces_[static_cast<std::size_t>(nb)], eye) > 0) {
          mark[static_cast<std::size_t>(nb)] = 1;
          visible.push_back(nb);
        } else {
          mark[static_cast<std::size_t>(nb)] = 2;
        }
      }
    }

    struct HorizonEdge {
      int a, b, outer;
    };
    std::vector<HorizonEdge> horizon;
    std::vector<int> orphans;
    for (int id : visible) {
      Face& f = faces_[static_cast<std::size_t>(id)];
      for (int e = 0; e < 3; ++e) {
        const int nb = f.nb[static_cast<std::size_t>(e)];
        if (mark[static_cast<std::size_t>(nb)] != 1) {
          horizon.push_back({f.v[static_cast<std::size_t>(e)], f.v[static_cast<std::size_t>((e + 1) % 3)], nb});
        }
      }
      for (int q : f.outside)
        if (q != eye) orphans.push_back(q);
      f.outside.clear();
      f.alive = false;
    }

    std::vector<int> created;
    created.reserve(horizon.size());
    for (const auto& h : horizon) {
      const int id = make_face(h.a, h.b, eye);
      created.push_back(id);
      Face& nf = faces_[static_cast<std::size_t>(id)];
      nf.nb[0] = h.outer;
      Face& outer = faces_[static_cast<std::size_t>(h.outer)];
      for (int e = 0; e < 3; ++e) {
        if (outer.v[static_cast<std::size_t>(e)] == h.b && outer.v[static_cast<std::size_t>((e + 1) % 3)] == h.a) {
          outer.nb[static_cast<std::size_t>(e)] = id;
        }
      }
    }
    // Side edges (b, eye) and (eye, a) pair up among the new faces.
    std::unordered_map<std::uint64_t, int> side;
    for (int id : created) {
      const Face& f = faces_[static_cast<std::size_t>(id)];
      side[edge_key(f.v[1], f.v[2])] = id;
      side[edge_key(f.v[2], f.v[0])] = id;
    }
    for (int id : created) {
      Face& f = faces_[static_cast<std::size_t>(id)];
      auto it1 = side.find(edge_key(f.v[2], f.v[1]));
      auto it2 = side.find(edge_key(f.v[0], f.v[2]));
      if (it1 == side.end() || it2 == side.end()) throw NumericalError("quickhull: open horizon");
      f.nb[1] = it1->second;
      f.nb[2] = it2->second;
    }
    assign(orphans, created);
    for (int id : created) pending_.push_back(id);
  }

  std::vector<Eigen::Vector3d> p_;
  std::vector<Face> faces_;
  std::vector<int> pending_;
};

HullMesh build_mesh3d(const Eigen::MatrixXd& pts, const std::vector<Eigen::Index>& ids,
                      const std::vector<Face>& faces, double diameter) {
  HullMesh m;
  m.dim = 3;
  m.diameter = diameter;
  std::unordered_map<int, Eigen::Index> local;
  for (const auto& f : faces)
    for (int v : f.v)
      if (!local.count(v)) {
        const auto pos = static_cast<Eigen::Index>(local.size());
        local[v] = pos;
      }
  // Vertex order follows input order for reproducibility.
  std::vector<std::pair<Eigen::Index, int>> order;
  for (const auto& [v, pos] : local) order.emplace_back(ids[static_cast<std::size_t>(v)], v);
  std::sort(order.begin(), order.end());
  m.vertices.resize(3, static_cast<Eigen::Index>(order.size()));
  for (std::size_t k = 0; k < order.size(); ++k) {
    local[order[k].second] = static_cast<Eigen::Index>(k);
    m.vertices.col(static_cast<Eigen::Index>(k)) = pts.col(order[k].first);
    m.source.push_back(order[k].first);
  }
  const auto nf = static_cast<Eigen::Index>(faces.size());
  m.normals.resize(3, nf);
  m.offsets.resize(nf);
  for (Eigen::Index i = 0; i < nf; ++i) {
    const Face& f = faces[static_cast<std::size_t>(i)];
    m.triangles.push_back({local[f.v[0]], local[f.v[1]], local[f.v[2]]});
    m.normals.col(i) = f.normal;
    m.offsets(i) = f.offset;
  }
  return m;
}

}  // namespace

HullResult convex_hull(const Eigen::MatrixXd& points) {
  const auto dim = static_cast<int>(points.rows());
  if (dim != 2 && dim != 3) throw InputError("convex_hull supports 2 or 3 dimensions");
  if (points.cols() == 0) throw InputError("convex_hull of an empty point set");
  if (!points.allFinite()) throw InputError("convex_hull input contains non-finite coordinates");

  const std::vector<Eigen::Index> ids = unique_columns(points);
  const double diameter = point_set_diameter(points);

  Eigen::MatrixXd u(dim, static_cast<Eigen::Index>(ids.size()));
  for (std::size_t k = 0; k < ids.size(); ++k) u.col(static_cast<Eigen::Index>(k)) = points.col(ids[k]);
  const Eigen::VectorXd centroid = u.rowwise().mean();
  const Eigen::MatrixXd centred = u.colwise() - centroid;
  int rank = 0;
  Eigen::MatrixXd basis;
  if (u.cols() > 1) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centred, Eigen::ComputeThinU);
    const Eigen::VectorXd s = svd.singularValues();
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > 1e-9 * s(0)) ++rank;
    basis = svd.matrixU().leftCols(rank);
  }

  if (rank < dim) {
    DegenerateHull dh;
    dh.dim = dim;
    dh.affine_rank = rank;
    dh.origin = centroid;
    dh.basis = basis;
    dh.diameter = diameter;
    const Eigen::MatrixXd coords = basis.transpose() * centred;  // rank x U
    if (rank == 0) {
      dh.boundary = {ids.front()};
    } else if (rank == 1) {
      Eigen::Index lo = 0, hi = 0;
      coords.row(0).minCoeff(&lo);
      coords.row(0).maxCoeff(&hi);
      dh.boundary = {ids[static_cast<std::size_t>(lo)], ids[static_cast<std::size_t>(hi)]};
    } else {
      std::vector<Eigen::Vector2d> p2(static_cast<std::size_t>(coords.cols()));
      for (Eigen::Index k = 0; k < coords.cols(); ++k) p2[static_cast<std::size_t>(k)] = coords.col(k);
      for (Eigen::Index k : hull2d_indices(p2)) dh.boundary.push_back(ids[static_cast<std::size_t>(k)]);
    }
    return dh;
  }

  if (dim == 2) {
    std::vector<Eigen::Vector2d> p2(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) p2[k] = points.col(ids[k]);
    std::vector<Eigen::Index> ring;
    for (Eigen::Index k : hull2d_indices(p2)) ring.push_back(ids[static_cast<std::size_t>(k)]);
    return build_mesh2d(points, ring, diameter);
  }

  std::vector<Eigen::Vector3d> p3(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) p3[k] = points.col(ids[k]);
  QuickHull qh(std::move(p3));
  qh.run();
  return build_mesh3d(points, ids, qh.faces(), diameter);
}

bool contains(const HullMesh& mesh, const Eigen::Ref<const Eigen::VectorXd>& p, double tol) {
  if (p.size() != mesh.dim) throw InputError("contains: point dimension does not match mesh");
  for (Eigen::Index f = 0; f < mesh.face_count(); ++f) {
    if (mesh.normals.col(f).dot(p) > mesh.offsets(f) + tol) return false;
  }
  return true;
}

double max_violation(const HullMesh& mesh, const Eigen::Ref<const Eigen::VectorXd>& p) {
  return ((mesh.normals.transpose() * p) - mesh.offsets).maxCoeff();
}

bool contains(const DegenerateHull& hull, const Eigen::MatrixXd& points,
              const Eigen::Ref<const Eigen::VectorXd>& p, double tol) {
  const Eigen::VectorXd r = p - hull.origin;
  const Eigen::VectorXd t = hull.basis.transpose() * r;
  if ((r - hull.basis * t).norm() > tol) return false;
  if (hull.affine_rank == 0) return true;
  auto coord = [&](Eigen::Index col) -> Eigen::VectorXd {
    return hull.basis.transpose() * (points.col(col) - hull.origin);
  };
  if (hull.affine_rank == 1) {
    const double a = coord(hull.boundary[0])(0);
    const double b = coord(hull.boundary[1])(0);
    return t(0) >= std::min(a, b) - tol && t(0) <= std::max(a, b) + tol;
  }
  const std::size_t m = hull.boundary.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Vector2d a = coord(hull.boundary[i]);
    const Eigen::Vector2d b = coord(hull.boundary[(i + 1) % m]);
    Eigen::Vector2d n(b.y() - a.y(), a.x() - b.x());
    n.normalize();
    if (n.dot(Eigen::Vector2d(t)) > n.dot(a) + tol) return false;
  }
  return true;
}

std::vector<Facet> merge_coplanar(const HullMesh& mesh, double angle_tol) {
  if (mesh.dim != 3) throw InputError("merge_coplanar requires a 3D mesh");
  const auto nf = static_cast<std::size_t>(mesh.face_count());
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> edge_faces;
  auto key = [](Eigen::Index a, Eigen::Index b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b);
  };
  for (std::size_t f = 0; f < nf; ++f) {
    const auto& t = mesh.triangles[f];
    for (int e = 0; e < 3; ++e) edge_faces[key(t[static_cast<std::size_t>(e)], t[static_cast<std::size_t>((e + 1) % 3)])].push_back(f);
  }
  const double cos_tol = std::cos(angle_tol);
  std::vector<int> group(nf, -1);
  std::vector<Facet> out;
  for (std::size_t seed = 0; seed < nf; ++seed) {
    if (group[seed] >= 0) continue;
    const int g = static_cast<int>(out.size());
    Facet facet;
    facet.normal = mesh.normals.col(static_cast<Eigen::Index>(seed));
    std::vector<std::size_t> stack{seed};
    group[seed] = g;
    while (!stack.empty()) {
      const std::size_t f = stack.back();
      stack.pop_back();
      facet.faces.push_back(static_cast<Eigen::Index>(f));
      const auto& t = mesh.triangles[f];
      for (int e = 0; e < 3; ++e) {
        for (std::size_t other : edge_faces[key(t[static_cast<std::size_t>(e)], t[static_cast<std::size_t>((e + 1) % 3)])]) {
          if (group[other] >= 0) continue;
          const Eigen::Vector3d n = mesh.normals.col(static_cast<Eigen::Index>(other));
          // Angle against the seed normal so a facet cannot drift along a curved surface.
          if (n.dot(facet.normal) >= cos_tol) {
            group[other] = g;
            stack.push_back(other);
          }
        }
      }
    }
    Eigen::Vector3d weighted = Eigen::Vector3d::Zero();
    for (Eigen::Index f : facet.faces) {
      const auto& t = mesh.triangles[static_cast<std::size_t>(f)];
      const Eigen::Vector3d a = mesh.vertices.col(t[0]), b = mesh.vertices.col(t[1]), c = mesh.vertices.col(t[2]);
      const double area = 0.5 * (b - a).cross(c - a).norm();
      facet.area += area;
      weighted += area * mesh.normals.col(f);
    }
    if (weighted.norm() > 0.0) facet.normal = weighted.normalized();
    const auto& t0 = mesh.triangles[static_cast<std::size_t>(facet.faces.front())];
    facet.offset = facet.normal.dot(mesh.vertices.col(t0[0]));
    out.push_back(std::move(facet));
  }
  std::stable_sort(out.begin(), out.end(), [](const Facet& a, const Facet& b) { return a.area > b.area; });
  return out;
}

bool is_closed_orientable(const HullMesh& mesh) {
  if (mesh.dim != 3) return mesh.polygon.size() >= 3;
  std::unordered_map<std::uint64_t, int> directed;
  for (const auto& t : mesh.triangles) {
    for (int e = 0; e < 3; ++e) {
      const auto a = static_cast<std::uint64_t>(t[static_cast<std::size_t>(e)]);
      const auto b = static_cast<std::uint64_t>(t[static_cast<std::size_t>((e + 1) % 3)]);
      if (++directed[(a << 32) | b] > 1) return false;
    }
  }
  for (const auto& [k, count] : directed) {
    const std::uint64_t rev = (k << 32) | (k >> 32);
    auto it = directed.find(rev);
    if (it == directed.end() || it->second != 1 || count != 1) return false;
  }
  return true;
}

double boundary_measure(const HullMesh& mesh) {
  double total = 0.0;
  if (mesh.dim == 2) {
    const auto v = mesh.vertex_count();
    for (Eigen::Index i = 0; i < v; ++i) total += (mesh.vertices.col((i + 1) % v) - mesh.vertices.col(i)).norm();
    return total;
  }
  for (const auto& t : mesh.triangles) {
    const Eigen::Vector3d a = mesh.vertices.col(t[0]), b = mesh.vertices.col(t[1]), c = mesh.vertices.col(t[2]);
    total += 0.5 * (b - a).cross(c - a).norm();
  }
  return total;
}

}  // namespace jnr
