// genvi - general variational inequality and coincidence point toolkit
// Copyright 2026 genvi contributors
// Licensed under Apache 2.0

#include "genvi/geometry.hpp"

#include "genvi/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>

namespace genvi {
namespace {

constexpr double kSubsetCap = 5e6;
constexpr double kRayTol = 1e-12;

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Calls visit(indices) for every k-subset of {0, ..., n-1} in lexicographic
// order.
void for_each_subset(int n, int k,
                     const std::function<void(const std::vector<int>&)>& visit) {
  if (k > n) return;
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

void guard_subsets(int n, int k, const char* what) {
  if (binomial(n, k) > kSubsetCap) {
    throw Error(ErrorCode::DimensionTooLarge,
                std::string(what) + ": too many constraint subsets (" +
                    std::to_string(n) + " choose " + std::to_string(k) + ")");
  }
}

void require_finite(const Vector& v, const char* what) {
  if (!all_finite(v)) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(what) + ": non-finite coordinate");
  }
}

void push_unique(std::vector<Vector>& pts, const Vector& p, double tol) {
  for (const auto& q : pts) {
    if ((q - p).lpNorm<Eigen::Infinity>() <= tol) return;
  }
  pts.push_back(p);
}

Matrix stack_normals(const std::vector<HalfSpace>& rows, int dim) {
  Matrix N(static_cast<Eigen::Index>(rows.size()), dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    N.row(static_cast<Eigen::Index>(i)) = rows[i].normal.transpose();
  }
  return N;
}

Vector stack_offsets(const std::vector<HalfSpace>& rows) {
  Vector b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    b(static_cast<Eigen::Index>(i)) = rows[i].offset;
  }
  return b;
}

Matrix select_rows(const Matrix& N, const std::vector<int>& idx) {
  Matrix out(static_cast<Eigen::Index>(idx.size()), N.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = N.row(idx[i]);
  }
  return out;
}

// Unit vector spanning the kernel of A when rank(A) = cols - 1.
std::optional<Vector> kernel_direction(const Matrix& A, int cols) {
  if (A.rows() == 0) {
    if (cols != 1) return std::nullopt;
    return Vector::Ones(1);
  }
  Eigen::FullPivLU<Matrix> lu(A);
  lu.setThreshold(1e-10);
  if (lu.rank() != cols - 1) return std::nullopt;
  Vector k = lu.kernel().col(0);
  return Vector(k.normalized());
}

bool recession_cone_nontrivial(const Matrix& N) {
  const int d = static_cast<int>(N.cols());
  const int m = static_cast<int>(N.rows());
  Eigen::FullPivLU<Matrix> lu(N);
  lu.setThreshold(1e-10);
  if (lu.rank() < d) return true;  // contains a line
  guard_subsets(m, d - 1, "boundedness check");
  bool unbounded = false;
  for_each_subset(m, d - 1, [&](const std::vector<int>& idx) {
    if (unbounded) return;
    auto k = kernel_direction(select_rows(N, idx), d);
    if (!k) return;
    if ((N * *k).maxCoeff() <= kRayTol || (-(N * *k)).maxCoeff() <= kRayTol) {
      unbounded = true;
    }
  });
  return unbounded;
}

std::vector<Vector> enumerate_vertices(const Matrix& N, const Vector& b) {
  const int d = static_cast<int>(N.cols());
  const int m = static_cast<int>(N.rows());
  guard_subsets(m, d, "vertex enumeration");
  std::vector<Vector> out;
  for_each_subset(m, d, [&](const std::vector<int>& idx) {
    Matrix A = select_rows(N, idx);
    Vector rhs(d);
    for (int i = 0; i < d; ++i) rhs(i) = b(idx[i]);
    Eigen::FullPivLU<Matrix> lu(A);
    lu.setThreshold(1e-10);
    if (lu.rank() < d) return;
    Vector x = lu.solve(rhs);
    const double scale = std::max(1.0, x.lpNorm<Eigen::Infinity>());
    if ((N * x - b).maxCoeff() <= 1e-9 * scale) {
      push_unique(out, x, kVertexDedupTol);
    }
  });
  return out;
}

int affine_rank(const std::vector<Vector>& pts, double rel_tol) {
  if (pts.size() < 2) return 0;
  const Eigen::Index d = pts.front().size();
  Matrix D(d, static_cast<Eigen::Index>(pts.size()) - 1);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    D.col(static_cast<Eigen::Index>(i) - 1) = pts[i] - pts[0];
  }
  Eigen::JacobiSVD<Matrix> svd(D);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  const double cut = rel_tol * std::max(1.0, s(0));
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > cut ? 1 : 0;
  return r;
}

// Facet rows of conv(points), including equality pairs for the
// complement of the affine hull.
std::vector<HalfSpace> hull_rows(std::vector<Vector> points) {
  std::vector<Vector> pts;
  for (const auto& p : points) push_unique(pts, p, kVertexDedupTol);
  const Eigen::Index dim = pts.front().size();
  const int k = static_cast<int>(pts.size());

  Vector c0 = Vector::Zero(dim);
  for (const auto& p : pts) c0 += p;
  c0 /= static_cast<double>(k);

  Matrix D(dim, k);
  for (int i = 0; i < k; ++i) D.col(i) = pts[i] - c0;
  Eigen::JacobiSVD<Matrix> svd(D, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  const double cut = 1e-9 * std::max(1.0, s.size() ? s(0) : 0.0);
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > cut ? 1 : 0;

  const Matrix U = svd.matrixU();
  const Matrix Ur = U.leftCols(r);
  std::vector<HalfSpace> rows;
  for (Eigen::Index j = r; j < dim; ++j) {
    Vector w = U.col(j);
    rows.push_back({w, w.dot(c0)});
    rows.push_back({-w, -w.dot(c0)});
  }
  if (r == 0) return rows;

  std::vector<Vector> z(k);
  for (int i = 0; i < k; ++i) z[i] = Ur.transpose() * (pts[i] - c0);

  double scale = 1.0;
  for (const auto& zi : z) scale = std::max(scale, zi.lpNorm<Eigen::Infinity>());
  const double eps = 1e-9 * scale;

  guard_subsets(k, r, "convex hull");
  std::vector<std::pair<Vector, double>> facets;
  auto add_facet = [&](const Vector& n, double off) {
    for (const auto& [fn, fo] : facets) {
      if ((fn - n).norm() <= 1e-9 && std::abs(fo - off) <= eps) return;
    }
    facets.emplace_back(n, off);
  };
  for_each_subset(k, r, [&](const std::vector<int>& idx) {
    Matrix A(r - 1, r);
    for (int j = 1; j < r; ++j) A.row(j - 1) = (z[idx[j]] - z[idx[0]]).transpose();
    auto n = kernel_direction(A, r);
    if (!n) return;
    const double off = n->dot(z[idx[0]]);
    double hi = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& zi : z) {
      const double v = n->dot(zi) - off;
      hi = std::max(hi, v);
      lo = std::min(lo, v);
    }
    if (hi <= eps) {
      add_facet(*n, off);
    } else if (lo >= -eps) {
      add_facet(-*n, -off);
    }
  });
  for (const auto& [n, off] : facets) {
    Vector full = Ur * n;
    rows.push_back({full, off + full.dot(c0)});
  }
  return rows;
}

Vector project_simplex(const Vector& x) {
  const Eigen::Index n = x.size();
  std::vector<double> u(x.data(), x.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cumsum += u[j];
    const double t = (cumsum - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  return (x.array() - theta).cwiseMax(0.0).matrix();
}

double max_violation(const HPolytope& P, const Vector& x) {
  double v = -std::numeric_limits<double>::infinity();
  for (const auto& row : P.rows) v = std::max(v, row.normal.dot(x) - row.offset);
  return v;
}

// Dykstra's alternating projection over the halfspaces; the correction term
// of a halfspace is a nonnegative multiple of its unit normal.
Vector project_dykstra(const HPolytope& P, const Vector& point,
                       const ProjectionOptions& opts) {
  if (max_violation(P, point) <= 0.0) return point;
  Vector x = point;
  std::vector<double> alpha(P.rows.size(), 0.0);
  for (int it = 0; it < opts.max_iter; ++it) {
    double change = 0.0;
    for (std::size_t i = 0; i < P.rows.size(); ++i) {
      const auto& row = P.rows[i];
      const double viol = row.normal.dot(x) + alpha[i] - row.offset;
      const double next = std::max(0.0, viol);
      x += (alpha[i] - next) * row.normal;
      change += (alpha[i] - next) * (alpha[i] - next);
      alpha[i] = next;
    }
    if (change <= opts.tol * opts.tol && max_violation(P, x) <= 0.1 * opts.tol) {
      return x;
    }
  }
  throw Error(ErrorCode::NonConvergence,
              "Dykstra projection did not reach tolerance within " +
                  std::to_string(opts.max_iter) + " sweeps");
}

Matrix generator_matrix(const PolyhedralCone& C) {
  Matrix G(C.generators.front().size(),
           static_cast<Eigen::Index>(C.generators.size()));
  for (std::size_t i = 0; i < C.generators.size(); ++i) {
    G.col(static_cast<Eigen::Index>(i)) = C.generators[i];
  }
  return G;
}

}  // namespace

bool all_finite(const Vector& v) { return v.allFinite(); }

ConvexSet ConvexSet::box(Vector lower, Vector upper) {
  if (lower.size() < 1) throw Error(ErrorCode::InvalidArgument, "box: empty dimension");
  require_dims(lower.size(), upper.size(), "box bounds");
  require_finite(lower, "box lower");
  require_finite(upper, "box upper");
  if ((lower.array() > upper.array()).any()) {
    throw Error(ErrorCode::InvalidArgument, "box: lower > upper");
  }
  const int d = static_cast<int>(lower.size());
  return ConvexSet(Box{std::move(lower), std::move(upper)}, d);
}

ConvexSet ConvexSet::ball(Vector center, double radius) {
  if (center.size() < 1) throw Error(ErrorCode::InvalidArgument, "ball: empty dimension");
  require_finite(center, "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::InvalidArgument, "ball: radius must be positive");
  }
  const int d = static_cast<int>(center.size());
  return ConvexSet(Ball{std::move(center), radius}, d);
}

ConvexSet ConvexSet::simplex(int dim) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "simplex: dim must be positive");
  return ConvexSet(Simplex{dim}, dim);
}

ConvexSet ConvexSet::hpolytope(const std::vector<HalfSpace>& rows) {
  if (rows.empty()) throw Error(ErrorCode::UnboundedSet, "hpolytope: no constraints");
  const Eigen::Index d = rows.front().normal.size();
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "hpolytope: empty dimension");
  if (d > kVertexEnumMaxDim) {
    throw Error(ErrorCode::DimensionTooLarge,
                "hpolytope: dimension " + std::to_string(d) +
                    " exceeds vertex enumeration limit " +
                    std::to_string(kVertexEnumMaxDim));
  }
  HPolytope P;
  for (const auto& row : rows) {
    require_dims(d, row.normal.size(), "hpolytope normal");
    require_finite(row.normal, "hpolytope normal");
    if (!std::isfinite(row.offset)) {
      throw Error(ErrorCode::InvalidArgument, "hpolytope: non-finite offset");
    }
    const double norm = row.normal.norm();
    if (norm <= 1e-14) throw Error(ErrorCode::InvalidArgument, "hpolytope: zero normal");
    P.rows.push_back({row.normal / norm, row.offset / norm});
  }
  const Matrix N = stack_normals(P.rows, static_cast<int>(d));
  const Vector b = stack_offsets(P.rows);
  if (recession_cone_nontrivial(N)) {
    throw Error(ErrorCode::UnboundedSet, "hpolytope: feasible set is unbounded");
  }
  P.vertices = enumerate_vertices(N, b);
  if (P.vertices.empty()) throw Error(ErrorCode::EmptySet, "hpolytope: feasible set is empty");
  P.lower = P.vertices.front();
  P.upper = P.vertices.front();
  for (const auto& v : P.vertices) {
    P.lower = P.lower.cwiseMin(v);
    P.upper = P.upper.cwiseMax(v);
  }
  P.full_dimensional = affine_rank(P.vertices, 1e-9) == d;
  return ConvexSet(std::move(P), static_cast<int>(d));
}

ConvexSet ConvexSet::hpolytope(const Matrix& normals, const Vector& offsets) {
  require_dims(normals.rows(), offsets.size(), "hpolytope offsets");
  std::vector<HalfSpace> rows;
  for (Eigen::Index i = 0; i < normals.rows(); ++i) {
    rows.push_back({normals.row(i).transpose(), offsets(i)});
  }
  return hpolytope(rows);
}

ConvexSet ConvexSet::cone(std::vector<Vector> generators) {
  if (generators.empty()) throw Error(ErrorCode::InvalidArgument, "cone: no generators");
  const Eigen::Index d = generators.front().size();
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "cone: empty dimension");
  for (const auto& g : generators) {
    require_dims(d, g.size(), "cone generator");
    require_finite(g, "cone generator");
    if (g.norm() <= 1e-14) throw Error(ErrorCode::InvalidArgument, "cone: zero generator");
  }
  return ConvexSet(PolyhedralCone{std::move(generators)}, static_cast<int>(d));
}

bool ConvexSet::supports_vertices() const {
  return std::visit(Overloaded{
                        [](const Box& b) { return b.lower.size() <= kVertexEnumMaxDim; },
                        [](const Simplex&) { return true; },
                        [](const HPolytope&) { return true; },
                        [](const auto&) { return false; },
                    },
                    v_);
}

std::string ConvexSet::kind_name() const {
  return std::visit(Overloaded{
                        [](const Box&) { return std::string("box"); },
                        [](const Ball&) { return std::string("ball"); },
                        [](const Simplex&) { return std::string("simplex"); },
                        [](const HPolytope&) { return std::string("hpolytope"); },
                        [](const PolyhedralCone&) { return std::string("cone"); },
                    },
                    v_);
}

Vector project(const ConvexSet& set, const Vector& point,
               const ProjectionOptions& opts) {
  require_dims(set.dim(), point.size(), "project");
  require_finite(point, "project");
  return std::visit(
      Overloaded{
          [&](const Box& b) -> Vector {
            return point.cwiseMax(b.lower).cwiseMin(b.upper);
          },
          [&](const Ball& b) -> Vector {
            const Vector d = point - b.center;
            const double n = d.norm();
            if (n <= b.radius) return point;
            return b.center + (b.radius / n) * d;
          },
          [&](const Simplex&) -> Vector { return project_simplex(point); },
          [&](const HPolytope& P) -> Vector { return project_dykstra(P, point, opts); },
          [&](const PolyhedralCone& C) -> Vector {
            const Matrix G = generator_matrix(C);
            const Vector p = G * nnls(G, point);
            // Members of the cone come back as G lambda plus roundoff; return them unchanged.
            if ((point - p).norm() <= 1e-12 * std::max(1.0, point.norm())) return point;
            return p;
          },
      },
      set.variant());
}

double distance(const ConvexSet& set, const Vector& point,
                const ProjectionOptions& opts) {
  return (point - project(set, point, opts)).norm();
}

bool contains(const ConvexSet& set, const Vector& point, double tol) {
  require_dims(set.dim(), point.size(), "contains");
  require_finite(point, "contains");
  if (tol < 0.0) throw Error(ErrorCode::InvalidArgument, "contains: negative tolerance");
  return std::visit(
      Overloaded{
          [&](const Box& b) {
            return (point - point.cwiseMax(b.lower).cwiseMin(b.upper)).norm() <= tol;
          },
          [&](const Ball& b) { return (point - b.center).norm() - b.radius <= tol; },
          [&](const HPolytope& P) {
            const double v = max_violation(P, point);
            if (v <= 0.0) return true;
            if (v > tol) return false;  // one halfspace is already farther than tol
            return distance(set, point) <= tol;
          },
          [&](const auto&) { return distance(set, point) <= tol; },
      },
      set.variant());
}

std::vector<Vector> vertices(const ConvexSet& set) {
  return std::visit(
      Overloaded{
          [&](const Box& b) -> std::vector<Vector> {
            const Eigen::Index d = b.lower.size();
            if (d > kVertexEnumMaxDim) {
              throw Error(ErrorCode::DimensionTooLarge, "vertices: box dimension too large");
            }
            std::vector<Vector> out;
            for (unsigned mask = 0; mask < (1u << d); ++mask) {
              Vector v = b.lower;
              for (Eigen::Index i = 0; i < d; ++i) {
                if (mask & (1u << i)) v(i) = b.upper(i);
              }
              push_unique(out, v, kVertexDedupTol);
            }
            return out;
          },
          [&](const Simplex& s) -> std::vector<Vector> {
            std::vector<Vector> out;
            for (int i = 0; i < s.dim; ++i) out.push_back(Vector::Unit(s.dim, i));
            return out;
          },
          [&](const HPolytope& P) -> std::vector<Vector> { return P.vertices; },
          [&](const auto&) -> std::vector<Vector> {
            throw Error(ErrorCode::UnsupportedVariant,
                        "vertices: unsupported set type " + set.kind_name());
          },
      },
      set.variant());
}

double segment_distance(const Vector& p, const Vector& x, const Vector& y) {
  require_dims(p.size(), x.size(), "segment_distance");
  require_dims(p.size(), y.size(), "segment_distance");
  const Vector d = y - x;
  const double dd = d.squaredNorm();
  if (dd == 0.0) return (p - x).norm();
  const double t = std::clamp((p - x).dot(d) / dd, 0.0, 1.0);
  return (p - (x + t * d)).norm();
}

std::pair<Matrix, Vector> h_representation(const ConvexSet& set) {
  const int d = set.dim();
  return std::visit(
      Overloaded{
          [&](const Box& b) -> std::pair<Matrix, Vector> {
            Matrix N(2 * d, d);
            Vector off(2 * d);
            N.topRows(d) = Matrix::Identity(d, d);
            N.bottomRows(d) = -Matrix::Identity(d, d);
            off.head(d) = b.upper;
            off.tail(d) = -b.lower;
            return {N, off};
          },
          [&](const Simplex&) -> std::pair<Matrix, Vector> {
            Matrix N(d + 2, d);
            Vector off = Vector::Zero(d + 2);
            N.topRows(d) = -Matrix::Identity(d, d);
            N.row(d).setOnes();
            N.row(d + 1).setConstant(-1.0);
            off(d) = 1.0;
            off(d + 1) = -1.0;
            return {N, off};
          },
          [&](const HPolytope& P) -> std::pair<Matrix, Vector> {
            return {stack_normals(P.rows, d), stack_offsets(P.rows)};
          },
          [&](const auto&) -> std::pair<Matrix, Vector> {
            throw Error(ErrorCode::UnsupportedVariant,
                        "h_representation: unsupported set type " + set.kind_name());
          },
      },
      set.variant());
}

ConvexSet affine_image_polytope(const ConvexSet& set, const Matrix& M,
                                const Vector& c) {
  if (!set.supports_vertices()) {
    throw Error(ErrorCode::UnsupportedVariant,
                "affine_image_polytope: unsupported set type " + set.kind_name());
  }
  require_dims(set.dim(), M.cols(), "affine_image_polytope matrix columns");
  require_dims(M.rows(), c.size(), "affine_image_polytope offset");
  if (M.rows() > kVertexEnumMaxDim) {
    throw Error(ErrorCode::DimensionTooLarge, "affine_image_polytope: output dimension too large");
  }
  if (M.rows() == M.cols()) {
    Eigen::FullPivLU<Matrix> lu(M);
    if (lu.isInvertible() && lu.rcond() > 1e-10) {
      // y = M x + c  <=>  x = M^{-1}(y - c): transform the H-representation.
      const auto [N, b] = h_representation(set);
      const Matrix Minv = lu.inverse();
      const Matrix Ny = N * Minv;
      return ConvexSet::hpolytope(Ny, b + Ny * c);
    }
  }
  std::vector<Vector> images;
  for (const auto& v : vertices(set)) images.push_back(M * v + c);
  return ConvexSet::hpolytope(hull_rows(std::move(images)));
}

std::pair<Vector, Vector> bounding_box(const ConvexSet& set) {
  return std::visit(
      Overloaded{
          [](const Box& b) { return std::make_pair(b.lower, b.upper); },
          [](const Ball& b) {
            return std::make_pair(Vector(b.center.array() - b.radius),
                                  Vector(b.center.array() + b.radius));
          },
          [](const Simplex& s) {
            return std::make_pair(Vector(Vector::Zero(s.dim)), Vector(Vector::Ones(s.dim)));
          },
          [](const HPolytope& P) { return std::make_pair(P.lower, P.upper); },
          [&](const PolyhedralCone&) -> std::pair<Vector, Vector> {
            throw Error(ErrorCode::UnsupportedVariant, "bounding_box: cone is unbounded");
          },
      },
      set.variant());
}

double diameter(const ConvexSet& set) {
  return std::visit(
      Overloaded{
          [](const Box& b) { return (b.upper - b.lower).norm(); },
          [](const Ball& b) { return 2.0 * b.radius; },
          [](const Simplex& s) { return s.dim == 1 ? 0.0 : std::sqrt(2.0); },
          [](const HPolytope& P) {
            double best = 0.0;
            for (const auto& v : P.vertices) {
              for (const auto& w : P.vertices) best = std::max(best, (v - w).norm());
            }
            return best;
          },
          [](const PolyhedralCone&) -> double {
            throw Error(ErrorCode::UnsupportedVariant, "diameter: cone is unbounded");
          },
      },
      set.variant());
}

Vector center_point(const ConvexSet& set) {
  const auto [lo, hi] = bounding_box(set);
  return project(set, 0.5 * (lo + hi));
}

Vector sample_uniform(const ConvexSet& set, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto dirichlet = [&](int k) {
    Vector w(k);
    for (int i = 0; i < k; ++i) w(i) = -std::log(1.0 - unif(rng));
    return Vector(w / w.sum());
  };
  return std::visit(
      Overloaded{
          [&](const Box& b) -> Vector {
            Vector x(b.lower.size());
            for (Eigen::Index i = 0; i < x.size(); ++i) {
              x(i) = b.lower(i) + unif(rng) * (b.upper(i) - b.lower(i));
            }
            return x;
          },
          [&](const Ball& b) -> Vector {
            std::normal_distribution<double> gauss(0.0, 1.0);
            const Eigen::Index d = b.center.size();
            Vector g(d);
            double n = 0.0;
            while (n < 1e-12) {
              for (Eigen::Index i = 0; i < d; ++i) g(i) = gauss(rng);
              n = g.norm();
            }
            const double r = b.radius * std::pow(unif(rng), 1.0 / static_cast<double>(d));
            return b.center + (r / n) * g;
          },
          [&](const Simplex& s) -> Vector { return dirichlet(s.dim); },
          [&](const HPolytope& P) -> Vector {
            if (P.full_dimensional) {
              for (int attempt = 0; attempt < 10000; ++attempt) {
                Vector x(P.lower.size());
                for (Eigen::Index i = 0; i < x.size(); ++i) {
                  x(i) = P.lower(i) + unif(rng) * (P.upper(i) - P.lower(i));
                }
                if (max_violation(P, x) <= 0.0) return x;
              }
            }
            const Vector w = dirichlet(static_cast<int>(P.vertices.size()));
            Vector x = Vector::Zero(P.lower.size());
            for (std::size_t i = 0; i < P.vertices.size(); ++i) {
              x += w(static_cast<Eigen::Index>(i)) * P.vertices[i];
            }
            return x;
          },
          [&](const PolyhedralCone&) -> Vector {
            throw Error(ErrorCode::UnsupportedVariant, "sample_uniform: cone is unbounded");
          },
      },
      set.variant());
}

Vector nnls(const Matrix& G, const Vector& b) {
  require_dims(G.rows(), b.size(), "nnls");
  const Eigen::Index n = G.cols();
  Vector x = Vector::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);
  const double tol = 1e-12 * std::max(1.0, G.norm() * b.norm());

  auto solve_passive = [&]() {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    }
    Matrix Gp(G.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) Gp.col(static_cast<Eigen::Index>(k)) = G.col(idx[k]);
    Vector sp = Gp.colPivHouseholderQr().solve(b);
    Vector s = Vector::Zero(n);
    for (std::size_t k = 0; k < idx.size(); ++k) s(idx[k]) = sp(static_cast<Eigen::Index>(k));
    return s;
  };

  for (int outer = 0; outer < 3 * static_cast<int>(n) + 10; ++outer) {
    const Vector w = G.transpose() * (b - G * x);
    Eigen::Index t = -1;
    double best = tol;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w(j) > best) {
        best = w(j);
        t = j;
      }
    }
    if (t < 0) break;
    passive[static_cast<std::size_t>(t)] = true;
    for (int inner = 0; inner < 3 * static_cast<int>(n) + 10; ++inner) {
      const Vector s = solve_passive();
      bool feasible = true;
      double alpha = 1.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && s(j) <= 0.0) {
          feasible = false;
          alpha = std::min(alpha, x(j) / (x(j) - s(j)));
        }
      }
      if (feasible) {
        x = s;
        break;
      }
      x += alpha * (s - x);
      for (Eigen::Index j = 0; j < n; ++j) {
        if (passive[static_cast<std::size_t>(j)] && x(j) <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          x(j) = 0.0;
        }
      }
    }
  }
  return x;
}

}  // namespace genvi
