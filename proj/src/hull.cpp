#include "qhelly/hull.hpp"

#include "qhelly/lp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace qhelly {

namespace {

constexpr double kCoplanarTol = 1e-8;
constexpr std::size_t kMaxFacets = 200000;

// Hull of points in R^k; indices are local to `pts`.
struct LocalHull {
  std::vector<int> extreme;
  std::vector<Facet> facets;
  double volume = 0.0;
};

LocalHull hull_1d(const std::vector<Vec>& pts, double tol) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  int lo_i = -1;
  int hi_i = -1;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    const double v = pts[static_cast<std::size_t>(i)](0);
    if (v < lo) {
      lo = v;
      lo_i = i;
    }
    if (v > hi) {
      hi = v;
      hi_i = i;
    }
  }
  if (!(hi - lo > tol)) throw GeometryError(ErrorKind::DegenerateInput, "hull: points are affinely dependent");
  LocalHull out;
  Facet low{{}, -Vec::Ones(1), -lo};
  Facet high{{}, Vec::Ones(1), hi};
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    const double v = pts[static_cast<std::size_t>(i)](0);
    if (v <= lo + tol) low.vertices.push_back(i);
    if (v >= hi - tol) high.vertices.push_back(i);
  }
  out.facets = {low, high};
  out.extreme = {std::min(lo_i, hi_i), std::max(lo_i, hi_i)};
  out.volume = hi - lo;
  return out;
}

// Orthonormal basis of the hyperplane orthogonal to the unit vector n.
Mat complement_basis(const Vec& n) {
  const int k = static_cast<int>(n.size());
  const Mat column = n;
  Eigen::HouseholderQR<Mat> qr(column);
  const Mat q = qr.householderQ() * Mat::Identity(k, k);
  return q.rightCols(k - 1);
}

// Least-squares plane through the given points, oriented like the current normal.
void refit(const std::vector<Vec>& pts, Facet& f) {
  const int k = static_cast<int>(f.normal.size());
  if (static_cast<int>(f.vertices.size()) < k) return;
  Vec mean = Vec::Zero(k);
  for (int i : f.vertices) mean += pts[static_cast<std::size_t>(i)];
  mean /= static_cast<double>(f.vertices.size());
  Mat centered(k, static_cast<Eigen::Index>(f.vertices.size()));
  for (std::size_t c = 0; c < f.vertices.size(); ++c)
    centered.col(static_cast<Eigen::Index>(c)) = pts[static_cast<std::size_t>(f.vertices[c])] - mean;
  Eigen::JacobiSVD<Mat> svd(centered, Eigen::ComputeFullU);
  Vec n = svd.matrixU().col(k - 1);
  if (n.dot(f.normal) < 0.0) n = -n;
  f.normal = n.normalized();
  f.offset = f.normal.dot(mean);
}

std::vector<int> on_plane(const std::vector<Vec>& pts, const Vec& n, double b, double tol) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(pts.size()); ++i)
    if (std::abs(n.dot(pts[static_cast<std::size_t>(i)]) - b) <= tol) out.push_back(i);
  return out;
}

LocalHull hull_rec(const std::vector<Vec>& pts);

// First facet: a vertex of the polar {y : (p_i - c).y <= 1} under a generic objective.
Facet seed_facet(const std::vector<Vec>& pts, const Vec& c, double tol) {
  const int k = static_cast<int>(c.size());
  lp::Problem p(k);
  for (int j = 0; j < k; ++j) p.objective(j) = 1.0 / std::sqrt(static_cast<double>(j) + 1.7);
  for (const auto& q : pts) p.add_inequality(q - c, 1.0);
  const auto sol = lp::solve(p);
  if (!sol.optimal()) throw GeometryError(ErrorKind::NumericalFailure, "hull: seed facet LP failed");
  const double len = sol.x.norm();
  Facet f;
  f.normal = sol.x / len;
  f.offset = f.normal.dot(c) + 1.0 / len;
  f.vertices = on_plane(pts, f.normal, f.offset, tol);
  refit(pts, f);
  f.vertices = on_plane(pts, f.normal, f.offset, tol);
  return f;
}

LocalHull hull_rec(const std::vector<Vec>& pts) {
  if (pts.empty()) throw GeometryError(ErrorKind::DegenerateInput, "hull: no points");
  const int k = static_cast<int>(pts[0].size());
  Vec c = Vec::Zero(k);
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  double radius = 0.0;
  for (const auto& p : pts) radius = std::max(radius, (p - c).norm());
  const double tol = kCoplanarTol * std::max(1.0, radius);
  if (k == 1) return hull_1d(pts, tol);
  if (k > 8) throw GeometryError(ErrorKind::InvalidArgument, "hull: dimension above 8");
  if (static_cast<int>(pts.size()) <= k) throw GeometryError(ErrorKind::DegenerateInput, "hull: too few points");

  Mat centered(k, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) centered.col(static_cast<Eigen::Index>(i)) = pts[i] - c;
  Eigen::JacobiSVD<Mat> svd(centered);
  if (!(svd.singularValues()(k - 1) > tol)) {
    throw GeometryError(ErrorKind::DegenerateInput, "hull: points are affinely dependent");
  }

  LocalHull out;
  std::set<std::vector<int>> seen;
  std::deque<Facet> queue;
  Facet first = seed_facet(pts, c, tol);
  seen.insert(first.vertices);
  queue.push_back(std::move(first));
  std::set<int> extreme;

  while (!queue.empty()) {
    Facet f = std::move(queue.front());
    queue.pop_front();

    // The facet's own hull in its hyperplane gives the ridges.
    const Mat basis = complement_basis(f.normal);
    const Vec origin = pts[static_cast<std::size_t>(f.vertices.front())];
    std::vector<Vec> local;
    local.reserve(f.vertices.size());
    for (int i : f.vertices) local.push_back(basis.transpose() * (pts[static_cast<std::size_t>(i)] - origin));
    LocalHull sub = hull_rec(local);

    for (int e : sub.extreme) extreme.insert(f.vertices[static_cast<std::size_t>(e)]);
    out.volume += (f.offset - f.normal.dot(c)) * sub.volume / static_cast<double>(k);

    std::vector<bool> in_facet(pts.size(), false);
    for (int i : f.vertices) in_facet[static_cast<std::size_t>(i)] = true;

    for (const auto& ridge : sub.facets) {
      const Vec w = basis * ridge.normal;
      const Vec r0 = pts[static_cast<std::size_t>(f.vertices[static_cast<std::size_t>(ridge.vertices.front())])];
      // Rotate the facet plane about the ridge until it meets another point.
      int best = -1;
      double best_ratio = -std::numeric_limits<double>::infinity();
      double best_alpha = 0.0;
      double best_beta = 0.0;
      for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        if (in_facet[static_cast<std::size_t>(i)]) continue;
        const Vec q = pts[static_cast<std::size_t>(i)] - r0;
        const double alpha = f.normal.dot(q);
        if (alpha >= -tol) continue;
        const double beta = w.dot(q);
        const double ratio = beta / -alpha;
        if (ratio > best_ratio) {
          best_ratio = ratio;
          best = i;
          best_alpha = alpha;
          best_beta = beta;
        }
      }
      if (best < 0) throw GeometryError(ErrorKind::NumericalFailure, "hull: ridge without neighbour");
      Facet g;
      g.normal = (best_beta * f.normal - best_alpha * w).normalized();
      g.offset = g.normal.dot(r0);
      g.vertices = on_plane(pts, g.normal, g.offset, tol);
      refit(pts, g);
      g.vertices = on_plane(pts, g.normal, g.offset, tol);
      if (seen.insert(g.vertices).second) {
        if (seen.size() > kMaxFacets) throw GeometryError(ErrorKind::NumericalFailure, "hull: facet explosion");
        queue.push_back(std::move(g));
      }
    }
    out.facets.push_back(std::move(f));
  }

  // Coincident points: keep the lowest index as the representative.
  for (int e : extreme) {
    bool duplicate = false;
    for (int kept : out.extreme) {
      if ((pts[static_cast<std::size_t>(kept)] - pts[static_cast<std::size_t>(e)]).norm() <= tol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) out.extreme.push_back(e);
  }
  std::sort(out.extreme.begin(), out.extreme.end());
  return out;
}

}  // namespace

bool HullResult::contains(const Vec& x, double tol) const {
  for (const auto& f : facets)
    if (f.normal.dot(x) > f.offset + tol) return false;
  return true;
}

HullResult convex_hull(const std::vector<Vec>& points) {
  if (points.empty()) throw GeometryError(ErrorKind::DegenerateInput, "hull: no points");
  const int d = static_cast<int>(points[0].size());
  for (const auto& p : points) {
    if (p.size() != d) throw GeometryError(ErrorKind::InvalidArgument, "hull: mixed dimensions");
  }
  LocalHull local = hull_rec(points);
  HullResult out;
  out.dim = d;
  out.extreme_indices = std::move(local.extreme);
  out.facets = std::move(local.facets);
  out.volume = local.volume;
  return out;
}

HullResult convex_hull(const VPolytope& poly) { return convex_hull(poly.points()); }

double volume(const std::vector<Vec>& points) { return convex_hull(points).volume; }
double volume(const VPolytope& poly) { return volume(poly.points()); }

double diameter(const std::vector<Vec>& points) {
  if (points.empty()) throw GeometryError(ErrorKind::InvalidArgument, "diameter: no points");
  std::vector<int> candidates;
  try {
    candidates = convex_hull(points).extreme_indices;
  } catch (const GeometryError& e) {
    if (e.kind() != ErrorKind::DegenerateInput) throw;
    candidates.resize(points.size());
    std::iota(candidates.begin(), candidates.end(), 0);
  }
  double best = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j = i + 1; j < candidates.size(); ++j)
      best = std::max(best, (points[static_cast<std::size_t>(candidates[i])] -
                             points[static_cast<std::size_t>(candidates[j])]).norm());
  return best;
}

double diameter(const VPolytope& poly) { return diameter(poly.points()); }

std::optional<Vec> recession_direction(const HPolytope& poly) {
  const int d = poly.dim();
  for (int j = 0; j < d; ++j) {
    for (double s : {1.0, -1.0}) {
      lp::Problem p(d);
      p.objective = s * Vec::Unit(d, j);
      p.ineq_lhs = poly.normals();
      p.ineq_rhs = poly.offsets();
      const auto sol = lp::solve(p);
      if (sol.status == lp::Status::Infeasible) {
        throw GeometryError(ErrorKind::EmptyInterior, "polytope is empty");
      }
      if (sol.status == lp::Status::Unbounded) return Vec(sol.ray.normalized());
      if (!sol.optimal()) throw GeometryError(ErrorKind::NumericalFailure, "boundedness LP failed");
    }
  }
  return std::nullopt;
}

VPolytope vertices_of_hpolytope(const HPolytope& poly) {
  if (recession_direction(poly)) throw GeometryError(ErrorKind::Unbounded, "H-polytope is unbounded");
  const int d = poly.dim();
  const int m = static_cast<int>(poly.size());
  std::vector<Halfspace> rows;
  rows.reserve(poly.size());
  for (const auto& h : poly.halfspaces()) rows.push_back(h.normalized());
  const double eps = tolerance();

  std::vector<Vec> found;
  std::vector<int> pick(static_cast<std::size_t>(m), 0);
  std::fill(pick.begin(), pick.begin() + std::min(d, m), 1);
  Mat a(d, d);
  Vec b(d);
  do {
    int r = 0;
    for (int i = 0; i < m; ++i) {
      if (!pick[static_cast<std::size_t>(i)]) continue;
      a.row(r) = rows[static_cast<std::size_t>(i)].normal.transpose();
      b(r) = rows[static_cast<std::size_t>(i)].offset;
      ++r;
    }
    Eigen::FullPivLU<Mat> lu(a);
    lu.setThreshold(1e-10);
    if (lu.rank() < d) continue;
    const Vec x = lu.solve(b);
    bool feasible = true;
    for (const auto& h : rows) {
      if (h.slack(x) < -eps * (1.0 + std::abs(h.offset))) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    const bool duplicate = std::any_of(found.begin(), found.end(), [&](const Vec& y) {
      return (y - x).norm() <= eps * std::max(1.0, x.norm());
    });
    if (!duplicate) found.push_back(x);
  } while (std::prev_permutation(pick.begin(), pick.end()));

  if (found.empty()) throw GeometryError(ErrorKind::EmptyInterior, "H-polytope has no vertices");
  return VPolytope(d, std::move(found));
}

}  // namespace qhelly
