#include "qhelly/polarity.hpp"

#include "qhelly/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qhelly {

bool GaugeValue::finite() const { return std::isfinite(value); }

PolarVertices polar_of_hrep(const HPolytope& poly) {
  const double eps = tolerance();
  std::vector<Vec> pts;
  std::vector<int> source;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Halfspace h = poly[i].normalized();
    if (!(h.offset > eps)) {
      throw GeometryError(ErrorKind::OriginNotInterior, "polar: origin is not interior to halfspace " + std::to_string(i));
    }
    pts.push_back(h.normal / h.offset);
    source.push_back(static_cast<int>(i));
  }
  return {VPolytope(poly.dim(), std::move(pts)), std::move(source)};
}

PolarHalfspaces polar_of_vrep(const VPolytope& poly) { return polar_of_vrep(poly, convex_hull(poly)); }

PolarHalfspaces polar_of_vrep(const VPolytope& poly, const HullResult& hull) {
  const double eps = tolerance();
  for (const auto& f : hull.facets) {
    if (!(f.offset > eps)) throw GeometryError(ErrorKind::OriginNotInterior, "polar: origin is not interior");
  }
  std::vector<Halfspace> rows;
  std::vector<int> source;
  for (int i : hull.extreme_indices) {
    rows.emplace_back(poly[static_cast<std::size_t>(i)], 1.0);
    source.push_back(i);
  }
  return {HPolytope(poly.dim(), std::move(rows)), std::move(source)};
}

GaugeValue gauge(const VPolytope& poly, const Vec& x) {
  if (x.size() != poly.dim()) throw GeometryError(ErrorKind::InvalidArgument, "gauge: dimension mismatch");
  if (x.norm() == 0.0) return {0.0, std::nullopt};
  const int n = static_cast<int>(poly.size());
  const int d = poly.dim();
  // Variables: weights lambda_1..n, then t.
  lp::Problem p(n + 1);
  p.sense = lp::Sense::Minimize;
  p.objective(n) = 1.0;
  for (int r = 0; r < d; ++r) {
    Vec row = Vec::Zero(n + 1);
    for (int i = 0; i < n; ++i) row(i) = poly[static_cast<std::size_t>(i)](r);
    p.add_equality(row, x(r));
  }
  Vec sum = Vec::Ones(n + 1);
  sum(n) = -1.0;
  p.add_equality(sum, 0.0);
  p.set_nonnegative();
  const auto sol = lp::solve(p);
  if (sol.status == lp::Status::Infeasible) return {std::numeric_limits<double>::infinity(), std::nullopt};
  if (!sol.optimal()) throw GeometryError(ErrorKind::NumericalFailure, std::string("gauge LP: ") + lp::to_string(sol.status));
  const double t = sol.x(n);
  if (!(t > 0.0)) return {std::numeric_limits<double>::infinity(), std::nullopt};
  Vec w = sol.x.head(n) / t;
  return {t, std::move(w)};
}

double containment_residual(const VPolytope& poly, const Vec& x) {
  if (x.size() != poly.dim()) throw GeometryError(ErrorKind::InvalidArgument, "contains: dimension mismatch");
  const int n = static_cast<int>(poly.size());
  const int d = poly.dim();
  // Variables: weights (n), positive residuals (d), negative residuals (d).
  lp::Problem p(n + 2 * d);
  p.sense = lp::Sense::Minimize;
  p.objective.tail(2 * d).setOnes();
  for (int r = 0; r < d; ++r) {
    Vec row = Vec::Zero(n + 2 * d);
    for (int i = 0; i < n; ++i) row(i) = poly[static_cast<std::size_t>(i)](r);
    row(n + r) = 1.0;
    row(n + d + r) = -1.0;
    p.add_equality(row, x(r));
  }
  Vec sum = Vec::Zero(n + 2 * d);
  sum.head(n).setOnes();
  p.add_equality(sum, 1.0);
  p.set_nonnegative();
  const auto sol = lp::solve(p);
  if (!sol.optimal()) throw GeometryError(ErrorKind::NumericalFailure, std::string("membership LP: ") + lp::to_string(sol.status));
  return std::max(0.0, sol.value);
}

bool contains(const VPolytope& poly, const Vec& x, std::optional<double> tol) {
  return containment_residual(poly, x) <= tol.value_or(tolerance());
}

bool origin_interior(const VPolytope& poly) {
  const double limit = 1.0 / tolerance();
  for (int j = 0; j < poly.dim(); ++j) {
    for (double s : {1.0, -1.0}) {
      const auto g = gauge(poly, s * Vec::Unit(poly.dim(), j));
      if (!(g.value < limit)) return false;
    }
  }
  return true;
}

void require_origin_interior(const VPolytope& poly) {
  if (!origin_interior(poly)) throw GeometryError(ErrorKind::OriginNotInterior, "origin is not an interior point");
}

double symmetry_constant(const VPolytope& poly) {
  require_origin_interior(poly);
  // The max of the convex gauge over conv(Q) is attained at a point of Q, so
  // scanning every point equals scanning the extreme ones.
  double lambda = 0.0;
  for (const auto& v : poly.points()) lambda = std::max(lambda, gauge(poly, -v).value);
  return lambda;
}

}  // namespace qhelly
