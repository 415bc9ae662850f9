#ifndef QHELLY_POLARITY_HPP
#define QHELLY_POLARITY_HPP

#include "qhelly/core.hpp"
#include "qhelly/hull.hpp"

#include <optional>
#include <vector>

namespace qhelly {

/// Polar of an H-polytope as points; source[k] is the halfspace that produced point k.
struct PolarVertices {
  VPolytope poly;
  std::vector<int> source;
};

/// Polar of a V-polytope as halfspaces; source[k] is the point that produced row k.
struct PolarHalfspaces {
  HPolytope poly;
  std::vector<int> source;
};

/// Minkowski functional value; `witness` holds convex weights over the body's
/// points that reproduce x / value.
struct GaugeValue {
  double value = 0.0;
  std::optional<Vec> witness;

  bool finite() const;
};

/// conv{a_i / b_i}. Throws OriginNotInterior if some normalized offset is <= eps.
PolarVertices polar_of_hrep(const HPolytope& poly);

/// {v . x <= 1} over the extreme points v. Throws OriginNotInterior.
PolarHalfspaces polar_of_vrep(const VPolytope& poly);
PolarHalfspaces polar_of_vrep(const VPolytope& poly, const HullResult& hull);

/// min {t >= 0 : x in t conv(Q)}, +inf when x is outside the cone over Q.
GaugeValue gauge(const VPolytope& poly, const Vec& x);

/// Minimal L1 residual |x - sum w_i q_i|_1 over convex weights w.
double containment_residual(const VPolytope& poly, const Vec& x);
/// x in conv(Q) up to `tol` (defaults to the global tolerance) in the L1 residual.
bool contains(const VPolytope& poly, const Vec& x, std::optional<double> tol = std::nullopt);

/// Origin is an interior point of conv(Q): every +-e_j has finite gauge.
bool origin_interior(const VPolytope& poly);
void require_origin_interior(const VPolytope& poly);

/// Smallest lambda with Q in -lambda Q, i.e. the largest gauge of a negated point.
double symmetry_constant(const VPolytope& poly);

}  // namespace qhelly

#endif  // QHELLY_POLARITY_HPP
