#ifndef QHELLY_JOHN_HPP
#define QHELLY_JOHN_HPP

#include "qhelly/core.hpp"

#include <optional>

namespace qhelly {

struct JohnOptions {
  /// Barrier continuation stops once the log-det duality gap bound m/t
  /// falls below this value.
  double gap = 1e-10;
  /// Newton step cap per centering stage.
  int max_newton_steps = 200;
  /// Enumerate the vertices of the normalized body for the outer radius only
  /// when C(m, d) stays below this.
  double vertex_budget = 2e6;
};

struct JohnResult {
  Ellipsoid ellipsoid;
  /// x -> shape^-1 (x - center): sends the ellipsoid to the unit ball.
  AffineMap transform;
  /// min over rows of the normalized offsets of the transformed body (>= 1 - 1e-6 expected).
  double quality = 0.0;
  /// Max vertex norm of the transformed body when its vertices were enumerated.
  std::optional<double> outer_radius;
  /// Symmetry constant of the polar of the transformed body.
  std::optional<double> lambda_measured;
  int newton_steps = 0;
  double log_det = 0.0;
};

struct JohnPosition {
  JohnResult john;
  /// The transformed body with unit normals.
  HPolytope body;
};

/// Largest-volume ellipsoid {c + E z : |z| <= 1} inside the polytope,
/// via a log-barrier Newton method on  max log det E  s.t.  |E a_i| + a_i.c <= b_i.
/// Throws Unbounded or EmptyInterior.
Ellipsoid max_inscribed_ellipsoid(const HPolytope& poly, const JohnOptions& options = {});

/// Affine image of the polytope whose inscribed ellipsoid of maximal volume is
/// the unit ball, along with measured quality, outer radius and symmetry constant.
JohnPosition to_john_position(const HPolytope& poly, const JohnOptions& options = {});

/// Center and radius of the largest inscribed ball. Throws Unbounded or EmptyInterior.
std::pair<Vec, double> chebyshev_center(const HPolytope& poly);

}  // namespace qhelly

#endif  // QHELLY_JOHN_HPP
