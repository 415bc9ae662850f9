#ifndef QHELLY_HULL_HPP
#define QHELLY_HULL_HPP

#include "qhelly/core.hpp"

#include <optional>
#include <vector>

namespace qhelly {

/// A facet {x : normal . x = offset} with unit outward normal; `vertices`
/// lists every input point lying on it.
struct Facet {
  std::vector<int> vertices;
  Vec normal;
  double offset = 0.0;
};

struct HullResult {
  int dim = 0;
  /// Indices of the input points that are vertices of the hull, ascending.
  /// Coincident duplicates are represented by their lowest index.
  std::vector<int> extreme_indices;
  std::vector<Facet> facets;
  double volume = 0.0;

  /// Facet-based membership.
  bool contains(const Vec& x, double tol) const;
};

/// Gift-wrapping hull for affinely full-dimensional point sets, dim <= 8.
/// Throws DegenerateInput for lower-dimensional input.
HullResult convex_hull(const std::vector<Vec>& points);
HullResult convex_hull(const VPolytope& poly);

/// Lebesgue volume of conv(points) by cone decomposition from an interior point.
double volume(const std::vector<Vec>& points);
double volume(const VPolytope& poly);

/// Largest pairwise distance, scanned over the extreme points.
double diameter(const std::vector<Vec>& points);
double diameter(const VPolytope& poly);

/// Nonzero direction r with a_i . r <= 0 for all rows, if one exists.
/// Throws EmptyInterior when the polytope is empty.
std::optional<Vec> recession_direction(const HPolytope& poly);

/// Vertices by solving every dim-subset of rows. Throws Unbounded or
/// EmptyInterior (empty set) before enumerating.
VPolytope vertices_of_hpolytope(const HPolytope& poly);

}  // namespace qhelly

#endif  // QHELLY_HULL_HPP
