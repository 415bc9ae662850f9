#ifndef QHELLY_GENERATE_HPP
#define QHELLY_GENERATE_HPP

#include "qhelly/core.hpp"
#include "qhelly/random.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qhelly {

/// A generated body; at least one representation is set.
struct Instance {
  std::string kind;
  int dim = 0;
  std::optional<HPolytope> hrep;
  std::optional<VPolytope> vrep;
};

/// cube, cross, simplex-john, tangent-halfspaces, random-vpoly, random-symmetric-vpoly.
const std::vector<std::string>& instance_kinds();

/// Deterministic in (kind, d, n, seed). `n` is ignored by the fixed shapes.
/// Throws InvalidArgument for an unknown kind or bad sizes.
Instance generate(const std::string& kind, int d, int n, std::uint64_t seed);

/// d + 1 unit vectors summing to zero with pairwise products -1/d.
std::vector<Vec> regular_simplex_directions(int d);

/// {u_i . x <= 1} with u_i uniform on the sphere, resampled until bounded.
HPolytope tangent_halfspaces(Rng& rng, int d, int n);
/// Gaussian cloud plus a random shift, resampled until 0 is interior with
/// every facet at distance >= 1e-2 from it.
VPolytope random_vpoly(Rng& rng, int d, int n);
/// n / 2 Gaussian points and their negatives (n rounded up to even, at least 2d).
VPolytope random_symmetric_vpoly(Rng& rng, int d, int n);

}  // namespace qhelly

#endif  // QHELLY_GENERATE_HPP
