#ifndef QHELLY_SPARSE_SELECT_HPP
#define QHELLY_SPARSE_SELECT_HPP

/*! \file
    \brief Sparse vertex selection: for a polytope Q with 0 inside and
    Q in -lambda Q, pick at most 2d vertices whose hull Q' satisfies
    Q in -(lambda + 2) d Q'.

    Pipeline: max_simplex -> parallelotope -> boundary_point ->
    caratheodory_select. The selected set is the simplex vertices plus the
    Caratheodory vertices of the boundary point y on the ray through -u.
    The certificate stores every intermediate so that verify_certificate
    can re-check the containment chain
        Q in P in S' = -2d S + d u in -(lambda + 2) d Q'
    without trusting the selection code.
*/

#include "qhelly/core.hpp"
#include "qhelly/hull.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qhelly {

enum class SimplexMode { GlobalExhaustive, LocalSwap };

const char* to_string(SimplexMode mode);
SimplexMode simplex_mode_from_string(const std::string& name);

struct SimplexChoice {
  /// Indices into Q of v_1..v_d.
  std::vector<int> indices;
  /// |det(v_1 ... v_d)| / d!
  double volume = 0.0;
  SimplexMode mode = SimplexMode::LocalSwap;
};

/// The parallelotope {sum beta_i v_i : beta_i in [-1, 1]} in both representations.
struct Parallelotope {
  /// Columns are v_1..v_d.
  Mat generators;
  /// The 2d strip inequalities |(A^-T e_i) . x| <= 1.
  HPolytope strips;
  /// The 2^d corners; empty for d > 8.
  std::vector<Vec> corners;

  /// Coordinates of x in the generator basis.
  Vec coordinates(const Vec& x) const;
  bool contains(const Vec& x, double tol) const;
};

struct BoundaryPoint {
  Vec u;
  Vec y;
  /// Set when u vanished numerically and -v_1 was used as the ray direction.
  bool fallback = false;
};

struct CaratheodoryChoice {
  std::vector<int> indices;
  Vec weights;
  /// Hull facet used, -1 when the all-vertex system was needed.
  int facet = -1;
  /// Set when the facet-restricted system failed; support may then be d + 1.
  bool fallback = false;
};

struct SelectionCertificate {
  int dim = 0;
  SimplexChoice simplex;
  std::vector<int> carath_indices;
  Vec carath_weights;
  Vec u;
  Vec y;
  double lambda_measured = 0.0;
  double lambda_used = 0.0;
  /// (lambda_used + 2) d
  double factor = 0.0;
  /// Sorted union of the simplex and Caratheodory indices.
  std::vector<int> qprime_indices;
  bool u_fallback = false;
  bool carath_fallback = false;
  /// Result of the mandatory verify_certificate pass.
  bool verified = false;
};

struct VerifyResult {
  bool ok = false;
  /// "structure", "a", "b", "c", "d" or "consistency"; empty when ok.
  std::string failed_check;
  std::string detail;
};

SimplexChoice max_simplex(const VPolytope& q, SimplexMode mode);
/// Restricts the search to `candidates` (normally the extreme points of Q).
SimplexChoice max_simplex(const VPolytope& q, const std::vector<int>& candidates, SimplexMode mode);

/// Throws DegenerateInput if the generators are linearly dependent.
Parallelotope parallelotope(const std::vector<Vec>& generators);
Parallelotope parallelotope(const VPolytope& q, const SimplexChoice& simplex);

/// Every point of Q lies in the parallelotope of the simplex.
bool check_local_maximality_gives_P(const VPolytope& q, const SimplexChoice& simplex);

BoundaryPoint boundary_point(const VPolytope& q, const SimplexChoice& simplex);

/// At most d points of Q whose hull contains the boundary point y.
CaratheodoryChoice caratheodory_select(const VPolytope& q, const Vec& y);
CaratheodoryChoice caratheodory_select(const VPolytope& q, const HullResult& hull, const Vec& y);

/// Throws OriginNotInterior. `lambda` is raised to the measured symmetry
/// constant if smaller.
SelectionCertificate sparse_approx(const VPolytope& q, std::optional<double> lambda = std::nullopt,
                                   SimplexMode mode = SimplexMode::LocalSwap);

/// Re-checks a certificate with linear algebra and LP memberships only.
VerifyResult verify_certificate(const VPolytope& q, const SelectionCertificate& cert);

}  // namespace qhelly

#endif  // QHELLY_SPARSE_SELECT_HPP
