#ifndef QHELLY_ORACLE_HPP
#define QHELLY_ORACLE_HPP

/*! \file
    \brief Brute-force ground truth for small instances: exact containment
    factors, best subsets by exhaustive enumeration, Monte Carlo volumes and
    certificate mutation checks.
*/

#include "qhelly/core.hpp"
#include "qhelly/random.hpp"
#include "qhelly/sparse_select.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qhelly {

/// Smallest mu with Q in -mu Q', i.e. the largest gauge of -w in Q' over w in Q.
/// Throws OriginNotInterior when 0 is not interior to Q'.
double min_containment_factor(const VPolytope& q, const VPolytope& qprime);

enum class Objective { Diameter, Volume, ContainmentFactor };

const char* to_string(Objective objective);
/// Accepts "diam", "vol", "factor" and the enumerator names.
Objective objective_from_string(const std::string& name);

struct OracleResult {
  std::vector<int> best_sigma;
  /// Ratio to K for Diameter/Volume, mu* for ContainmentFactor; +inf if nothing scored.
  double best_value = 0.0;
  /// Number of subsets enumerated, including the empty one.
  std::int64_t evaluated = 0;
  Objective objective = Objective::Diameter;
};

/// Sum of C(n, j) for j <= k, saturating at INT64_MAX.
std::int64_t subsets_up_to(int n, int k);

/// Every subfamily of at most k halfspaces, scored by the diam or vol ratio to
/// K. Unbounded subfamilies score +inf. Throws BudgetExceeded when there are
/// more than `budget` subsets.
OracleResult best_halfspace_subset(const HPolytope& family, int k, Objective objective,
                                   std::int64_t budget = 10'000'000);

/// Every subset of at most k points, scored by min_containment_factor; subsets
/// without 0 in their interior score +inf.
OracleResult best_vertex_subset(const VPolytope& q, int k, std::int64_t budget = 10'000'000);

/// Membership applied to `samples` uniform points in the bounding box of K.
struct MonteCarloVolume {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::int64_t samples = 0;
  std::int64_t hits = 0;
};

MonteCarloVolume monte_carlo_volume(const HPolytope& k, std::int64_t samples, Rng& rng);

struct MutationOutcome {
  std::string mutation;
  /// Whether a correct verifier must reject; empty when the mutation does not apply.
  std::optional<bool> should_reject;
  VerifyResult result;

  bool rejected() const { return !result.ok; }
  /// Verifier agrees with should_reject (trivially true when not applicable).
  bool agrees() const { return !should_reject || *should_reject == rejected(); }
};

/// Applies drop_simplex_vertex, halve_factor, perturb_y, double_factor and
/// unchanged to a valid certificate and re-verifies each.
std::vector<MutationOutcome> mutate_and_check(const SelectionCertificate& cert, const VPolytope& q);

}  // namespace qhelly

#endif  // QHELLY_ORACLE_HPP
