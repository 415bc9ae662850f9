#ifndef QHELLY_HELLY_HPP
#define QHELLY_HELLY_HPP

/*! \file
    \brief Quantitative Helly selection for halfspace families: pick at most
    2d halfspaces whose intersection K_sigma is not much larger than K.

    The pipeline moves K to John position, takes the polar point set
    Q = {a_i / b_i}, runs sparse_approx on Q and maps the selected points
    back to their source halfspaces. All reported metrics are computed in
    the caller's coordinates.
*/

#include "qhelly/core.hpp"
#include "qhelly/john.hpp"
#include "qhelly/sparse_select.hpp"

#include <vector>

namespace qhelly {

struct NormalizedFamily {
  /// Unit-normal rows, duplicates removed.
  HPolytope poly;
  /// original_of[r] is the first input index that produced row r.
  std::vector<int> original_of;
  /// row_of[i] is the row that input index i was merged into.
  std::vector<int> row_of;
};

struct NormalizeOptions {
  /// Also drop rows whose halfspace contains every vertex strictly.
  bool prune_redundant = false;
};

/// Throws EmptyInterior or Unbounded.
NormalizedFamily normalize_family(const HPolytope& family, const NormalizeOptions& options = {});

/// pi^{d/2} d^{5d/2} (d!)^{-1/2} / Gamma(d/2 + 1).
double explicit_volume_ratio_bound(int d);
/// 1 / (sqrt(d!) d^{d/2}).
double simplex_volume_floor(int d);

struct HellyReport {
  int dim = 0;
  /// Indices into the input family, ascending.
  std::vector<int> sigma;
  double diam_K = 0.0;
  double diam_Ksigma = 0.0;
  double vol_K = 0.0;
  double vol_Ksigma = 0.0;
  /// 2 d^2 diam_K
  double diam_bound = 0.0;
  /// explicit_volume_ratio_bound(d) * vol_K
  double vol_bound_explicit = 0.0;
  double lambda_measured = 0.0;
  SelectionCertificate certificate;

  /// False when K_sigma came out unbounded; metrics are then +inf.
  bool ksigma_bounded = true;
  /// Every vertex of K satisfies the selected inequalities.
  bool k_in_ksigma = false;
  /// In John coordinates, every vertex x of K_sigma has -x / factor in K.
  bool containment_transfer = false;
  /// vol(P) vol(P polar) for the certificate's parallelotope; NaN when d > 4.
  double santalo_product = 0.0;
  bool santalo_ok = true;
  /// Set only in GlobalExhaustive mode.
  std::optional<bool> dr_floor_ok;
  double john_quality = 0.0;

  double diam_ratio() const { return diam_Ksigma / diam_K; }
  double vol_ratio() const { return vol_Ksigma / vol_K; }
  /// |sigma| <= 2d, bounded, K in K_sigma, diameter within 2d^2 (1 + 1e-3),
  /// transfer and Santalo checks, and (exhaustive only) the volume bound and DR floor.
  bool bounds_hold() const;
};

struct HellyOptions {
  SimplexMode mode = SimplexMode::LocalSwap;
  JohnOptions john;
};

HellyReport helly_subset(const HPolytope& family, const HellyOptions& options = {});

struct Ratios {
  double volume = 0.0;
  double diameter = 0.0;
};

/// vol and diam of K_sigma relative to K; both must be bounded.
Ratios metrics(const HPolytope& k, const HPolytope& ksigma);

}  // namespace qhelly

#endif  // QHELLY_HELLY_HPP
