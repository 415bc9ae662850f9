#ifndef QHELLY_TESTS_HELPERS_HPP
#define QHELLY_TESTS_HELPERS_HPP

#include "qhelly/core.hpp"
#include "qhelly/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace qhelly::testing {

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

inline std::vector<Vec> cube_corners(int d, double r = 1.0) {
  std::vector<Vec> pts;
  for (int mask = 0; mask < (1 << d); ++mask) {
    Vec p(d);
    for (int i = 0; i < d; ++i) p(i) = (mask >> i) & 1 ? r : -r;
    pts.push_back(p);
  }
  return pts;
}

inline std::vector<Vec> cross_vertices(int d) {
  std::vector<Vec> pts;
  for (int i = 0; i < d; ++i) {
    pts.push_back(Vec::Unit(d, i));
    pts.push_back(-Vec::Unit(d, i));
  }
  return pts;
}

inline HPolytope cube_hrep(int d, double r = 1.0) {
  std::vector<Halfspace> rows;
  for (int i = 0; i < d; ++i) {
    rows.emplace_back(Vec::Unit(d, i), r);
    rows.emplace_back(-Vec::Unit(d, i), r);
  }
  return HPolytope(d, rows);
}

/// Regular simplex with centroid 0 and circumradius 1 (vertices are unit vectors).
inline std::vector<Vec> regular_simplex(int d) {
  const int n = d + 1;
  Mat e = Mat::Identity(n, n);
  const Vec center = Vec::Constant(n, 1.0 / n);
  // Orthonormal basis of the hyperplane sum = 0.
  Mat centered = e.colwise() - center;
  Eigen::HouseholderQR<Mat> qr(centered);
  const Mat q = qr.householderQ() * Mat::Identity(n, d);
  std::vector<Vec> pts;
  for (int i = 0; i < n; ++i) {
    Vec p = q.transpose() * centered.col(i);
    pts.push_back(p / p.norm());
  }
  return pts;
}

/// Facet halfspaces of the regular simplex with inradius 1 (outward unit normals).
inline HPolytope regular_simplex_hrep(int d) {
  std::vector<Halfspace> rows;
  for (const auto& v : regular_simplex(d)) rows.emplace_back(-v, 1.0);
  return HPolytope(d, rows);
}

inline std::vector<Vec> random_points(Rng& rng, int d, int n) {
  std::vector<Vec> pts;
  for (int i = 0; i < n; ++i) pts.push_back(rng.normal_vector(d));
  return pts;
}

inline Mat random_orthogonal(Rng& rng, int d) {
  Eigen::HouseholderQR<Mat> qr(rng.normal_matrix(d, d));
  return qr.householderQ() * Mat::Identity(d, d);
}

/// One-sided Hausdorff distance max_a min_b |a - b|.
inline double directed_hausdorff(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  double worst = 0.0;
  for (const auto& p : a) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : b) best = std::min(best, (p - q).norm());
    worst = std::max(worst, best);
  }
  return worst;
}

inline double hausdorff(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

inline double factorial(int n) { return std::tgamma(n + 1.0); }

}  // namespace qhelly::testing

#endif  // QHELLY_TESTS_HELPERS_HPP
