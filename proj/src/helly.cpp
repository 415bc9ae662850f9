#include "qhelly/helly.hpp"

#include "qhelly/hull.hpp"
#include "qhelly/polarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

namespace qhelly {

namespace {

constexpr double kRatioSlack = 1e-3;

struct Measure {
  double volume = 0.0;
  double diameter = 0.0;
};

Measure measure(const VPolytope& vertices) {
  const HullResult hull = convex_hull(vertices);
  Measure m;
  m.volume = hull.volume;
  const auto& ext = hull.extreme_indices;
  for (std::size_t i = 0; i < ext.size(); ++i)
    for (std::size_t j = i + 1; j < ext.size(); ++j)
      m.diameter = std::max(m.diameter, (vertices[static_cast<std::size_t>(ext[i])] -
                                         vertices[static_cast<std::size_t>(ext[j])]).norm());
  return m;
}

// Scale-aware membership along unit normals.
bool satisfies(const HPolytope& h, const Vec& x) {
  for (const auto& row : h.halfspaces()) {
    const Halfspace n = row.normalized();
    if (n.slack(x) < -1e-8 * std::max({1.0, std::abs(n.offset), x.norm()})) return false;
  }
  return true;
}

}  // namespace

NormalizedFamily normalize_family(const HPolytope& family, const NormalizeOptions& options) {
  // Throws Unbounded or EmptyInterior.
  chebyshev_center(family);
  const double eps = tolerance();
  std::vector<Halfspace> rows;
  NormalizedFamily out{family, {}, {}};
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Halfspace h = family[i].normalized();
    int merged = -1;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if ((rows[r].normal - h.normal).cwiseAbs().maxCoeff() <= eps &&
          std::abs(rows[r].offset - h.offset) <= eps * (1.0 + std::abs(h.offset))) {
        merged = static_cast<int>(r);
        break;
      }
    }
    if (merged < 0) {
      merged = static_cast<int>(rows.size());
      rows.push_back(h);
      out.original_of.push_back(static_cast<int>(i));
    }
    out.row_of.push_back(merged);
  }

  if (options.prune_redundant) {
    const HPolytope full(family.dim(), rows);
    const VPolytope verts = vertices_of_hpolytope(full);
    std::vector<int> keep;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const bool active = std::any_of(verts.points().begin(), verts.points().end(), [&](const Vec& v) {
        return rows[r].slack(v) <= 1e-8 * std::max(1.0, v.norm());
      });
      if (active) keep.push_back(static_cast<int>(r));
    }
    std::vector<int> new_index(rows.size(), -1);
    std::vector<Halfspace> kept;
    std::vector<int> original;
    for (int r : keep) {
      new_index[static_cast<std::size_t>(r)] = static_cast<int>(kept.size());
      kept.push_back(rows[static_cast<std::size_t>(r)]);
      original.push_back(out.original_of[static_cast<std::size_t>(r)]);
    }
    for (int& r : out.row_of) r = new_index[static_cast<std::size_t>(r)];
    rows = std::move(kept);
    out.original_of = std::move(original);
  }
  out.poly = HPolytope(family.dim(), std::move(rows));
  return out;
}

double explicit_volume_ratio_bound(int d) {
  const double dd = d;
  return std::pow(std::numbers::pi, dd / 2) * std::pow(dd, 2.5 * dd) / std::sqrt(std::tgamma(dd + 1)) /
         std::tgamma(dd / 2 + 1);
}

double simplex_volume_floor(int d) {
  const double dd = d;
  return 1.0 / (std::sqrt(std::tgamma(dd + 1)) * std::pow(dd, dd / 2));
}

bool HellyReport::bounds_hold() const {
  const int d = dim;
  bool ok = static_cast<int>(sigma.size()) <= 2 * d && ksigma_bounded && k_in_ksigma && containment_transfer &&
            santalo_ok && certificate.verified && diam_Ksigma <= diam_bound * (1 + kRatioSlack);
  if (certificate.simplex.mode == SimplexMode::GlobalExhaustive) {
    ok = ok && vol_Ksigma <= vol_bound_explicit * (1 + kRatioSlack) && dr_floor_ok.value_or(false);
  }
  return ok;
}

HellyReport helly_subset(const HPolytope& family, const HellyOptions& options) {
  const int d = family.dim();
  if (d < 2) throw GeometryError(ErrorKind::InvalidArgument, "helly_subset: dimension must be at least 2");
  const NormalizedFamily nf = normalize_family(family);
  const JohnPosition jp = to_john_position(nf.poly, options.john);
  const PolarVertices polar = polar_of_hrep(jp.body);

  HellyReport r;
  r.dim = d;
  r.john_quality = jp.john.quality;
  r.certificate = sparse_approx(polar.poly, std::nullopt, options.mode);
  r.lambda_measured = r.certificate.lambda_measured;

  std::vector<int> rows;
  std::set<int> sigma;
  for (int k : r.certificate.qprime_indices) {
    const int row = polar.source[static_cast<std::size_t>(k)];
    rows.push_back(row);
    sigma.insert(nf.original_of[static_cast<std::size_t>(row)]);
  }
  r.sigma.assign(sigma.begin(), sigma.end());

  const VPolytope k_vertices = vertices_of_hpolytope(family);
  const Measure mk = measure(k_vertices);
  r.diam_K = mk.diameter;
  r.vol_K = mk.volume;
  r.diam_bound = 2.0 * d * d * r.diam_K;
  r.vol_bound_explicit = explicit_volume_ratio_bound(d) * r.vol_K;

  const HPolytope ksigma = family.subset(r.sigma);
  const double inf = std::numeric_limits<double>::infinity();
  if (recession_direction(ksigma)) {
    r.ksigma_bounded = false;
    r.diam_Ksigma = inf;
    r.vol_Ksigma = inf;
  } else {
    const Measure ms = measure(vertices_of_hpolytope(ksigma));
    r.diam_Ksigma = ms.diameter;
    r.vol_Ksigma = ms.volume;
  }
  r.k_in_ksigma = std::all_of(k_vertices.points().begin(), k_vertices.points().end(),
                              [&](const Vec& v) { return satisfies(ksigma, v); });

  // Transfer in John coordinates: every vertex x of the selected body has -x/factor in the body.
  const HPolytope body_sigma = jp.body.subset(rows);
  if (r.ksigma_bounded && !recession_direction(body_sigma)) {
    const VPolytope tv = vertices_of_hpolytope(body_sigma);
    r.containment_transfer = std::all_of(tv.points().begin(), tv.points().end(), [&](const Vec& x) {
      return satisfies(jp.body, -x / r.certificate.factor);
    });
  }

  if (d <= 4) {
    const Parallelotope p = parallelotope(polar.poly, r.certificate.simplex);
    const VPolytope corners(d, p.corners);
    const double vp = volume(corners);
    const double vpolar = volume(vertices_of_hpolytope(polar_of_vrep(corners).poly));
    r.santalo_product = vp * vpolar;
    const double ball = unit_ball_volume(d);
    r.santalo_ok = r.santalo_product <= ball * ball * (1 + kRatioSlack);
  } else {
    r.santalo_product = std::numeric_limits<double>::quiet_NaN();
  }

  if (options.mode == SimplexMode::GlobalExhaustive) {
    r.dr_floor_ok = r.certificate.simplex.volume >= simplex_volume_floor(d) * (1 - 1e-9);
  }
  return r;
}

Ratios metrics(const HPolytope& k, const HPolytope& ksigma) {
  const Measure a = measure(vertices_of_hpolytope(k));
  const Measure b = measure(vertices_of_hpolytope(ksigma));
  return {b.volume / a.volume, b.diameter / a.diameter};
}

}  // namespace qhelly
