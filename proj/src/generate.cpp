#include "qhelly/generate.hpp"

#include "qhelly/hull.hpp"

#include <algorithm>

namespace qhelly {

namespace {

constexpr int kMaxResample = 10000;

void require_sizes(int d, int n, int min_n) {
  if (d < 1 || d > 8) throw GeometryError(ErrorKind::InvalidArgument, "generate: dimension must be in [1, 8]");
  if (n < min_n) {
    throw GeometryError(ErrorKind::InvalidArgument, "generate: need at least " + std::to_string(min_n) + " elements");
  }
}

std::vector<Vec> sign_patterns(int d) {
  std::vector<Vec> out;
  for (int mask = 0; mask < (1 << d); ++mask) {
    Vec p(d);
    for (int i = 0; i < d; ++i) p(i) = (mask >> i) & 1 ? 1.0 : -1.0;
    out.push_back(p);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& instance_kinds() {
  static const std::vector<std::string> kinds{"cube",        "cross",        "simplex-john", "tangent-halfspaces",
                                              "random-vpoly", "random-symmetric-vpoly"};
  return kinds;
}

std::vector<Vec> regular_simplex_directions(int d) {
  // Centre the standard basis of R^{d+1} and express it in an orthonormal
  // basis of the hyperplane sum = 0.
  const int n = d + 1;
  const Mat centered = Mat::Identity(n, n) - Mat::Constant(n, n, 1.0 / n);
  Eigen::HouseholderQR<Mat> qr(centered);
  const Mat basis = qr.householderQ() * Mat::Identity(n, d);
  std::vector<Vec> out;
  for (int i = 0; i < n; ++i) out.push_back((basis.transpose() * centered.col(i)).normalized());
  return out;
}

HPolytope tangent_halfspaces(Rng& rng, int d, int n) {
  require_sizes(d, n, d + 1);
  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    std::vector<Halfspace> rows;
    for (int i = 0; i < n; ++i) rows.emplace_back(rng.unit_vector(d), 1.0);
    HPolytope h(d, std::move(rows));
    if (!recession_direction(h)) return h;
  }
  throw GeometryError(ErrorKind::Unbounded, "tangent_halfspaces: no bounded family found");
}

VPolytope random_vpoly(Rng& rng, int d, int n) {
  require_sizes(d, n, d + 1);
  for (int attempt = 0; attempt < kMaxResample; ++attempt) {
    const Vec shift = 0.5 * rng.normal_vector(d);
    std::vector<Vec> pts;
    for (int i = 0; i < n; ++i) pts.push_back(rng.normal_vector(d) + shift);
    try {
      const HullResult hull = convex_hull(pts);
      const bool interior = std::all_of(hull.facets.begin(), hull.facets.end(),
                                        [](const Facet& f) { return f.offset >= 1e-2; });
      if (interior) return VPolytope(d, std::move(pts));
    } catch (const GeometryError&) {
      // Flat sample; draw again.
    }
  }
  throw GeometryError(ErrorKind::OriginNotInterior, "random_vpoly: no sample contains the origin");
}

VPolytope random_symmetric_vpoly(Rng& rng, int d, int n) {
  require_sizes(d, n, 2);
  const int pairs = std::max(d, (n + 1) / 2);
  std::vector<Vec> pts;
  for (int i = 0; i < pairs; ++i) {
    const Vec p = rng.normal_vector(d);
    pts.push_back(p);
    pts.push_back(-p);
  }
  return VPolytope(d, std::move(pts));
}

Instance generate(const std::string& kind, int d, int n, std::uint64_t seed) {
  Instance out;
  out.kind = kind;
  out.dim = d;
  Rng rng(seed);
  if (kind == "cube") {
    require_sizes(d, 1, 0);
    std::vector<Halfspace> rows;
    for (int i = 0; i < d; ++i) {
      rows.emplace_back(Vec::Unit(d, i), 1.0);
      rows.emplace_back(-Vec::Unit(d, i), 1.0);
    }
    out.hrep = HPolytope(d, std::move(rows));
    out.vrep = VPolytope(d, sign_patterns(d));
  } else if (kind == "cross") {
    require_sizes(d, 1, 0);
    std::vector<Vec> pts;
    for (int i = 0; i < d; ++i) {
      pts.push_back(Vec::Unit(d, i));
      pts.push_back(-Vec::Unit(d, i));
    }
    std::vector<Halfspace> rows;
    for (const auto& s : sign_patterns(d)) rows.emplace_back(s, 1.0);
    out.hrep = HPolytope(d, std::move(rows));
    out.vrep = VPolytope(d, std::move(pts));
  } else if (kind == "simplex-john") {
    require_sizes(d, 1, 0);
    // Inradius 1: facet normals -v_i at distance 1, vertices d v_i.
    std::vector<Halfspace> rows;
    std::vector<Vec> pts;
    for (const auto& v : regular_simplex_directions(d)) {
      rows.emplace_back(-v, 1.0);
      pts.push_back(d * v);
    }
    out.hrep = HPolytope(d, std::move(rows));
    out.vrep = VPolytope(d, std::move(pts));
  } else if (kind == "tangent-halfspaces") {
    out.hrep = tangent_halfspaces(rng, d, n);
  } else if (kind == "random-vpoly") {
    out.vrep = random_vpoly(rng, d, n);
  } else if (kind == "random-symmetric-vpoly") {
    out.vrep = random_symmetric_vpoly(rng, d, n);
  } else {
    throw GeometryError(ErrorKind::InvalidArgument, "generate: unknown kind '" + kind + "'");
  }
  return out;
}

}  // namespace qhelly
