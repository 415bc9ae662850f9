#include "qhelly/sparse_select.hpp"

#include "qhelly/lp.hpp"
#include "qhelly/polarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace qhelly {

namespace {

constexpr double kSwapGain = 1e-12;
constexpr double kFacetTol = 1e-7;
constexpr double kWeightResidualTol = 1e-8;
constexpr int kMaxSwaps = 100000;

double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

Mat columns_of(const VPolytope& q, const std::vector<int>& indices) {
  Mat a(q.dim(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k)
    a.col(static_cast<Eigen::Index>(k)) = q[static_cast<std::size_t>(indices[k])];
  return a;
}

double abs_det(const Mat& a) { return std::abs(a.partialPivLu().determinant()); }

SimplexChoice exhaustive_simplex(const VPolytope& q, const std::vector<int>& candidates) {
  const int d = q.dim();
  const int n = static_cast<int>(candidates.size());
  std::vector<int> pos(static_cast<std::size_t>(d));
  std::iota(pos.begin(), pos.end(), 0);
  std::vector<int> best;
  double best_det = 0.0;
  Mat a(d, d);
  // Lexicographic order over position tuples; ties keep the earlier set.
  for (;;) {
    for (int k = 0; k < d; ++k) a.col(k) = q[static_cast<std::size_t>(candidates[static_cast<std::size_t>(pos[static_cast<std::size_t>(k)])])];
    const double det = abs_det(a);
    if (det > best_det * (1.0 + kSwapGain)) {
      best_det = det;
      best.clear();
      for (int k = 0; k < d; ++k) best.push_back(candidates[static_cast<std::size_t>(pos[static_cast<std::size_t>(k)])]);
    }
    int k = d - 1;
    while (k >= 0 && pos[static_cast<std::size_t>(k)] == n - d + k) --k;
    if (k < 0) break;
    ++pos[static_cast<std::size_t>(k)];
    for (int r = k + 1; r < d; ++r) pos[static_cast<std::size_t>(r)] = pos[static_cast<std::size_t>(r - 1)] + 1;
  }
  if (!(best_det > tolerance())) throw GeometryError(ErrorKind::DegenerateInput, "max_simplex: all simplices are flat");
  return {best, best_det / factorial(d), SimplexMode::GlobalExhaustive};
}

// Greedy volumetric basis: `first` (or the largest-norm point when -1), then
// repeatedly the point farthest from the current span.
std::vector<int> greedy_basis(const VPolytope& q, const std::vector<int>& candidates, int first) {
  const int d = q.dim();
  std::vector<int> chosen;
  Mat basis(d, 0);
  for (int k = 0; k < d; ++k) {
    int pick = k == 0 ? first : -1;
    double best = 0.0;
    if (pick < 0) {
      for (int i : candidates) {
        if (std::find(chosen.begin(), chosen.end(), i) != chosen.end()) continue;
        Vec r = q[static_cast<std::size_t>(i)];
        if (basis.cols() > 0) r -= basis * (basis.transpose() * r);
        const double len = r.norm();
        if (len > best) {
          best = len;
          pick = i;
        }
      }
    }
    Vec r = pick < 0 ? Vec::Zero(d) : Vec(q[static_cast<std::size_t>(pick)]);
    if (basis.cols() > 0) r -= basis * (basis.transpose() * r);
    if (pick < 0 || !(r.norm() > tolerance())) return {};
    basis.conservativeResize(d, basis.cols() + 1);
    basis.col(basis.cols() - 1) = r.normalized();
    chosen.push_back(pick);
  }
  return chosen;
}

// Best-improvement single swaps. Replacing v_j by w scales |det| by |(A^-1 w)_j|.
double improve_by_swaps(const VPolytope& q, const std::vector<int>& candidates, const Mat& points,
                        std::vector<int>& chosen) {
  for (int round = 0; round < kMaxSwaps; ++round) {
    const Mat coeff = columns_of(q, chosen).partialPivLu().solve(points);
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    const double gain = coeff.cwiseAbs().maxCoeff(&row, &col);
    if (!(gain > 1.0 + kSwapGain)) break;
    chosen[static_cast<std::size_t>(row)] = candidates[static_cast<std::size_t>(col)];
  }
  return abs_det(columns_of(q, chosen));
}

// Local search from the greedy basis and from a greedy basis seeded at every
// candidate; the best swap-stable basis wins.
SimplexChoice swap_simplex(const VPolytope& q, const std::vector<int>& candidates) {
  const int d = q.dim();
  const Mat points = columns_of(q, candidates);
  std::vector<int> best;
  double best_det = 0.0;
  std::vector<int> seeds{-1};
  seeds.insert(seeds.end(), candidates.begin(), candidates.end());
  for (int seed : seeds) {
    std::vector<int> chosen = greedy_basis(q, candidates, seed);
    if (chosen.empty()) continue;
    const double det = improve_by_swaps(q, candidates, points, chosen);
    if (det > best_det * (1.0 + kSwapGain)) {
      best_det = det;
      best = chosen;
    }
  }
  if (!(best_det > tolerance())) throw GeometryError(ErrorKind::DegenerateInput, "max_simplex: all simplices are flat");
  return {best, best_det / factorial(d), SimplexMode::LocalSwap};
}

std::vector<int> sorted_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::set<int> s(a.begin(), a.end());
  s.insert(b.begin(), b.end());
  return {s.begin(), s.end()};
}

VerifyResult fail(const char* check, std::string detail) { return {false, check, std::move(detail)}; }

}  // namespace

const char* to_string(SimplexMode mode) {
  return mode == SimplexMode::GlobalExhaustive ? "exhaustive" : "swap";
}

SimplexMode simplex_mode_from_string(const std::string& name) {
  if (name == "exhaustive" || name == "GlobalExhaustive") return SimplexMode::GlobalExhaustive;
  if (name == "swap" || name == "LocalSwap") return SimplexMode::LocalSwap;
  throw GeometryError(ErrorKind::InvalidArgument, "unknown simplex mode '" + name + "'");
}

SimplexChoice max_simplex(const VPolytope& q, SimplexMode mode) {
  return max_simplex(q, convex_hull(q).extreme_indices, mode);
}

SimplexChoice max_simplex(const VPolytope& q, const std::vector<int>& candidates, SimplexMode mode) {
  if (static_cast<int>(candidates.size()) < q.dim()) {
    throw GeometryError(ErrorKind::DegenerateInput, "max_simplex: fewer candidates than dimensions");
  }
  return mode == SimplexMode::GlobalExhaustive ? exhaustive_simplex(q, candidates) : swap_simplex(q, candidates);
}

Vec Parallelotope::coordinates(const Vec& x) const { return generators.partialPivLu().solve(x); }

bool Parallelotope::contains(const Vec& x, double tol) const { return strips.contains(x, tol); }

Parallelotope parallelotope(const std::vector<Vec>& generators) {
  if (generators.empty()) throw GeometryError(ErrorKind::InvalidArgument, "parallelotope: no generators");
  const int d = static_cast<int>(generators[0].size());
  if (static_cast<int>(generators.size()) != d) {
    throw GeometryError(ErrorKind::DegenerateInput, "parallelotope: need exactly d generators");
  }
  Mat a(d, d);
  for (int k = 0; k < d; ++k) a.col(k) = generators[static_cast<std::size_t>(k)];
  if (!(std::abs(a.determinant()) > tolerance())) {
    throw GeometryError(ErrorKind::DegenerateInput, "parallelotope: generators are dependent");
  }
  const Mat inv = a.inverse();
  std::vector<Halfspace> rows;
  for (int i = 0; i < d; ++i) {
    rows.emplace_back(inv.row(i).transpose(), 1.0);
    rows.emplace_back(-inv.row(i).transpose(), 1.0);
  }
  std::vector<Vec> corners;
  if (d <= 8) {
    for (int mask = 0; mask < (1 << d); ++mask) {
      Vec beta(d);
      for (int i = 0; i < d; ++i) beta(i) = (mask >> i) & 1 ? 1.0 : -1.0;
      corners.push_back(a * beta);
    }
  }
  return {a, HPolytope(d, std::move(rows)), std::move(corners)};
}

Parallelotope parallelotope(const VPolytope& q, const SimplexChoice& simplex) {
  std::vector<Vec> gens;
  for (int i : simplex.indices) gens.push_back(q[static_cast<std::size_t>(i)]);
  return parallelotope(gens);
}

bool check_local_maximality_gives_P(const VPolytope& q, const SimplexChoice& simplex) {
  const Parallelotope p = parallelotope(q, simplex);
  const double eps = tolerance();
  return std::all_of(q.points().begin(), q.points().end(), [&](const Vec& w) { return p.contains(w, eps); });
}

BoundaryPoint boundary_point(const VPolytope& q, const SimplexChoice& simplex) {
  const int d = q.dim();
  BoundaryPoint out;
  out.u = Vec::Zero(d);
  for (int i : simplex.indices) out.u += q[static_cast<std::size_t>(i)];
  out.u /= static_cast<double>(simplex.indices.size());
  Vec direction = -out.u;
  if (!(out.u.norm() > tolerance())) {
    direction = -q[static_cast<std::size_t>(simplex.indices.front())];
    out.fallback = true;
  }
  const auto g = gauge(q, direction);
  if (!g.finite() || !(g.value > 0.0)) {
    throw GeometryError(ErrorKind::OriginNotInterior, "boundary_point: ray does not leave Q");
  }
  out.y = direction / g.value;
  return out;
}

CaratheodoryChoice caratheodory_select(const VPolytope& q, const Vec& y) {
  return caratheodory_select(q, convex_hull(q), y);
}

CaratheodoryChoice caratheodory_select(const VPolytope& q, const HullResult& hull, const Vec& y) {
  const int d = q.dim();
  const double eps = tolerance();

  auto solve_on = [&](const std::vector<int>& pool) -> std::optional<CaratheodoryChoice> {
    const int n = static_cast<int>(pool.size());
    Mat e(d + 1, n);
    for (int k = 0; k < n; ++k) {
      e.col(k).head(d) = q[static_cast<std::size_t>(pool[static_cast<std::size_t>(k)])];
      e(d, k) = 1.0;
    }
    Vec f(d + 1);
    f.head(d) = y;
    f(d) = 1.0;
    const auto sol = lp::basic_feasible_solution(e, f);
    if (!sol.optimal()) return std::nullopt;
    CaratheodoryChoice c;
    std::vector<double> w;
    for (int k = 0; k < n; ++k) {
      if (sol.x(k) > eps) {
        c.indices.push_back(pool[static_cast<std::size_t>(k)]);
        w.push_back(sol.x(k));
      }
    }
    if (c.indices.empty()) return std::nullopt;
    c.weights = Eigen::Map<Vec>(w.data(), static_cast<Eigen::Index>(w.size()));
    c.weights /= c.weights.sum();
    const Vec rebuilt = columns_of(q, c.indices) * c.weights;
    if ((rebuilt - y).norm() > kWeightResidualTol) return std::nullopt;
    // Report in ascending index order.
    std::vector<int> order(c.indices.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return c.indices[static_cast<std::size_t>(a)] < c.indices[static_cast<std::size_t>(b)];
    });
    CaratheodoryChoice sorted;
    sorted.weights.resize(c.weights.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      sorted.indices.push_back(c.indices[static_cast<std::size_t>(order[k])]);
      sorted.weights(static_cast<Eigen::Index>(k)) = c.weights(order[k]);
    }
    return sorted;
  };

  // Lowest-index facet through y.
  for (std::size_t fi = 0; fi < hull.facets.size(); ++fi) {
    const auto& facet = hull.facets[fi];
    if (std::abs(facet.normal.dot(y) - facet.offset) > kFacetTol) continue;
    if (auto c = solve_on(facet.vertices); c && static_cast<int>(c->indices.size()) <= d) {
      c->facet = static_cast<int>(fi);
      return *c;
    }
    break;
  }
  std::vector<int> all(q.size());
  std::iota(all.begin(), all.end(), 0);
  auto c = solve_on(all);
  if (!c) throw GeometryError(ErrorKind::NumericalFailure, "caratheodory_select: point is not in conv(Q)");
  c->fallback = true;
  return *c;
}

SelectionCertificate sparse_approx(const VPolytope& q, std::optional<double> lambda, SimplexMode mode) {
  const int d = q.dim();
  const HullResult hull = convex_hull(q);
  for (const auto& f : hull.facets) {
    if (!(f.offset > tolerance())) throw GeometryError(ErrorKind::OriginNotInterior, "sparse_approx: origin is not interior");
  }

  SelectionCertificate cert;
  cert.dim = d;
  cert.lambda_measured = symmetry_constant(q);
  cert.lambda_used = std::max(cert.lambda_measured, lambda.value_or(0.0));
  cert.factor = (cert.lambda_used + 2.0) * d;

  cert.simplex = max_simplex(q, hull.extreme_indices, mode);
  const BoundaryPoint bp = boundary_point(q, cert.simplex);
  cert.u = bp.u;
  cert.y = bp.y;
  cert.u_fallback = bp.fallback;

  const CaratheodoryChoice c = caratheodory_select(q, hull, bp.y);
  cert.carath_indices = c.indices;
  cert.carath_weights = c.weights;
  cert.carath_fallback = c.fallback;
  cert.qprime_indices = sorted_union(cert.simplex.indices, cert.carath_indices);

  cert.verified = verify_certificate(q, cert).ok;
  return cert;
}

VerifyResult verify_certificate(const VPolytope& q, const SelectionCertificate& cert) {
  const int d = q.dim();
  const int n = static_cast<int>(q.size());
  const double eps = tolerance();

  // Structure: indices, union, weights.
  if (cert.dim != d) return fail("structure", "dimension mismatch");
  auto in_range = [&](const std::vector<int>& v) {
    return std::all_of(v.begin(), v.end(), [&](int i) { return i >= 0 && i < n; });
  };
  if (!in_range(cert.simplex.indices) || !in_range(cert.carath_indices) || !in_range(cert.qprime_indices)) {
    return fail("structure", "index out of range");
  }
  if (cert.qprime_indices != sorted_union(cert.simplex.indices, cert.carath_indices)) {
    return fail("structure", "selected set is not the union of simplex and Caratheodory vertices");
  }
  if (static_cast<int>(cert.qprime_indices.size()) > 2 * d) return fail("structure", "more than 2d vertices selected");
  if (cert.carath_weights.size() != static_cast<Eigen::Index>(cert.carath_indices.size()) || cert.carath_indices.empty()) {
    return fail("structure", "Caratheodory weights do not match indices");
  }
  if (cert.carath_weights.minCoeff() < -eps || std::abs(cert.carath_weights.sum() - 1.0) > 1e-9) {
    return fail("structure", "Caratheodory weights are not convex");
  }
  if (cert.y.size() != d || cert.u.size() != d) return fail("structure", "u or y has wrong length");
  if ((columns_of(q, cert.carath_indices) * cert.carath_weights - cert.y).norm() > kWeightResidualTol) {
    return fail("structure", "Caratheodory weights do not reproduce y");
  }

  // (a) Q in P.
  if (static_cast<int>(cert.simplex.indices.size()) != d) {
    return fail("a", "simplex has " + std::to_string(cert.simplex.indices.size()) + " vertices; P is not full-dimensional");
  }
  const Mat a = columns_of(q, cert.simplex.indices);
  Eigen::FullPivLU<Mat> lu(a);
  if (lu.rank() < d) return fail("a", "simplex vertices are linearly dependent");
  for (int i = 0; i < n; ++i) {
    const Vec beta = lu.solve(q[static_cast<std::size_t>(i)]);
    if (beta.cwiseAbs().maxCoeff() > 1.0 + eps) {
      return fail("a", "point " + std::to_string(i) + " lies outside P");
    }
  }

  // (b) corners of P in S' = {sum gamma_i v_i : gamma_i <= 1, sum gamma_i >= -d}.
  if (d <= 8) {
    for (int mask = 0; mask < (1 << d); ++mask) {
      Vec beta(d);
      for (int k = 0; k < d; ++k) beta(k) = (mask >> k) & 1 ? 1.0 : -1.0;
      const Vec gamma = lu.solve(a * beta);
      if (gamma.maxCoeff() > 1.0 + eps || gamma.sum() < -d - eps) return fail("b", "corner of P outside S'");
    }
  }

  // (c) u in -lambda Q'.
  const VPolytope qprime = q.subset(cert.qprime_indices);
  const Vec centroid = a.rowwise().mean();
  if (!(cert.lambda_used > 0.0)) return fail("c", "lambda must be positive");
  if (!contains(qprime, -centroid / cert.lambda_used)) return fail("c", "u is not in -lambda Q'");

  // (d) Q in -factor Q'.
  if (!(cert.factor > 0.0)) return fail("d", "factor must be positive");
  for (int i = 0; i < n; ++i) {
    if (!contains(qprime, -q[static_cast<std::size_t>(i)] / cert.factor)) {
      return fail("d", "point " + std::to_string(i) + " is not in -factor Q'");
    }
  }

  // Recorded u and y agree with the simplex.
  if ((cert.u - centroid).norm() > 1e-9 * std::max(1.0, centroid.norm())) return fail("consistency", "u is not the centroid");
  const Vec dir = cert.u_fallback ? Vec(-a.col(0)) : Vec(-centroid);
  const double along = cert.y.dot(dir) / dir.squaredNorm();
  if (!(along > 0.0) || (cert.y - along * dir).norm() > 1e-8 * std::max(1.0, cert.y.norm())) {
    return fail("consistency", "y is not on the ray through -u");
  }
  return {true, "", ""};
}

}  // namespace qhelly
