#include <doctest.h>

#include "helpers.hpp"
#include "qhelly/hull.hpp"
#include "qhelly/john.hpp"
#include "qhelly/polarity.hpp"
#include "qhelly/sparse_select.hpp"

#include <numeric>
#include <set>

using namespace qhelly;
using namespace qhelly::testing;

namespace {

// Gaussian cloud, resampled until 0 is interior.
VPolytope random_body(Rng& rng, int d, int n) {
  for (;;) {
    VPolytope q(d, random_points(rng, d, n));
    const HullResult h = convex_hull(q);
    bool ok = true;
    for (const auto& f : h.facets) ok = ok && f.offset > 1e-3;
    if (ok) return q;
  }
}

double brute_force_max_det(const VPolytope& q) {
  const int d = q.dim();
  const int n = static_cast<int>(q.size());
  double best = 0.0;
  std::vector<int> pick(static_cast<std::size_t>(d));
  // Iterate all d-subsets via bitmasks.
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != d) continue;
    Mat a(d, d);
    int k = 0;
    for (int i = 0; i < n; ++i)
      if ((mask >> i) & 1) a.col(k++) = q[static_cast<std::size_t>(i)];
    best = std::max(best, std::abs(a.determinant()));
  }
  return best;
}

}  // namespace

TEST_CASE("max_simplex: closed forms") {
  for (int d = 2; d <= 4; ++d) {
    CAPTURE(d);
    const VPolytope cross(d, cross_vertices(d));
    const auto s = max_simplex(cross, SimplexMode::GlobalExhaustive);
    CHECK(s.volume == doctest::Approx(1.0 / factorial(d)).epsilon(1e-12));
    CHECK(s.indices.size() == static_cast<std::size_t>(d));
    const auto l = max_simplex(cross, SimplexMode::LocalSwap);
    CHECK(l.volume == doctest::Approx(1.0 / factorial(d)).epsilon(1e-12));
  }
  const VPolytope square(2, cube_corners(2));
  CHECK(max_simplex(square, SimplexMode::GlobalExhaustive).volume == doctest::Approx(1.0));
  CHECK(max_simplex(square, SimplexMode::LocalSwap).volume == doctest::Approx(1.0));
  // Adjacent corners have |det| = 2, so P has area 4 * 2.
  CHECK(volume(parallelotope(square, max_simplex(square, SimplexMode::GlobalExhaustive)).corners) ==
        doctest::Approx(8.0));
}

TEST_CASE("max_simplex: exhaustive agrees with brute force") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 3;
    const VPolytope q = random_body(rng, d, 9);
    const auto s = max_simplex(q, SimplexMode::GlobalExhaustive);
    CHECK(s.volume * factorial(d) == doctest::Approx(brute_force_max_det(q)).epsilon(1e-10));
  }
}

TEST_CASE("max_simplex: local swap is nearly optimal") {
  Rng rng(5);
  int good = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const VPolytope q = random_body(rng, 3, 12);
    const double ex = max_simplex(q, SimplexMode::GlobalExhaustive).volume;
    const double sw = max_simplex(q, SimplexMode::LocalSwap).volume;
    CHECK(sw <= ex * (1 + 1e-12));
    if (sw >= 0.99 * ex) ++good;
  }
  CHECK(good >= 95);
}

TEST_CASE("max_simplex: degenerate input") {
  const VPolytope line(2, {vec({1, 0}), vec({-1, 0}), vec({2, 0})});
  CHECK_THROWS_AS(max_simplex(line, {0, 1, 2}, SimplexMode::GlobalExhaustive), GeometryError);
  CHECK_THROWS_AS(max_simplex(line, {0, 1, 2}, SimplexMode::LocalSwap), GeometryError);
  CHECK_THROWS_AS(max_simplex(line, {0}, SimplexMode::LocalSwap), GeometryError);
  CHECK(simplex_mode_from_string("exhaustive") == SimplexMode::GlobalExhaustive);
  CHECK(simplex_mode_from_string("swap") == SimplexMode::LocalSwap);
  CHECK_THROWS_AS(simplex_mode_from_string("greedy"), GeometryError);
}

TEST_CASE("parallelotope: volume and representations") {
  Rng rng(3);
  for (int d = 2; d <= 4; ++d) {
    CAPTURE(d);
    std::vector<Vec> gens;
    for (int i = 0; i < d; ++i) gens.push_back(rng.normal_vector(d));
    const Parallelotope p = parallelotope(gens);
    Mat a(d, d);
    for (int i = 0; i < d; ++i) a.col(i) = gens[static_cast<std::size_t>(i)];
    const double simplex_volume = std::abs(a.determinant()) / factorial(d);
    CHECK(volume(p.corners) == doctest::Approx(std::pow(2.0, d) * factorial(d) * simplex_volume).epsilon(1e-8));
    CHECK(p.corners.size() == static_cast<std::size_t>(1 << d));
    for (const auto& c : p.corners) CHECK(p.contains(c, 1e-9));
    CHECK_FALSE(p.contains(1.01 * p.corners[0], 1e-9));
    const Vec beta = p.coordinates(gens[0] - 0.5 * gens[1]);
    CHECK((beta - (Vec::Unit(d, 0) - 0.5 * Vec::Unit(d, 1))).norm() < 1e-10);
  }
  // Shoelace in the plane: area = 4 |det|.
  const Parallelotope p = parallelotope({vec({2, 1}), vec({0.5, 3})});
  CHECK(volume(p.corners) == doctest::Approx(4 * (2 * 3 - 1 * 0.5)));
  CHECK_THROWS_AS(parallelotope({vec({1, 1}), vec({2, 2})}), GeometryError);
}

TEST_CASE("local maximality implies Q in P") {
  for (int d = 2; d <= 4; ++d) {
    const VPolytope cross(d, cross_vertices(d));
    CHECK(check_local_maximality_gives_P(cross, max_simplex(cross, SimplexMode::GlobalExhaustive)));
    const VPolytope cube(d, cube_corners(d));
    CHECK(check_local_maximality_gives_P(cube, max_simplex(cube, SimplexMode::LocalSwap)));
  }
  // A thin simplex does not cover the square.
  const VPolytope square(2, {vec({1, 1}), vec({1, 0.9}), vec({-1, -1}), vec({-1, 1}), vec({1, -1})});
  SimplexChoice thin{{0, 1}, 0.0, SimplexMode::LocalSwap};
  CHECK_FALSE(check_local_maximality_gives_P(square, thin));

  Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    const VPolytope q = random_body(rng, 2 + trial % 3, 15);
    CHECK(check_local_maximality_gives_P(q, max_simplex(q, SimplexMode::LocalSwap)));
  }
}

TEST_CASE("boundary_point: examples") {
  for (int d = 2; d <= 4; ++d) {
    CAPTURE(d);
    // Simplex on e_1..e_d: u = 1/d, y on the facet of the cross-polytope.
    std::vector<Vec> pts = cross_vertices(d);
    const VPolytope cross(d, pts);
    SimplexChoice s;
    for (int i = 0; i < d; ++i) s.indices.push_back(2 * i);
    const auto bp = boundary_point(cross, s);
    CHECK((bp.u - Vec::Constant(d, 1.0 / d)).norm() < 1e-12);
    CHECK((bp.y + Vec::Constant(d, 1.0 / d)).norm() < 1e-9);
    CHECK_FALSE(bp.fallback);
  }
  const VPolytope square(2, cube_corners(2));
  // cube_corners order: (-1,-1), (1,-1), (-1,1), (1,1).
  const auto bp = boundary_point(square, SimplexChoice{{3, 1}, 0.0, SimplexMode::LocalSwap});
  CHECK((bp.u - vec({1, 0})).norm() < 1e-12);
  CHECK((bp.y - vec({-1, 0})).norm() < 1e-9);

  // Opposite vertices: u = 0 triggers the fallback direction -v_1.
  const auto fb = boundary_point(square, SimplexChoice{{3, 0}, 0.0, SimplexMode::LocalSwap});
  CHECK(fb.fallback);
  CHECK((fb.y - vec({-1, -1})).norm() < 1e-9);
}

TEST_CASE("caratheodory_select: small supports") {
  const VPolytope cube(3, cube_corners(3));
  SUBCASE("vertex") {
    const auto c = caratheodory_select(cube, vec({1, 1, 1}));
    REQUIRE(c.indices.size() == 1);
    CHECK(c.indices[0] == 7);
    CHECK(c.weights(0) == doctest::Approx(1.0));
  }
  SUBCASE("edge midpoint") {
    const auto c = caratheodory_select(cube, vec({1, 1, 0}));
    REQUIRE(c.indices.size() == 2);
    CHECK(c.weights(0) == doctest::Approx(0.5));
    CHECK(c.weights(1) == doctest::Approx(0.5));
    CHECK_FALSE(c.fallback);
  }
  SUBCASE("random boundary points") {
    Rng rng(21);
    for (int trial = 0; trial < 40; ++trial) {
      const VPolytope q = random_body(rng, 4, 14);
      const Vec dir = rng.normal_vector(4);
      const Vec y = dir / gauge(q, dir).value;
      const auto c = caratheodory_select(q, y);
      CHECK(c.indices.size() <= 4u);
      CHECK_FALSE(c.fallback);
      CHECK(c.weights.minCoeff() >= 0.0);
      CHECK(c.weights.sum() == doctest::Approx(1.0));
      Vec rebuilt = Vec::Zero(4);
      for (std::size_t k = 0; k < c.indices.size(); ++k)
        rebuilt += c.weights(static_cast<Eigen::Index>(k)) * q[static_cast<std::size_t>(c.indices[k])];
      CHECK((rebuilt - y).norm() < 1e-8);
    }
  }
  SUBCASE("interior point falls back") {
    const auto c = caratheodory_select(cube, vec({0.1, 0.2, 0.3}));
    CHECK(c.fallback);
    CHECK(c.indices.size() <= 4u);
  }
}

TEST_CASE("sparse_approx: symmetric bodies give factor 3d") {
  for (int d = 2; d <= 4; ++d) {
    CAPTURE(d);
    for (const auto& q : {VPolytope(d, cube_corners(d)), VPolytope(d, cross_vertices(d))}) {
      const auto cert = sparse_approx(q);
      CHECK(cert.verified);
      CHECK(cert.lambda_measured == doctest::Approx(1.0));
      CHECK(cert.factor == doctest::Approx(3.0 * d));
      CHECK(cert.qprime_indices.size() <= static_cast<std::size_t>(2 * d));
      const auto v = verify_certificate(q, cert);
      CHECK_MESSAGE(v.ok, v.failed_check << ": " << v.detail);
    }
  }
}

TEST_CASE("sparse_approx: random bodies") {
  Rng rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 2 + trial % 3;
    const VPolytope q = random_body(rng, d, 8 + 2 * d);
    const auto mode = trial % 2 ? SimplexMode::LocalSwap : SimplexMode::GlobalExhaustive;
    const auto cert = sparse_approx(q, std::nullopt, mode);
    const auto v = verify_certificate(q, cert);
    CHECK_MESSAGE(v.ok, v.failed_check << ": " << v.detail);
    CHECK(cert.qprime_indices.size() <= static_cast<std::size_t>(2 * d));
    // Independent containment check: max gauge of -w in Q' is at most the factor.
    const VPolytope qp = q.subset(cert.qprime_indices);
    double mu = 0.0;
    for (const auto& w : q.points()) mu = std::max(mu, gauge(qp, -w).value);
    CHECK(mu <= cert.factor * (1 + 1e-9));
    CHECK(cert.lambda_used >= cert.lambda_measured);
  }
}

TEST_CASE("sparse_approx: segment between y and u lies in Q'") {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const VPolytope q = random_body(rng, 3, 12);
    const auto cert = sparse_approx(q);
    const VPolytope qp = q.subset(cert.qprime_indices);
    // u is the simplex centroid, a convex combination of selected points; y too.
    for (int k = 0; k <= 10; ++k) {
      const double t = k / 10.0;
      CHECK(contains(qp, (1 - t) * cert.y + t * cert.u));
    }
  }
}

TEST_CASE("sparse_approx: lambda override and errors") {
  const VPolytope cube(2, cube_corners(2));
  const auto cert = sparse_approx(cube, 2.5);
  CHECK(cert.lambda_used == doctest::Approx(2.5));
  CHECK(cert.factor == doctest::Approx(9.0));
  CHECK(cert.verified);
  const auto low = sparse_approx(cube, 0.5);
  CHECK(low.lambda_used == doctest::Approx(1.0));

  const VPolytope shifted(2, {vec({1, 1}), vec({2, 1}), vec({1, 2})});
  CHECK_THROWS_AS(sparse_approx(shifted), GeometryError);
  try {
    sparse_approx(shifted);
  } catch (const GeometryError& e) {
    CHECK(e.kind() == ErrorKind::OriginNotInterior);
  }
}

TEST_CASE("sparse_approx: permutation invariance of the selected points") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const VPolytope q = random_body(rng, 3, 10);
    std::vector<int> perm(q.size());
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size() - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
    const VPolytope p = q.subset(perm);
    const auto a = sparse_approx(q, std::nullopt, SimplexMode::GlobalExhaustive);
    const auto b = sparse_approx(p, std::nullopt, SimplexMode::GlobalExhaustive);
    CHECK(a.simplex.volume == doctest::Approx(b.simplex.volume).epsilon(1e-10));
    CHECK(a.factor == doctest::Approx(b.factor).epsilon(1e-9));
    CHECK(verify_certificate(p, b).ok);
    // Selected points map back to the same original indices.
    std::vector<int> mapped;
    for (int k : b.qprime_indices) mapped.push_back(perm[static_cast<std::size_t>(k)]);
    std::sort(mapped.begin(), mapped.end());
    CHECK(mapped == a.qprime_indices);
  }
}

TEST_CASE("sparse_approx: John-polar bodies have factor at most (d+2)d") {
  Rng rng(12);
  for (int trial = 0; trial < 15; ++trial) {
    const int d = 2 + trial % 3;
    std::vector<Halfspace> rows;
    for (int i = 0; i < 5 * d; ++i) rows.emplace_back(rng.unit_vector(d), 1.0);
    const HPolytope h(d, rows);
    if (recession_direction(h)) continue;
    const VPolytope q = polar_of_hrep(to_john_position(h).body).poly;
    const auto cert = sparse_approx(q);
    CHECK(cert.verified);
    CHECK(cert.lambda_measured <= d * (1 + 1e-6));
    CHECK(cert.factor <= (d + 2.0) * d * (1 + 1e-6));
  }
}

TEST_CASE("verify_certificate: rejects tampering") {
  Rng rng(15);
  const VPolytope q = random_body(rng, 3, 12);
  const auto cert = sparse_approx(q);
  REQUIRE(verify_certificate(q, cert).ok);

  auto bad = cert;
  bad.qprime_indices.push_back(static_cast<int>(q.size()));
  CHECK(verify_certificate(q, bad).failed_check == "structure");

  bad = cert;
  bad.carath_weights(0) += 0.1;
  CHECK(verify_certificate(q, bad).failed_check == "structure");

  bad = cert;
  bad.factor = 1e-3;
  CHECK(verify_certificate(q, bad).failed_check == "d");

  bad = cert;
  bad.u = cert.u + Vec::Constant(3, 0.05);
  CHECK(verify_certificate(q, bad).failed_check == "consistency");

  // Replacing the simplex by a tiny one breaks Q in P.
  const VPolytope tiny(3, {vec({0.01, 0, 0}), vec({0, 0.01, 0}), vec({0, 0, 0.01}), vec({-1, -1, -1}),
                           vec({2, 0, 0}), vec({0, 2, 0}), vec({0, 0, 2})});
  auto tc = sparse_approx(tiny);
  REQUIRE(verify_certificate(tiny, tc).ok);
  tc.simplex.indices = {0, 1, 2};
  std::set<int> s(tc.simplex.indices.begin(), tc.simplex.indices.end());
  s.insert(tc.carath_indices.begin(), tc.carath_indices.end());
  tc.qprime_indices.assign(s.begin(), s.end());
  CHECK(verify_certificate(tiny, tc).failed_check == "a");
}
