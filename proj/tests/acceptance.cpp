// Acceptance criteria AC1-AC9. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails. Tolerances are fixed below.

#include "qhelly/generate.hpp"
#include "qhelly/helly.hpp"
#include "qhelly/hull.hpp"
#include "qhelly/io.hpp"
#include "qhelly/john.hpp"
#include "qhelly/oracle.hpp"
#include "qhelly/polarity.hpp"
#include "qhelly/sparse_select.hpp"
#include "qhelly/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace qhelly;

namespace {

constexpr double kBoundSlack = 1e-3;     // relative slack on the certified bounds
constexpr double kJohnTol = 1e-5;        // closed-form ellipsoid entries
constexpr double kRadiusSlack = 1e-4;    // outer radius of the John body
constexpr double kTightTol = 1e-4;       // simplex tightness witness
constexpr double kMutationRate = 0.99;   // required rejection share
constexpr double kMonteCarloSigmas = 3;  // Monte Carlo agreement
constexpr std::int64_t kMonteCarloSamples = 1'000'000;
constexpr int kSeeds = 100;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(const char* id, const char* title, const std::function<Outcome()>& run) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s %s: %s | %s (%.1fs)\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Tangent corpora shared by AC3, AC4, AC6 and AC8.
const std::vector<std::pair<int, int>> kTangentSizes{{2, 12}, {3, 20}, {4, 24}};

HPolytope tangent_instance(int d, int n, int seed) {
  return *generate("tangent-halfspaces", d, n, static_cast<std::uint64_t>(seed)).hrep;
}

int santalo_runs = 0;
int santalo_failures = 0;
double santalo_worst = 0.0;

void record_santalo(const HellyReport& r) {
  if (r.dim > 4) return;
  ++santalo_runs;
  const double ball = unit_ball_volume(r.dim);
  santalo_worst = std::max(santalo_worst, r.santalo_product / (ball * ball));
  if (!(r.santalo_product <= ball * ball * (1 + kBoundSlack))) ++santalo_failures;
}

Outcome ac1() {
  Outcome o;
  std::ostringstream s;
  for (int d = 2; d <= 4; ++d) {
    double worst = 0.0;
    int bad = 0;
    for (int seed = 1; seed <= kSeeds; ++seed) {
      const VPolytope q = *generate("random-symmetric-vpoly", d, 4 * d + 4, static_cast<std::uint64_t>(seed)).vrep;
      const SelectionCertificate c = sparse_approx(q);
      const double mu = min_containment_factor(q, q.subset(c.qprime_indices));
      worst = std::max(worst, mu);
      const bool ok = c.verified && verify_certificate(q, c).ok &&
                      static_cast<int>(c.qprime_indices.size()) <= 2 * d &&
                      std::abs(c.factor - 3.0 * d) <= 3.0 * d * 1e-6 && mu <= 3.0 * d * (1 + kBoundSlack);
      if (!ok) ++bad;
    }
    o.pass = o.pass && bad == 0;
    s << "d=" << d << ": " << kSeeds - bad << "/" << kSeeds << " ok, max mu " << fmt("%.4g", worst) << " <= "
      << 3 * d << "; ";
  }
  o.detail = s.str();
  return o;
}

Outcome ac2() {
  Outcome o;
  std::ostringstream s;
  int drop_app = 0, drop_rej = 0, half_app = 0, half_rej = 0;
  for (int d = 2; d <= 4; ++d) {
    int bad = 0;
    double lmax = 0.0;
    for (int seed = 1; seed <= kSeeds; ++seed) {
      const VPolytope q = *generate("random-vpoly", d, 4 * d, static_cast<std::uint64_t>(seed)).vrep;
      const SelectionCertificate c = sparse_approx(q);
      const double lambda = symmetry_constant(q);
      lmax = std::max(lmax, lambda);
      const bool ok = c.verified && verify_certificate(q, c).ok &&
                      std::abs(c.factor - (lambda + 2) * d) <= 1e-9 * (lambda + 2) * d &&
                      static_cast<int>(c.qprime_indices.size()) <= 2 * d;
      if (!ok) ++bad;
      for (const auto& m : mutate_and_check(c, q)) {
        if (!m.should_reject || !*m.should_reject) continue;
        if (m.mutation == "drop_simplex_vertex") {
          ++drop_app;
          drop_rej += m.rejected();
        } else if (m.mutation == "halve_factor") {
          ++half_app;
          half_rej += m.rejected();
        }
      }
    }
    o.pass = o.pass && bad == 0;
    s << "d=" << d << ": " << kSeeds - bad << "/" << kSeeds << " verified, max lambda " << fmt("%.3g", lmax) << "; ";
  }
  const int app = drop_app + half_app;
  const int rej = drop_rej + half_rej;
  const double rate = app > 0 ? static_cast<double>(rej) / app : 0.0;
  o.pass = o.pass && app > 0 && rate >= kMutationRate;
  s << "mutations rejected " << rej << "/" << app << " (drop " << drop_rej << "/" << drop_app << ", halve "
    << half_rej << "/" << half_app << " applicable)";
  o.detail = s.str();
  return o;
}

Outcome ac3() {
  Outcome o;
  std::ostringstream s;
  for (const auto& [d, n] : kTangentSizes) {
    int bad = 0;
    double worst = 0.0;
    for (int seed = 1; seed <= kSeeds; ++seed) {
      const HellyReport r = helly_subset(tangent_instance(d, n, seed));
      record_santalo(r);
      worst = std::max(worst, r.diam_ratio());
      const bool ok = r.ksigma_bounded && static_cast<int>(r.sigma.size()) <= 2 * d &&
                      r.diam_Ksigma <= r.diam_bound * (1 + kBoundSlack);
      if (!ok) ++bad;
    }
    o.pass = o.pass && bad == 0;
    s << "(d,n)=(" << d << "," << n << "): " << kSeeds - bad << "/" << kSeeds << ", max diam ratio "
      << fmt("%.4g", worst) << " <= " << 2 * d * d << "; ";
  }
  o.detail = s.str();
  return o;
}

Outcome ac4() {
  Outcome o;
  std::ostringstream s;
  for (const auto& [d, n] : kTangentSizes) {
    if (d > 3) continue;
    int bad = 0;
    double worst = 0.0;
    const double bound = explicit_volume_ratio_bound(d);
    for (int seed = 1; seed <= kSeeds; ++seed) {
      HellyOptions opt;
      opt.mode = SimplexMode::GlobalExhaustive;
      const HellyReport r = helly_subset(tangent_instance(d, n, seed), opt);
      record_santalo(r);
      worst = std::max(worst, r.vol_ratio());
      if (!(r.ksigma_bounded && r.vol_ratio() <= bound * (1 + kBoundSlack))) ++bad;
    }
    o.pass = o.pass && bad == 0;
    s << "d=" << d << ": " << kSeeds - bad << "/" << kSeeds << ", max vol ratio " << fmt("%.4g", worst)
      << " <= " << fmt("%.6g", bound) << "; ";
  }
  o.detail = s.str();
  return o;
}

Outcome ac5() {
  Outcome o;
  std::ostringstream s;
  for (const auto& [d, n] : kTangentSizes) {
    int bad = 0;
    double lowest = std::numeric_limits<double>::infinity();
    const double floor = simplex_volume_floor(d);
    for (int seed = 1; seed <= kSeeds; ++seed) {
      const JohnPosition jp = to_john_position(tangent_instance(d, n, seed));
      const VPolytope q = polar_of_hrep(jp.body).poly;
      // Preconditions (1/d) B in Q in B.
      double rmax = 0.0;
      for (const auto& p : q.points()) rmax = std::max(rmax, p.norm());
      const bool pre = rmax <= 1 + 1e-9 && jp.john.outer_radius && *jp.john.outer_radius <= d * (1 + kRadiusSlack);
      const SimplexChoice sc = max_simplex(q, SimplexMode::GlobalExhaustive);
      lowest = std::min(lowest, sc.volume);
      if (!pre || sc.volume < floor) ++bad;
    }
    o.pass = o.pass && bad == 0;
    s << "d=" << d << ": min vol(S) " << fmt("%.4g", lowest) << " >= " << fmt("%.5g", floor) << " (" << kSeeds - bad
      << "/" << kSeeds << "); ";
  }
  o.detail = s.str();
  return o;
}

Outcome ac6() {
  Outcome o;
  std::ostringstream s;
  double worst_err = 0.0;
  auto check = [&](const HPolytope& h, const Vec& center, const Mat& shape) {
    const Ellipsoid e = max_inscribed_ellipsoid(h);
    const double err = std::max((e.center() - center).cwiseAbs().maxCoeff(), (e.shape() - shape).cwiseAbs().maxCoeff());
    worst_err = std::max(worst_err, err);
    return err <= kJohnTol;
  };
  int closed = 0, closed_ok = 0;
  for (int d = 2; d <= 4; ++d) {
    ++closed;
    closed_ok += check(*generate("cube", d, 0, 0).hrep, Vec::Zero(d), Mat::Identity(d, d));
    ++closed;
    closed_ok += check(*generate("simplex-john", d, 0, 0).hrep, Vec::Zero(d), Mat::Identity(d, d));
    // Box with half-widths 1..d centred at (1, -1, 1, ...).
    Vec half(d), c(d);
    for (int i = 0; i < d; ++i) {
      half(i) = i + 1;
      c(i) = i % 2 ? -1.0 : 1.0;
    }
    std::vector<Halfspace> rows;
    for (int i = 0; i < d; ++i) {
      rows.emplace_back(Vec::Unit(d, i), c(i) + half(i));
      rows.emplace_back(-Vec::Unit(d, i), -(c(i) - half(i)));
    }
    ++closed;
    closed_ok += check(HPolytope(d, rows), c, half.asDiagonal());
  }
  o.pass = closed_ok == closed;
  s << "closed forms " << closed_ok << "/" << closed << " within " << kJohnTol << " (max err "
    << fmt("%.2e", worst_err) << "); ";

  int bodies = 0, radius_ok = 0;
  double worst_ratio = 0.0;
  auto radius = [&](const HPolytope& h) {
    const JohnPosition jp = to_john_position(h);
    if (!jp.john.outer_radius) return;
    ++bodies;
    const double d = h.dim();
    worst_ratio = std::max(worst_ratio, *jp.john.outer_radius / d);
    radius_ok += *jp.john.outer_radius <= d * (1 + kRadiusSlack);
  };
  for (int d = 2; d <= 4; ++d) {
    radius(*generate("cube", d, 0, 0).hrep);
    radius(*generate("simplex-john", d, 0, 0).hrep);
    radius(*generate("cross", d, 0, 0).hrep);
  }
  for (const auto& [d, n] : kTangentSizes)
    for (int seed = 1; seed <= kSeeds; ++seed) radius(tangent_instance(d, n, seed));
  o.pass = o.pass && bodies > 0 && radius_ok == bodies;
  s << "outer radius <= d(1+" << kRadiusSlack << ") on " << radius_ok << "/" << bodies << " bodies (max R/d "
    << fmt("%.8f", worst_ratio) << ")";
  o.detail = s.str();
  return o;
}

Outcome ac7() {
  Outcome o;
  std::ostringstream s;
  for (int d = 2; d <= 3; ++d) {
    // A skewed simplex; the pipeline moves it to John position first.
    const HPolytope regular = *generate("simplex-john", d, 0, 0).hrep;
    Mat m = Mat::Identity(d, d);
    m(0, d - 1) = 0.7;
    m(d - 1, d - 1) = 2.5;
    Vec shift = Vec::LinSpaced(d, 0.3, -0.4);
    const HPolytope skewed = apply_affine(AffineMap(m, shift), regular);
    const JohnPosition jp = to_john_position(skewed);
    const VPolytope q = polar_of_hrep(jp.body).poly;
    const OracleResult best = best_vertex_subset(q, 2 * d);
    const bool ok = std::abs(best.best_value - d) <= kTightTol && best.best_sigma.size() == static_cast<std::size_t>(d + 1);
    o.pass = o.pass && ok;
    s << "d=" << d << ": best 2d-subset mu* " << fmt("%.8f", best.best_value) << " (|Q'|=" << best.best_sigma.size()
      << "); ";
  }
  o.detail = s.str();
  return o;
}

Outcome ac8() {
  Outcome o;
  std::ostringstream s;
  int ok = 0;
  double worst = 0.0;
  for (int seed = 1; seed <= 10; ++seed) {
    const HPolytope h = tangent_instance(3, 20, seed);
    const double exact = volume(vertices_of_hpolytope(h));
    Rng rng(stream_seed(2024, static_cast<std::uint64_t>(seed)));
    const MonteCarloVolume mc = monte_carlo_volume(h, kMonteCarloSamples, rng);
    const double z = std::abs(mc.estimate - exact) / mc.standard_error;
    worst = std::max(worst, z);
    ok += z <= kMonteCarloSigmas;
  }
  o.pass = ok == 10 && santalo_runs > 0 && santalo_failures == 0;
  s << "Monte Carlo agreement " << ok << "/10 (max |z| " << fmt("%.2f", worst) << " <= " << kMonteCarloSigmas
    << "); Santalo " << santalo_runs - santalo_failures << "/" << santalo_runs << " runs (max product/bound "
    << fmt("%.4f", santalo_worst) << ")";
  o.detail = s.str();
  return o;
}

Outcome ac9() {
  Outcome o;
  std::ostringstream s;
  int same = 0;
  const std::vector<SuiteConfig> configs{
      {"tangent-halfspaces", 3, 20, 10, 42, SimplexMode::LocalSwap, std::nullopt},
      {"random-vpoly", 3, 12, 10, 42, SimplexMode::GlobalExhaustive, std::nullopt},
      {"random-symmetric-vpoly", 4, 16, 10, 42, SimplexMode::LocalSwap, std::nullopt},
  };
  for (const auto& c : configs) {
    const std::string a = io::dump(io::to_json(run_suite(c)));
    const std::string b = io::dump(io::to_json(run_suite(c)));
    same += a == b;
  }
  o.pass = same == static_cast<int>(configs.size());
  s << same << "/" << configs.size() << " suite reports byte-identical across two runs";
  o.detail = s.str();
  return o;
}

}  // namespace

int main() {
  report("AC1", "symmetric bodies, factor 3d", ac1);
  report("AC2", "general bodies, factor (lambda+2)d and mutations", ac2);
  report("AC3", "halfspace families, diameter within 2d^2", ac3);
  report("AC4", "halfspace families, explicit volume bound", ac4);
  report("AC5", "simplex volume floor on John-polar bodies", ac5);
  report("AC6", "John ellipsoid closed forms and outer radius", ac6);
  report("AC7", "regular simplex realizes factor d", ac7);
  report("AC8", "Monte Carlo volumes and Santalo product", ac8);
  report("AC9", "suite determinism", ac9);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
