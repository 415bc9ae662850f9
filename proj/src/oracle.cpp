#include "qhelly/oracle.hpp"

#include "qhelly/hull.hpp"
#include "qhelly/polarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace qhelly {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kDirectionCache = 64;

// Visits every subset of {0..n-1} with at most k elements: sizes ascending,
// colex order within a size.
template <typename Visit>
void for_each_subset(int n, int k, Visit&& visit) {
  std::vector<int> c;
  for (int size = 0; size <= std::min(k, n); ++size) {
    c.resize(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) c[static_cast<std::size_t>(i)] = i;
    for (;;) {
      visit(c);
      int i = 0;
      while (i < size && c[static_cast<std::size_t>(i)] + 1 ==
                             (i + 1 < size ? c[static_cast<std::size_t>(i + 1)] : n)) {
        ++i;
      }
      if (i == size) break;
      ++c[static_cast<std::size_t>(i)];
      for (int j = 0; j < i; ++j) c[static_cast<std::size_t>(j)] = j;
    }
  }
}

double pairwise_diameter(const VPolytope& v) {
  double best = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) best = std::max(best, (v[i] - v[j]).norm());
  return best;
}

void offer(OracleResult& out, const std::vector<int>& subset, double value) {
  // Earlier subsets win ties.
  if (value < out.best_value && !(std::isfinite(out.best_value) && value >= out.best_value * (1 - 1e-12))) {
    out.best_value = value;
    out.best_sigma = subset;
  }
}

void check_budget(int n, int k, std::int64_t budget) {
  if (k < 0) throw GeometryError(ErrorKind::InvalidArgument, "oracle: k must be non-negative");
  if (subsets_up_to(n, k) > budget) {
    throw GeometryError(ErrorKind::BudgetExceeded, "oracle: " + std::to_string(subsets_up_to(n, k)) +
                                                       " subsets exceed the budget of " + std::to_string(budget));
  }
}

}  // namespace

double min_containment_factor(const VPolytope& q, const VPolytope& qprime) {
  require_origin_interior(qprime);
  double mu = 0.0;
  for (const auto& w : q.points()) mu = std::max(mu, gauge(qprime, -w).value);
  return mu;
}

const char* to_string(Objective objective) {
  switch (objective) {
    case Objective::Diameter:
      return "diam";
    case Objective::Volume:
      return "vol";
    case Objective::ContainmentFactor:
      return "factor";
  }
  return "?";
}

Objective objective_from_string(const std::string& name) {
  if (name == "diam" || name == "Diameter") return Objective::Diameter;
  if (name == "vol" || name == "Volume") return Objective::Volume;
  if (name == "factor" || name == "ContainmentFactor") return Objective::ContainmentFactor;
  throw GeometryError(ErrorKind::InvalidArgument, "unknown objective '" + name + "'");
}

std::int64_t subsets_up_to(int n, int k) {
  const auto cap = std::numeric_limits<std::int64_t>::max();
  std::int64_t total = 0;
  std::int64_t binom = 1;
  for (int j = 0; j <= std::min(k, n); ++j) {
    if (j > 0) {
      // C(n, j) = C(n, j-1) (n - j + 1) / j; exact because C(n, j-1) (n-j+1) is divisible by j.
      if (binom > cap / (n - j + 1)) return cap;
      binom = binom * (n - j + 1) / j;
    }
    if (total > cap - binom) return cap;
    total += binom;
  }
  return total;
}

OracleResult best_halfspace_subset(const HPolytope& family, int k, Objective objective, std::int64_t budget) {
  if (objective == Objective::ContainmentFactor) {
    throw GeometryError(ErrorKind::InvalidArgument, "best_halfspace_subset: use best_vertex_subset for factor");
  }
  const int n = static_cast<int>(family.size());
  const int d = family.dim();
  check_budget(n, k, budget);

  const VPolytope kv = vertices_of_hpolytope(family);
  const double reference = objective == Objective::Diameter ? pairwise_diameter(kv) : volume(kv);

  std::vector<Halfspace> unit;
  for (const auto& h : family.halfspaces()) unit.push_back(h.normalized());
  std::vector<Vec> directions;

  OracleResult out;
  out.objective = objective;
  out.best_value = kInf;
  for_each_subset(n, k, [&](const std::vector<int>& s) {
    ++out.evaluated;
    if (static_cast<int>(s.size()) <= d) return;
    const bool known_unbounded = std::any_of(directions.begin(), directions.end(), [&](const Vec& r) {
      return std::all_of(s.begin(), s.end(),
                         [&](int i) { return unit[static_cast<std::size_t>(i)].normal.dot(r) <= 1e-12; });
    });
    if (known_unbounded) return;
    const HPolytope sub = family.subset(s);
    if (auto r = recession_direction(sub)) {
      if (directions.size() < kDirectionCache) directions.push_back(r->normalized());
      return;
    }
    const VPolytope v = vertices_of_hpolytope(sub);
    const double value = objective == Objective::Diameter ? pairwise_diameter(v) : volume(v);
    offer(out, s, value / reference);
  });
  return out;
}

OracleResult best_vertex_subset(const VPolytope& q, int k, std::int64_t budget) {
  const int n = static_cast<int>(q.size());
  const int d = q.dim();
  check_budget(n, k, budget);
  OracleResult out;
  out.objective = Objective::ContainmentFactor;
  out.best_value = kInf;
  for_each_subset(n, k, [&](const std::vector<int>& s) {
    ++out.evaluated;
    if (static_cast<int>(s.size()) <= d) return;
    const VPolytope sub = q.subset(s);
    if (!origin_interior(sub)) return;
    offer(out, s, min_containment_factor(q, sub));
  });
  return out;
}

MonteCarloVolume monte_carlo_volume(const HPolytope& k, std::int64_t samples, Rng& rng) {
  if (samples <= 0) throw GeometryError(ErrorKind::InvalidArgument, "monte_carlo_volume: samples must be positive");
  const VPolytope v = vertices_of_hpolytope(k);
  const int d = k.dim();
  Vec lo = v[0];
  Vec hi = v[0];
  for (const auto& p : v.points()) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Vec width = hi - lo;
  const double box = width.prod();
  const Mat a = k.normals();
  const Vec b = k.offsets();
  MonteCarloVolume out;
  out.samples = samples;
  Vec x(d);
  for (std::int64_t s = 0; s < samples; ++s) {
    for (int j = 0; j < d; ++j) x(j) = lo(j) + width(j) * rng.uniform();
    if (((a * x) - b).maxCoeff() <= 0.0) ++out.hits;
  }
  const double p = static_cast<double>(out.hits) / static_cast<double>(samples);
  out.estimate = box * p;
  out.standard_error = box * std::sqrt(p * (1 - p) / static_cast<double>(samples));
  return out;
}

std::vector<MutationOutcome> mutate_and_check(const SelectionCertificate& cert, const VPolytope& q) {
  std::vector<MutationOutcome> out;
  auto record = [&](std::string name, std::optional<bool> should_reject, const SelectionCertificate& c) {
    out.push_back({std::move(name), should_reject, verify_certificate(q, c)});
  };

  {
    SelectionCertificate c = cert;
    if (!c.simplex.indices.empty()) c.simplex.indices.erase(c.simplex.indices.begin());
    std::set<int> s(c.simplex.indices.begin(), c.simplex.indices.end());
    s.insert(c.carath_indices.begin(), c.carath_indices.end());
    c.qprime_indices.assign(s.begin(), s.end());
    record("drop_simplex_vertex", true, c);
  }
  {
    SelectionCertificate c = cert;
    c.factor = cert.factor / 2;
    std::optional<bool> expect;
    try {
      const double mu = min_containment_factor(q, q.subset(cert.qprime_indices));
      if (mu > c.factor * (1 + 1e-6)) expect = true;
      else if (mu < c.factor * (1 - 1e-6)) expect = false;
    } catch (const GeometryError&) {
      expect = true;
    }
    record("halve_factor", expect, c);
  }
  {
    SelectionCertificate c = cert;
    // Off the ray: add an orthogonal component of 10% of |y|.
    const int d = static_cast<int>(c.y.size());
    Vec w = Vec::Unit(d, 0);
    if (std::abs(c.y.normalized().dot(w)) > 0.9) w = Vec::Unit(d, 1);
    w -= w.dot(c.y) / c.y.squaredNorm() * c.y;
    c.y += 0.1 * c.y.norm() * w.normalized();
    record("perturb_y", true, c);
  }
  {
    SelectionCertificate c = cert;
    c.factor = cert.factor * 2;
    record("double_factor", false, c);
  }
  record("unchanged", false, cert);
  return out;
}

}  // namespace qhelly
