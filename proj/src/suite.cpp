#include "qhelly/suite.hpp"

#include "qhelly/generate.hpp"
#include "qhelly/oracle.hpp"
#include "qhelly/random.hpp"

#include <algorithm>

namespace qhelly {

namespace {

constexpr double kSlack = 1e-3;

void run_vertex(const VPolytope& q, const SuiteConfig& config, SuiteRow& row) {
  const SelectionCertificate cert = sparse_approx(q, config.lambda, config.mode);
  row.mu = min_containment_factor(q, q.subset(cert.qprime_indices));
  bool agree = true;
  for (const auto& m : mutate_and_check(cert, q)) {
    agree = agree && m.agrees();
    if (m.should_reject && *m.should_reject) {
      ++row.mutations_applicable;
      if (m.rejected()) ++row.mutations_caught;
    }
  }
  const int d = q.dim();
  row.ok = row.ok && agree && cert.verified && static_cast<int>(cert.qprime_indices.size()) <= 2 * d &&
           row.mu <= cert.factor * (1 + kSlack);
  row.certificate = cert;
}

void run_halfspace(const HPolytope& h, const SuiteConfig& config, SuiteRow& row) {
  HellyOptions options;
  options.mode = config.mode;
  HellyReport report = helly_subset(h, options);
  row.ok = row.ok && report.bounds_hold();
  row.report = std::move(report);
}

}  // namespace

SuiteSummary run_suite(const SuiteConfig& config) {
  SuiteSummary out;
  out.config = config;
  for (int i = 0; i < config.count; ++i) {
    SuiteRow row;
    row.index = i;
    row.instance_seed = stream_seed(config.seed, static_cast<std::uint64_t>(i));
    row.ok = true;
    try {
      const Instance inst = generate(config.kind, config.dim, config.n, row.instance_seed);
      if (inst.vrep) run_vertex(*inst.vrep, config, row);
      if (inst.hrep) run_halfspace(*inst.hrep, config, row);
    } catch (const GeometryError& e) {
      row.ok = false;
      row.error = std::string(to_string(e.kind())) + ": " + e.what();
    }

    if (row.ok) ++out.passed;
    else ++out.failed;
    if (row.certificate) {
      out.max_mu = std::max(out.max_mu, row.mu);
      out.max_mu_over_factor = std::max(out.max_mu_over_factor, row.mu / row.certificate->factor);
    }
    if (row.report) {
      const double d = config.dim;
      out.max_diam_ratio = std::max(out.max_diam_ratio, row.report->diam_ratio());
      out.max_diam_ratio_over_bound = std::max(out.max_diam_ratio_over_bound, row.report->diam_ratio() / (2 * d * d));
    }
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace qhelly
