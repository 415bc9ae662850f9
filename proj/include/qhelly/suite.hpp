#ifndef QHELLY_SUITE_HPP
#define QHELLY_SUITE_HPP

#include "qhelly/helly.hpp"
#include "qhelly/sparse_select.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qhelly {

struct SuiteConfig {
  std::string kind = "tangent-halfspaces";
  int dim = 3;
  int n = 20;
  int count = 10;
  std::uint64_t seed = 1;
  SimplexMode mode = SimplexMode::LocalSwap;
  std::optional<double> lambda;
};

struct SuiteRow {
  int index = 0;
  /// Seed passed to generate(): stream_seed(config.seed, index).
  std::uint64_t instance_seed = 0;
  bool ok = false;
  /// Exception text when the instance could not be processed.
  std::string error;

  /// Vertex instances.
  std::optional<SelectionCertificate> certificate;
  /// Measured smallest factor of the selected subset.
  double mu = 0.0;
  int mutations_applicable = 0;
  int mutations_caught = 0;

  /// Halfspace instances.
  std::optional<HellyReport> report;
};

struct SuiteSummary {
  SuiteConfig config;
  std::vector<SuiteRow> rows;
  int passed = 0;
  int failed = 0;
  /// Largest diam ratio and its share of 2d^2.
  double max_diam_ratio = 0.0;
  double max_diam_ratio_over_bound = 0.0;
  /// Largest mu and its share of the certified factor (lambda + 2) d.
  double max_mu = 0.0;
  double max_mu_over_factor = 0.0;

  bool all_hold() const { return failed == 0; }
};

/// Generates config.count instances and runs select (vertex input) and/or
/// helly (halfspace input) on each. Instances that throw count as failures.
SuiteSummary run_suite(const SuiteConfig& config);

}  // namespace qhelly

#endif  // QHELLY_SUITE_HPP
