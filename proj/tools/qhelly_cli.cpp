// qhelly command-line driver.
//
// Exit codes: 0 success, 1 a checked bound or verification failed,
// 2 invalid input or a geometry error.

#include "qhelly/generate.hpp"
#include "qhelly/helly.hpp"
#include "qhelly/io.hpp"
#include "qhelly/john.hpp"
#include "qhelly/oracle.hpp"
#include "qhelly/sparse_select.hpp"
#include "qhelly/suite.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

using namespace qhelly;
using io::Json;

namespace {

struct Common {
  std::string input = "-";
  std::string output = "-";
  std::string mode = "swap";
  std::optional<double> lambda;
};

// Human-readable lines go to stdout only when JSON goes to a file.
std::ostream& table_stream(const std::string& output) { return output == "-" ? std::cerr : std::cout; }

VPolytope require_vrep(const Instance& inst) {
  if (!inst.vrep) throw GeometryError(ErrorKind::InvalidArgument, "input has no 'vrep'");
  return *inst.vrep;
}

HPolytope require_hrep(const Instance& inst) {
  if (!inst.hrep) throw GeometryError(ErrorKind::InvalidArgument, "input has no 'hrep'");
  return *inst.hrep;
}

int cmd_generate(const std::string& kind, int dim, int n, std::uint64_t seed, const std::string& output) {
  Instance inst = generate(kind, dim, n, seed);
  io::write_json(output, io::to_json(inst));
  return 0;
}

int cmd_select(const Common& c) {
  const VPolytope q = require_vrep(io::instance_from_json(io::read_json(c.input)));
  const SelectionCertificate cert = sparse_approx(q, c.lambda, simplex_mode_from_string(c.mode));
  io::write_json(c.output, io::to_json(cert));
  return cert.verified ? 0 : 1;
}

int cmd_helly(const Common& c, std::uint64_t seed, std::int64_t mc_samples) {
  const HPolytope h = require_hrep(io::instance_from_json(io::read_json(c.input)));
  HellyOptions options;
  options.mode = simplex_mode_from_string(c.mode);
  const HellyReport r = helly_subset(h, options);
  Json out = io::to_json(r);
  if (mc_samples > 0) {
    Rng rng(seed);
    const auto k = monte_carlo_volume(h, mc_samples, rng);
    Json mc{{"samples", mc_samples}, {"seed", seed},
            {"vol_K", {{"estimate", k.estimate}, {"standard_error", k.standard_error}}}};
    if (r.ksigma_bounded) {
      const auto s = monte_carlo_volume(h.subset(r.sigma), mc_samples, rng);
      mc["vol_Ksigma"] = {{"estimate", s.estimate}, {"standard_error", s.standard_error}};
    }
    out["monte_carlo"] = mc;
  }
  io::write_json(c.output, out);

  auto& t = table_stream(c.output);
  const double d = r.dim;
  char line[160];
  std::snprintf(line, sizeof line, "%-14s %14s %14s %10s\n", "quantity", "observed", "bound", "holds");
  t << line;
  std::snprintf(line, sizeof line, "%-14s %14zu %14d %10s\n", "|sigma|", r.sigma.size(), 2 * r.dim,
                static_cast<int>(r.sigma.size()) <= 2 * r.dim ? "yes" : "NO");
  t << line;
  std::snprintf(line, sizeof line, "%-14s %14.6g %14.6g %10s\n", "diam ratio", r.diam_ratio(), 2 * d * d,
                r.diam_Ksigma <= r.diam_bound * (1 + 1e-3) ? "yes" : "NO");
  t << line;
  std::snprintf(line, sizeof line, "%-14s %14.6g %14.6g %10s\n", "vol ratio", r.vol_ratio(),
                explicit_volume_ratio_bound(r.dim),
                r.vol_Ksigma <= r.vol_bound_explicit * (1 + 1e-3) ? "yes" : "NO");
  t << line;
  std::snprintf(line, sizeof line, "%-14s %14.6g %14.6g %10s\n", "lambda", r.lambda_measured, d,
                r.lambda_measured <= d * (1 + 1e-6) ? "yes" : "NO");
  t << line;
  return r.bounds_hold() ? 0 : 1;
}

int cmd_john(const Common& c) {
  const HPolytope h = require_hrep(io::instance_from_json(io::read_json(c.input)));
  const JohnPosition jp = to_john_position(h);
  io::write_json(c.output, io::to_json(jp.john));
  return 0;
}

int cmd_oracle(const Common& c, const std::string& objective_name, std::int64_t budget, int k) {
  const Instance inst = io::instance_from_json(io::read_json(c.input));
  const Objective objective = objective_from_string(objective_name);
  const int d = inst.dim;
  if (k < 0) k = 2 * d;
  Json out;
  if (objective == Objective::ContainmentFactor) {
    const VPolytope q = require_vrep(inst);
    const OracleResult best = best_vertex_subset(q, k, budget);
    const SelectionCertificate cert = sparse_approx(q, c.lambda, simplex_mode_from_string(c.mode));
    out = io::to_json(best);
    out["pipeline"] = {{"sigma", cert.qprime_indices},
                       {"value", min_containment_factor(q, q.subset(cert.qprime_indices))},
                       {"factor", cert.factor}};
    Json mutations = Json::array();
    for (const auto& m : mutate_and_check(cert, q)) mutations.push_back(io::to_json(m));
    out["mutations"] = mutations;
  } else {
    const HPolytope h = require_hrep(inst);
    const OracleResult best = best_halfspace_subset(h, k, objective, budget);
    HellyOptions options;
    options.mode = simplex_mode_from_string(c.mode);
    const HellyReport r = helly_subset(h, options);
    out = io::to_json(best);
    out["pipeline"] = {{"sigma", r.sigma},
                       {"value", objective == Objective::Diameter ? r.diam_ratio() : r.vol_ratio()}};
  }
  io::write_json(c.output, out);
  return 0;
}

int cmd_verify(const Common& c, const std::string& cert_path) {
  const VPolytope q = require_vrep(io::instance_from_json(io::read_json(c.input)));
  const SelectionCertificate cert = io::certificate_from_json(io::read_json(cert_path));
  const VerifyResult r = verify_certificate(q, cert);
  io::write_json(c.output, io::to_json(r));
  return r.ok ? 0 : 1;
}

int cmd_suite(const SuiteConfig& config, const std::string& output) {
  const SuiteSummary s = run_suite(config);
  io::write_json(output, io::to_json(s));
  auto& t = table_stream(output);
  const double d = config.dim;
  t << "instances " << s.rows.size() << ", passed " << s.passed << ", failed " << s.failed << "\n";
  if (s.max_diam_ratio > 0) {
    t << "max diam ratio " << s.max_diam_ratio << " (bound " << 2 * d * d << ")\n";
  }
  if (s.max_mu > 0) {
    t << "max containment factor " << s.max_mu << " (" << s.max_mu_over_factor << " of the certified factor)\n";
  }
  for (const auto& r : s.rows) {
    if (!r.ok) t << "  instance " << r.index << " failed" << (r.error.empty() ? "" : ": " + r.error) << "\n";
  }
  return s.all_hold() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse vertex selection and quantitative Helly subsets for polytopes"};
  app.require_subcommand(1);
  std::optional<double> tol;
  app.add_option("--tol", tol, "Geometric tolerance (default 1e-9)")->check(CLI::PositiveNumber);

  Common common;
  auto add_io = [&](CLI::App* sub, bool with_input) {
    if (with_input) sub->add_option("input", common.input, "Input JSON ('-' for stdin)")->required();
    sub->add_option("-o,--output", common.output, "Output JSON ('-' for stdout)");
  };
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", common.mode, "Simplex search: exhaustive or swap")
        ->check(CLI::IsMember({"exhaustive", "swap"}));
  };

  std::string kind;
  int dim = 0;
  int n = 10;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("generate", "Write a generated instance");
  gen->add_option("--kind", kind, "Instance kind")->required()->check(CLI::IsMember(instance_kinds()));
  gen->add_option("-d,--dim", dim, "Dimension")->required()->check(CLI::Range(1, 8));
  gen->add_option("-n", n, "Number of points or halfspaces");
  gen->add_option("--seed", seed, "RNG seed");
  add_io(gen, false);

  auto* sel = app.add_subcommand("select", "Select at most 2d vertices and write the certificate");
  add_io(sel, true);
  add_mode(sel);
  sel->add_option("--lambda", common.lambda, "Symmetry constant to assume (raised to the measured one)");

  std::int64_t mc_samples = 0;
  auto* hel = app.add_subcommand("helly", "Select at most 2d halfspaces and report diameter and volume ratios");
  add_io(hel, true);
  add_mode(hel);
  hel->add_option("--seed", seed, "Seed for the Monte Carlo cross-check");
  hel->add_option("--mc-samples", mc_samples, "Monte Carlo samples (0 disables)")->check(CLI::NonNegativeNumber);

  auto* john = app.add_subcommand("john", "Maximum-volume inscribed ellipsoid and John position");
  add_io(john, true);

  std::string objective = "diam";
  std::int64_t budget = 10'000'000;
  int k = -1;
  auto* orc = app.add_subcommand("oracle", "Brute-force best subset, compared with the pipeline");
  add_io(orc, true);
  add_mode(orc);
  orc->add_option("--objective", objective, "diam, vol (halfspace input) or factor (vertex input)")
      ->check(CLI::IsMember({"diam", "vol", "factor"}));
  orc->add_option("--budget", budget, "Maximum number of subsets");
  orc->add_option("-k", k, "Largest subset size (default 2d)");
  orc->add_option("--lambda", common.lambda, "Symmetry constant for the pipeline run");

  std::string cert_path;
  auto* ver = app.add_subcommand("verify", "Re-check a selection certificate against its V-polytope");
  add_io(ver, true);
  ver->add_option("--certificate", cert_path, "Certificate JSON")->required();

  SuiteConfig suite;
  std::string suite_mode = "swap";
  auto* sui = app.add_subcommand("suite", "Run a generated corpus and check every bound");
  sui->add_option("--kind", suite.kind, "Instance kind")->check(CLI::IsMember(instance_kinds()));
  sui->add_option("-d,--dim", suite.dim, "Dimension")->check(CLI::Range(2, 8));
  sui->add_option("-n", suite.n, "Points or halfspaces per instance");
  sui->add_option("--count", suite.count, "Number of instances")->check(CLI::NonNegativeNumber);
  sui->add_option("--seed", suite.seed, "Corpus seed");
  sui->add_option("--mode", suite_mode, "Simplex search: exhaustive or swap")
      ->check(CLI::IsMember({"exhaustive", "swap"}));
  sui->add_option("--lambda", suite.lambda, "Symmetry constant to assume");
  add_io(sui, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version exit 0; usage errors share the input-error code.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    std::optional<ScopedTolerance> scoped;
    if (tol) scoped.emplace(*tol);
    if (*gen) return cmd_generate(kind, dim, n, seed, common.output);
    if (*sel) return cmd_select(common);
    if (*hel) return cmd_helly(common, seed, mc_samples);
    if (*john) return cmd_john(common);
    if (*orc) return cmd_oracle(common, objective, budget, k);
    if (*ver) return cmd_verify(common, cert_path);
    if (*sui) {
      suite.mode = simplex_mode_from_string(suite_mode);
      return cmd_suite(suite, common.output);
    }
  } catch (const GeometryError& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return 2;
  }
  return 2;
}
