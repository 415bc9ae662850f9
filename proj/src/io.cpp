#include "qhelly/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace qhelly::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw GeometryError(ErrorKind::InvalidArgument, "json: " + what); }

// Adding 0.0 turns -0.0 into 0.0.
Json number(double x) { return std::isfinite(x) ? Json(x + 0.0) : Json(nullptr); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'");
  return j.at(key);
}

double read_double(const Json& j, const std::string& what) {
  if (!j.is_number()) bad(what + " must be a number");
  return j.get<double>();
}

int read_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) bad(what + " must be an integer");
  return j.get<int>();
}

Vec read_vec(const Json& j, const std::string& what, int expected = -1) {
  if (!j.is_array()) bad(what + " must be an array");
  if (expected >= 0 && static_cast<int>(j.size()) != expected) {
    bad(what + " has length " + std::to_string(j.size()) + ", expected " + std::to_string(expected));
  }
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = read_double(j[i], what);
  return v;
}

std::vector<int> read_indices(const Json& j, const std::string& what) {
  if (!j.is_array()) bad(what + " must be an array");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(read_int(x, what));
  return out;
}

bool read_bool(const Json& j, const char* key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) bad(std::string(key) + " must be a boolean");
  return j.at(key).get<bool>();
}

Json optional_number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

}  // namespace

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

Json to_json(const Mat& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(to_json(Vec(m.row(r).transpose())));
  return out;
}

Json to_json(const HPolytope& h) {
  Json rows = Json::array();
  for (const auto& row : h.halfspaces()) rows.push_back(Json{{"a", to_json(row.normal)}, {"b", number(row.offset)}});
  return Json{{"dim", h.dim()}, {"hrep", rows}};
}

Json to_json(const VPolytope& v) {
  Json pts = Json::array();
  for (const auto& p : v.points()) pts.push_back(to_json(p));
  return Json{{"dim", v.dim()}, {"vrep", pts}};
}

Json to_json(const Instance& inst) {
  Json out{{"dim", inst.dim}};
  if (inst.hrep) out["hrep"] = to_json(*inst.hrep)["hrep"];
  if (inst.vrep) out["vrep"] = to_json(*inst.vrep)["vrep"];
  return out;
}

Instance instance_from_json(const Json& j) {
  Instance out;
  out.dim = read_int(field(j, "dim"), "dim");
  if (out.dim < 1) bad("dim must be positive");
  if (j.contains("hrep")) {
    const Json& rows = j.at("hrep");
    if (!rows.is_array() || rows.empty()) bad("hrep must be a non-empty array");
    std::vector<Halfspace> hs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::string where = "hrep[" + std::to_string(i) + "]";
      hs.emplace_back(read_vec(field(rows[i], "a"), where + ".a", out.dim), read_double(field(rows[i], "b"), where + ".b"));
    }
    out.hrep = HPolytope(out.dim, std::move(hs));
  }
  if (j.contains("vrep")) {
    const Json& pts = j.at("vrep");
    if (!pts.is_array() || pts.empty()) bad("vrep must be a non-empty array");
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < pts.size(); ++i) vs.push_back(read_vec(pts[i], "vrep[" + std::to_string(i) + "]", out.dim));
    out.vrep = VPolytope(out.dim, std::move(vs));
  }
  if (!out.hrep && !out.vrep) bad("expected 'hrep' or 'vrep'");
  return out;
}

Json to_json(const SelectionCertificate& c) {
  return Json{{"dim", c.dim},
              {"simplex", {{"indices", c.simplex.indices}, {"volume", number(c.simplex.volume)},
                           {"mode", to_string(c.simplex.mode)}}},
              {"carath_indices", c.carath_indices},
              {"carath_weights", to_json(c.carath_weights)},
              {"u", to_json(c.u)},
              {"y", to_json(c.y)},
              {"lambda_measured", number(c.lambda_measured)},
              {"lambda_used", number(c.lambda_used)},
              {"factor", number(c.factor)},
              {"qprime_indices", c.qprime_indices},
              {"u_fallback", c.u_fallback},
              {"carath_fallback", c.carath_fallback},
              {"verified", c.verified}};
}

SelectionCertificate certificate_from_json(const Json& j) {
  SelectionCertificate c;
  c.dim = read_int(field(j, "dim"), "dim");
  const Json& s = field(j, "simplex");
  c.simplex.indices = read_indices(field(s, "indices"), "simplex.indices");
  c.simplex.volume = read_double(field(s, "volume"), "simplex.volume");
  if (!field(s, "mode").is_string()) bad("simplex.mode must be a string");
  c.simplex.mode = simplex_mode_from_string(s.at("mode").get<std::string>());
  c.carath_indices = read_indices(field(j, "carath_indices"), "carath_indices");
  c.carath_weights = read_vec(field(j, "carath_weights"), "carath_weights");
  c.u = read_vec(field(j, "u"), "u");
  c.y = read_vec(field(j, "y"), "y");
  c.lambda_measured = read_double(field(j, "lambda_measured"), "lambda_measured");
  c.lambda_used = read_double(field(j, "lambda_used"), "lambda_used");
  c.factor = read_double(field(j, "factor"), "factor");
  c.qprime_indices = read_indices(field(j, "qprime_indices"), "qprime_indices");
  c.u_fallback = read_bool(j, "u_fallback", false);
  c.carath_fallback = read_bool(j, "carath_fallback", false);
  c.verified = read_bool(j, "verified", false);
  return c;
}

Json to_json(const VerifyResult& r) {
  Json out{{"ok", r.ok}};
  if (!r.ok) {
    out["failed_check"] = r.failed_check;
    out["detail"] = r.detail;
  }
  return out;
}

Json to_json(const HellyReport& r) {
  const double d = r.dim;
  return Json{{"dim", r.dim},
              {"sigma", r.sigma},
              {"diam_K", number(r.diam_K)},
              {"diam_Ksigma", number(r.diam_Ksigma)},
              {"diam_ratio", number(r.diam_ratio())},
              {"diam_bound", number(r.diam_bound)},
              {"diam_ratio_bound", number(2 * d * d)},
              {"vol_K", number(r.vol_K)},
              {"vol_Ksigma", number(r.vol_Ksigma)},
              {"vol_ratio", number(r.vol_ratio())},
              {"vol_bound_explicit", number(r.vol_bound_explicit)},
              {"vol_ratio_bound", number(explicit_volume_ratio_bound(r.dim))},
              {"lambda_measured", number(r.lambda_measured)},
              {"john_quality", number(r.john_quality)},
              {"ksigma_bounded", r.ksigma_bounded},
              {"k_in_ksigma", r.k_in_ksigma},
              {"containment_transfer", r.containment_transfer},
              {"santalo_product", number(r.santalo_product)},
              {"santalo_bound", number(unit_ball_volume(r.dim) * unit_ball_volume(r.dim))},
              {"santalo_ok", r.santalo_ok},
              {"dr_floor", number(simplex_volume_floor(r.dim))},
              {"dr_floor_ok", r.dr_floor_ok ? Json(*r.dr_floor_ok) : Json(nullptr)},
              {"bounds_hold", r.bounds_hold()},
              {"certificate", to_json(r.certificate)}};
}

Json to_json(const JohnResult& j) {
  return Json{{"ellipsoid", {{"center", to_json(j.ellipsoid.center())}, {"shape", to_json(j.ellipsoid.shape())}}},
              {"transform", {{"linear", to_json(j.transform.linear())}, {"shift", to_json(j.transform.shift())}}},
              {"quality", number(j.quality)},
              {"outer_radius", optional_number(j.outer_radius)},
              {"lambda_measured", optional_number(j.lambda_measured)},
              {"newton_steps", j.newton_steps},
              {"log_det", number(j.log_det)}};
}

Json to_json(const OracleResult& r) {
  return Json{{"objective", to_string(r.objective)},
              {"best_sigma", r.best_sigma},
              {"best_value", number(r.best_value)},
              {"evaluated", r.evaluated}};
}

Json to_json(const MutationOutcome& m) {
  return Json{{"mutation", m.mutation},
              {"should_reject", m.should_reject ? Json(*m.should_reject) : Json(nullptr)},
              {"rejected", m.rejected()},
              {"failed_check", m.result.failed_check},
              {"agrees", m.agrees()}};
}

Json to_json(const SuiteSummary& s) {
  Json rows = Json::array();
  for (const auto& r : s.rows) {
    Json row{{"index", r.index}, {"instance_seed", r.instance_seed}, {"ok", r.ok}};
    if (!r.error.empty()) row["error"] = r.error;
    if (r.certificate) {
      row["qprime_size"] = r.certificate->qprime_indices.size();
      row["lambda_measured"] = number(r.certificate->lambda_measured);
      row["factor"] = number(r.certificate->factor);
      row["mu"] = number(r.mu);
      row["verified"] = r.certificate->verified;
      row["mutations_applicable"] = r.mutations_applicable;
      row["mutations_caught"] = r.mutations_caught;
    }
    if (r.report) {
      row["sigma_size"] = r.report->sigma.size();
      row["diam_ratio"] = number(r.report->diam_ratio());
      row["vol_ratio"] = number(r.report->vol_ratio());
      row["lambda_measured"] = number(r.report->lambda_measured);
      row["bounds_hold"] = r.report->bounds_hold();
    }
    rows.push_back(std::move(row));
  }
  const auto& c = s.config;
  return Json{{"config",
               {{"kind", c.kind},
                {"dim", c.dim},
                {"n", c.n},
                {"count", c.count},
                {"seed", c.seed},
                {"mode", to_string(c.mode)},
                {"lambda", optional_number(c.lambda)}}},
              {"rows", rows},
              {"aggregate",
               {{"passed", s.passed},
                {"failed", s.failed},
                {"max_diam_ratio", number(s.max_diam_ratio)},
                {"diam_ratio_bound", 2 * c.dim * c.dim},
                {"max_diam_ratio_over_bound", number(s.max_diam_ratio_over_bound)},
                {"max_mu", number(s.max_mu)},
                {"max_mu_over_factor", number(s.max_mu_over_factor)},
                {"all_hold", s.all_hold()}}}};
}

Json read_json(const std::string& path) {
  try {
    if (path == "-") return Json::parse(std::cin);
    std::ifstream in(path);
    if (!in) bad("cannot open '" + path + "'");
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    bad("cannot parse '" + path + "': " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_json(const std::string& path, const Json& j) {
  if (path == "-") {
    std::cout << dump(j);
    return;
  }
  std::ofstream out(path);
  if (!out) bad("cannot write '" + path + "'");
  out << dump(j);
}

}  // namespace qhelly::io
