#include "qhelly/john.hpp"

#include "qhelly/hull.hpp"
#include "qhelly/lp.hpp"
#include "qhelly/polarity.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace qhelly {

namespace {

// Symmetric matrices are parametrized by their upper triangle; basis element
// (j, k) is e_j e_k^T + e_k e_j^T off the diagonal and e_j e_j^T on it.
struct SymBasis {
  int d;
  std::vector<std::pair<int, int>> index;

  explicit SymBasis(int dim) : d(dim) {
    for (int j = 0; j < d; ++j)
      for (int k = j; k < d; ++k) index.emplace_back(j, k);
  }
  int size() const { return static_cast<int>(index.size()); }

  Mat to_matrix(const Vec& z) const {
    Mat e = Mat::Zero(d, d);
    for (int p = 0; p < size(); ++p) {
      const auto [j, k] = index[static_cast<std::size_t>(p)];
      e(j, k) += z(p);
      if (j != k) e(k, j) += z(p);
    }
    return e;
  }

  Vec from_matrix(const Mat& e) const {
    Vec z(size());
    for (int p = 0; p < size(); ++p) {
      const auto [j, k] = index[static_cast<std::size_t>(p)];
      z(p) = e(j, k);
    }
    return z;
  }

  // <M, B_p> for symmetric M.
  double pair(const Mat& m, int p) const {
    const auto [j, k] = index[static_cast<std::size_t>(p)];
    return j == k ? m(j, j) : m(j, k) + m(k, j);
  }

  // Columns B_p a.
  Mat apply(const Vec& a) const {
    Mat out = Mat::Zero(d, size());
    for (int p = 0; p < size(); ++p) {
      const auto [j, k] = index[static_cast<std::size_t>(p)];
      out(j, p) += a(k);
      if (j != k) out(k, p) += a(j);
    }
    return out;
  }
};

class BarrierProblem {
 public:
  BarrierProblem(const Mat& a, const Vec& b) : a_(a), b_(b), basis_(static_cast<int>(a.cols())) {
    for (Eigen::Index i = 0; i < a_.rows(); ++i) applied_.push_back(basis_.apply(a_.row(i).transpose()));
  }

  int dim() const { return static_cast<int>(a_.cols()); }
  int num_vars() const { return basis_.size() + dim(); }
  int num_constraints() const { return static_cast<int>(a_.rows()); }
  const SymBasis& basis() const { return basis_; }

  Mat shape(const Vec& z) const { return basis_.to_matrix(z.head(basis_.size())); }
  Vec center(const Vec& z) const { return z.tail(dim()); }

  // Barrier value, or +inf outside the domain.
  double value(const Vec& z, double t) const {
    const Mat e = shape(z);
    Eigen::LLT<Mat> llt(e);
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    const Mat l = llt.matrixL();
    for (int j = 0; j < dim(); ++j)
      if (!(l(j, j) > 0.0)) return std::numeric_limits<double>::infinity();
    const double logdet = 2.0 * l.diagonal().array().log().sum();
    const Vec c = center(z);
    double f = -t * logdet;
    for (int i = 0; i < num_constraints(); ++i) {
      const Vec ai = a_.row(i).transpose();
      const double s = b_(i) - ai.dot(c) - (e * ai).norm();
      if (!(s > 0.0)) return std::numeric_limits<double>::infinity();
      f -= std::log(s);
    }
    return f;
  }

  void derivatives(const Vec& z, double t, Vec& grad, Mat& hess) const {
    const int p = basis_.size();
    const int n = num_vars();
    const Mat e = shape(z);
    const Mat w = e.inverse();
    const Vec c = center(z);
    grad = Vec::Zero(n);
    hess = Mat::Zero(n, n);

    // -t log det E.
    for (int q = 0; q < p; ++q) {
      grad(q) -= t * basis_.pair(w, q);
      const Mat bq = basis_.to_matrix(Vec::Unit(p, q));
      const Mat m = w * bq * w;
      for (int r = 0; r < p; ++r) hess(q, r) += t * basis_.pair(m, r);
    }

    // -sum log(b_i - a_i.c - |E a_i|).
    Vec ds(n);
    for (int i = 0; i < num_constraints(); ++i) {
      const Vec ai = a_.row(i).transpose();
      const Vec g = e * ai;
      const double r = g.norm();
      const double s = b_(i) - ai.dot(c) - r;
      const Mat& j = applied_[static_cast<std::size_t>(i)];
      const Vec qv = j.transpose() * g / r;
      ds.head(p) = -qv;
      ds.tail(dim()) = -ai;
      grad -= ds / s;
      hess.noalias() += ds * ds.transpose() / (s * s);
      hess.topLeftCorner(p, p) += (j.transpose() * j - qv * qv.transpose()) / (r * s);
    }
  }

 private:
  Mat a_;
  Vec b_;
  SymBasis basis_;
  std::vector<Mat> applied_;
};

// Unit-normal copy of the rows.
void normalized_rows(const HPolytope& poly, Mat& a, Vec& b) {
  a.resize(static_cast<Eigen::Index>(poly.size()), poly.dim());
  b.resize(static_cast<Eigen::Index>(poly.size()));
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Halfspace h = poly[i].normalized();
    a.row(static_cast<Eigen::Index>(i)) = h.normal.transpose();
    b(static_cast<Eigen::Index>(i)) = h.offset;
  }
}

struct SolveStats {
  int newton_steps = 0;
  double log_det = 0.0;
};

std::pair<Vec, Mat> solve_mvie(const HPolytope& poly, const JohnOptions& opt, SolveStats& stats) {
  const auto [c0, radius] = chebyshev_center(poly);
  Mat a;
  Vec b;
  normalized_rows(poly, a, b);

  // Work in coordinates centred at the Chebyshev centre and scaled by its radius.
  const Vec b_local = (b - a * c0) / radius;
  BarrierProblem problem(a, b_local);
  const int d = poly.dim();
  const int m = problem.num_constraints();
  Vec z(problem.num_vars());
  z.head(problem.basis().size()) = problem.basis().from_matrix(0.5 * Mat::Identity(d, d));
  z.tail(d).setZero();

  double t = 1.0;
  const double mu = 16.0;
  Vec grad;
  Mat hess;
  for (;;) {
    for (int step = 0; step < opt.max_newton_steps; ++step) {
      problem.derivatives(z, t, grad, hess);
      const Vec delta = hess.ldlt().solve(-grad);
      const double decrement = -grad.dot(delta);
      if (!(decrement > 1e-13) || !delta.allFinite()) break;
      const double f0 = problem.value(z, t);
      double alpha = 1.0;
      Vec next = z + delta;
      double f1 = problem.value(next, t);
      while (!(f1 <= f0 - 0.25 * alpha * decrement) && alpha > 1e-12) {
        alpha *= 0.5;
        next = z + alpha * delta;
        f1 = problem.value(next, t);
      }
      if (!(f1 < std::numeric_limits<double>::infinity()) || alpha <= 1e-12) break;
      z = next;
      ++stats.newton_steps;
    }
    if (static_cast<double>(m) / t < opt.gap) break;
    t *= mu;
  }

  Mat e = problem.shape(z);
  e = 0.5 * (e + e.transpose());
  stats.log_det = std::log(std::abs(e.determinant())) + d * std::log(radius);
  return {c0 + radius * problem.center(z), radius * e};
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::pair<Vec, double> chebyshev_center(const HPolytope& poly) {
  if (recession_direction(poly)) throw GeometryError(ErrorKind::Unbounded, "polytope is unbounded");
  const int d = poly.dim();
  lp::Problem p(d + 1);
  p.objective(d) = 1.0;
  for (const auto& row : poly.halfspaces()) {
    const Halfspace h = row.normalized();
    Vec r(d + 1);
    r.head(d) = h.normal;
    r(d) = 1.0;
    p.add_inequality(r, h.offset);
  }
  const auto sol = lp::solve(p);
  if (sol.status == lp::Status::Infeasible) throw GeometryError(ErrorKind::EmptyInterior, "polytope is empty");
  if (!sol.optimal()) throw GeometryError(ErrorKind::NumericalFailure, "Chebyshev centre LP failed");
  if (!(sol.x(d) > tolerance())) throw GeometryError(ErrorKind::EmptyInterior, "polytope has empty interior");
  return {sol.x.head(d), sol.x(d)};
}

Ellipsoid max_inscribed_ellipsoid(const HPolytope& poly, const JohnOptions& options) {
  SolveStats stats;
  auto [c, e] = solve_mvie(poly, options, stats);
  return Ellipsoid(std::move(c), std::move(e));
}

JohnPosition to_john_position(const HPolytope& poly, const JohnOptions& options) {
  SolveStats stats;
  auto [c, e] = solve_mvie(poly, options, stats);
  Ellipsoid ellipsoid(c, e);
  const Mat inv = ellipsoid.shape().inverse();
  AffineMap transform(inv, -inv * ellipsoid.center());

  const HPolytope image = apply_affine(transform, poly);
  std::vector<Halfspace> rows;
  rows.reserve(image.size());
  double quality = std::numeric_limits<double>::infinity();
  for (const auto& h : image.halfspaces()) {
    rows.push_back(h.normalized());
    quality = std::min(quality, rows.back().offset);
  }
  HPolytope body(poly.dim(), std::move(rows));

  JohnResult result{std::move(ellipsoid), std::move(transform), quality, std::nullopt, std::nullopt,
                    stats.newton_steps, stats.log_det};
  if (binomial(static_cast<int>(body.size()), body.dim()) <= options.vertex_budget) {
    const auto verts = vertices_of_hpolytope(body);
    double r = 0.0;
    for (const auto& v : verts.points()) r = std::max(r, v.norm());
    result.outer_radius = r;
  }
  if (quality > tolerance()) result.lambda_measured = symmetry_constant(polar_of_hrep(body).poly);
  return {std::move(result), std::move(body)};
}

}  // namespace qhelly
