#include "qhelly/core.hpp"

#include <atomic>
#include <cmath>
#include <numbers>

namespace qhelly {

namespace {

std::atomic<double> g_tolerance{1e-9};

void require_finite(const Vec& v, const char* what) {
  if (!v.allFinite()) {
    throw GeometryError(ErrorKind::InvalidArgument, std::string(what) + ": non-finite entry");
  }
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::EmptyInterior: return "EmptyInterior";
    case ErrorKind::OriginNotInterior: return "OriginNotInterior";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::SingularMap: return "SingularMap";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

GeometryError::GeometryError(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

double tolerance() { return g_tolerance.load(std::memory_order_relaxed); }

void set_tolerance(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw GeometryError(ErrorKind::InvalidArgument, "tolerance must be positive");
  }
  g_tolerance.store(eps, std::memory_order_relaxed);
}

ScopedTolerance::ScopedTolerance(double eps) : saved_(tolerance()) { set_tolerance(eps); }
ScopedTolerance::~ScopedTolerance() { g_tolerance.store(saved_, std::memory_order_relaxed); }

Halfspace::Halfspace(Vec a, double b) : normal(std::move(a)), offset(b) {
  if (normal.size() < 1) throw GeometryError(ErrorKind::InvalidArgument, "halfspace: empty normal");
  require_finite(normal, "halfspace normal");
  if (!std::isfinite(offset)) throw GeometryError(ErrorKind::InvalidArgument, "halfspace: non-finite offset");
  if (!(normal.norm() > 0.0)) throw GeometryError(ErrorKind::InvalidArgument, "halfspace: zero normal");
}

Halfspace Halfspace::normalized() const {
  const double n = normal.norm();
  return Halfspace(normal / n, offset / n);
}

HPolytope::HPolytope(int dim, std::vector<Halfspace> halfspaces)
    : dim_(dim), halfspaces_(std::move(halfspaces)) {
  if (dim_ < 1) throw GeometryError(ErrorKind::InvalidArgument, "hpolytope: dim must be >= 1");
  if (halfspaces_.empty()) throw GeometryError(ErrorKind::InvalidArgument, "hpolytope: no halfspaces");
  for (const auto& h : halfspaces_) {
    if (h.dim() != dim_) throw GeometryError(ErrorKind::InvalidArgument, "hpolytope: normal length != dim");
  }
}

Mat HPolytope::normals() const {
  Mat a(static_cast<Eigen::Index>(size()), dim_);
  for (std::size_t i = 0; i < size(); ++i) a.row(static_cast<Eigen::Index>(i)) = halfspaces_[i].normal.transpose();
  return a;
}

Vec HPolytope::offsets() const {
  Vec b(static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) b(static_cast<Eigen::Index>(i)) = halfspaces_[i].offset;
  return b;
}

bool HPolytope::contains(const Vec& x, double tol) const {
  for (const auto& h : halfspaces_) {
    if (!h.contains(x, tol)) return false;
  }
  return true;
}

HPolytope HPolytope::subset(const std::vector<int>& indices) const {
  std::vector<Halfspace> rows;
  rows.reserve(indices.size());
  for (int i : indices) rows.push_back(halfspaces_.at(static_cast<std::size_t>(i)));
  return HPolytope(dim_, std::move(rows));
}

VPolytope::VPolytope(int dim, std::vector<Vec> points) : dim_(dim), points_(std::move(points)) {
  if (dim_ < 1) throw GeometryError(ErrorKind::InvalidArgument, "vpolytope: dim must be >= 1");
  if (points_.empty()) throw GeometryError(ErrorKind::InvalidArgument, "vpolytope: no points");
  for (const auto& p : points_) {
    if (p.size() != dim_) throw GeometryError(ErrorKind::InvalidArgument, "vpolytope: point length != dim");
    require_finite(p, "vpolytope point");
  }
}

Mat VPolytope::as_matrix() const {
  Mat m(dim_, static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) m.col(static_cast<Eigen::Index>(i)) = points_[i];
  return m;
}

VPolytope VPolytope::subset(const std::vector<int>& indices) const {
  std::vector<Vec> pts;
  pts.reserve(indices.size());
  for (int i : indices) pts.push_back(points_.at(static_cast<std::size_t>(i)));
  return VPolytope(dim_, std::move(pts));
}

AffineMap::AffineMap(Mat linear, Vec shift) : linear_(std::move(linear)), shift_(std::move(shift)) {
  if (linear_.rows() != linear_.cols() || linear_.rows() != shift_.size() || shift_.size() < 1) {
    throw GeometryError(ErrorKind::InvalidArgument, "affine map: dimension mismatch");
  }
  if (!linear_.allFinite()) throw GeometryError(ErrorKind::InvalidArgument, "affine map: non-finite entry");
  require_finite(shift_, "affine shift");
  if (!(std::abs(linear_.determinant()) > tolerance())) {
    throw GeometryError(ErrorKind::SingularMap, "affine map: linear part is singular");
  }
}

AffineMap AffineMap::identity(int dim) { return AffineMap(Mat::Identity(dim, dim), Vec::Zero(dim)); }

AffineMap AffineMap::inverse() const {
  Mat inv = linear_.inverse();
  Vec s = -inv * shift_;
  return AffineMap(std::move(inv), std::move(s));
}

AffineMap AffineMap::compose(const AffineMap& first) const {
  return AffineMap(linear_ * first.linear(), linear_ * first.shift() + shift_);
}

Ellipsoid::Ellipsoid(Vec center, Mat shape) : center_(std::move(center)), shape_(std::move(shape)) {
  if (shape_.rows() != shape_.cols() || shape_.rows() != center_.size() || center_.size() < 1) {
    throw GeometryError(ErrorKind::InvalidArgument, "ellipsoid: dimension mismatch");
  }
  require_finite(center_, "ellipsoid center");
  const double scale = std::max(1.0, shape_.cwiseAbs().maxCoeff());
  if ((shape_ - shape_.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw GeometryError(ErrorKind::InvalidArgument, "ellipsoid: shape not symmetric");
  }
  shape_ = 0.5 * (shape_ + shape_.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> eig(shape_, Eigen::EigenvaluesOnly);
  if (!(eig.eigenvalues().minCoeff() > 0.0)) {
    throw GeometryError(ErrorKind::InvalidArgument, "ellipsoid: shape not positive definite");
  }
}

Ellipsoid Ellipsoid::unit_ball(int dim) { return Ellipsoid(Vec::Zero(dim), Mat::Identity(dim, dim)); }

double Ellipsoid::volume() const { return std::abs(shape_.determinant()) * unit_ball_volume(dim()); }

Vec apply_affine(const AffineMap& map, const Vec& x) {
  if (x.size() != map.dim()) throw GeometryError(ErrorKind::InvalidArgument, "apply_affine: dimension mismatch");
  return map(x);
}

VPolytope apply_affine(const AffineMap& map, const VPolytope& poly) {
  if (poly.dim() != map.dim()) throw GeometryError(ErrorKind::InvalidArgument, "apply_affine: dimension mismatch");
  std::vector<Vec> pts;
  pts.reserve(poly.size());
  for (const auto& p : poly.points()) pts.push_back(map(p));
  return VPolytope(poly.dim(), std::move(pts));
}

HPolytope apply_affine(const AffineMap& map, const HPolytope& poly) {
  if (poly.dim() != map.dim()) throw GeometryError(ErrorKind::InvalidArgument, "apply_affine: dimension mismatch");
  // {a.x <= b} maps to {(M^-T a).x <= b + (M^-T a).shift}.
  const Mat inv_t = map.linear().inverse().transpose();
  std::vector<Halfspace> rows;
  rows.reserve(poly.size());
  for (const auto& h : poly.halfspaces()) {
    Vec a = inv_t * h.normal;
    const double b = h.offset + a.dot(map.shift());
    rows.emplace_back(std::move(a), b);
  }
  return HPolytope(poly.dim(), std::move(rows));
}

VPolytope negate(const VPolytope& poly) { return scale(poly, -1.0); }

VPolytope scale(const VPolytope& poly, double factor) {
  std::vector<Vec> pts;
  pts.reserve(poly.size());
  for (const auto& p : poly.points()) pts.push_back(factor * p);
  return VPolytope(poly.dim(), std::move(pts));
}

double unit_ball_volume(int dim) {
  const double d = static_cast<double>(dim);
  return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

}  // namespace qhelly
