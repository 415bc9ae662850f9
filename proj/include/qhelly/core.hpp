#ifndef QHELLY_CORE_HPP
#define QHELLY_CORE_HPP

/*! \file
    \brief Shared geometric value types: halfspaces, H- and V-polytopes,
    affine maps and ellipsoids, plus the elementary affine operations.
*/

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qhelly {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class ErrorKind {
  InvalidArgument,
  DegenerateInput,
  Unbounded,
  EmptyInterior,
  OriginNotInterior,
  BudgetExceeded,
  SingularMap,
  NumericalFailure,
};

const char* to_string(ErrorKind kind);

class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Global absolute tolerance for geometric predicates (default 1e-9).
double tolerance();
void set_tolerance(double eps);

/// Overrides the global tolerance for the lifetime of the object.
class ScopedTolerance {
 public:
  explicit ScopedTolerance(double eps);
  ~ScopedTolerance();
  ScopedTolerance(const ScopedTolerance&) = delete;
  ScopedTolerance& operator=(const ScopedTolerance&) = delete;

 private:
  double saved_;
};

/// The closed halfspace {x : normal . x <= offset}. Stored unnormalized.
struct Halfspace {
  Vec normal;
  double offset = 0.0;

  Halfspace() = default;
  Halfspace(Vec a, double b);

  int dim() const { return static_cast<int>(normal.size()); }
  double slack(const Vec& x) const { return offset - normal.dot(x); }
  bool contains(const Vec& x, double tol) const { return slack(x) >= -tol; }
  /// Same set with a unit normal.
  Halfspace normalized() const;
};

/// Intersection of finitely many halfspaces.
class HPolytope {
 public:
  HPolytope(int dim, std::vector<Halfspace> halfspaces);

  int dim() const { return dim_; }
  std::size_t size() const { return halfspaces_.size(); }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const Halfspace& operator[](std::size_t i) const { return halfspaces_[i]; }

  /// Rows are the normals.
  Mat normals() const;
  Vec offsets() const;

  /// Membership with tolerance measured along unnormalized rows.
  bool contains(const Vec& x, double tol) const;
  /// Subfamily in the given index order.
  HPolytope subset(const std::vector<int>& indices) const;

 private:
  int dim_;
  std::vector<Halfspace> halfspaces_;
};

/// Convex hull of a point list. Points need not all be extreme.
class VPolytope {
 public:
  VPolytope(int dim, std::vector<Vec> points);

  int dim() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<Vec>& points() const { return points_; }
  const Vec& operator[](std::size_t i) const { return points_[i]; }

  /// dim x size matrix with the points as columns.
  Mat as_matrix() const;
  VPolytope subset(const std::vector<int>& indices) const;

 private:
  int dim_;
  std::vector<Vec> points_;
};

/// x -> linear * x + shift with an invertible linear part.
class AffineMap {
 public:
  AffineMap(Mat linear, Vec shift);
  static AffineMap identity(int dim);

  int dim() const { return static_cast<int>(shift_.size()); }
  const Mat& linear() const { return linear_; }
  const Vec& shift() const { return shift_; }

  Vec operator()(const Vec& x) const { return linear_ * x + shift_; }
  AffineMap inverse() const;
  /// (*this) after `first`.
  AffineMap compose(const AffineMap& first) const;

 private:
  Mat linear_;
  Vec shift_;
};

/// {center + shape * z : |z| <= 1} with a symmetric positive-definite shape.
class Ellipsoid {
 public:
  Ellipsoid(Vec center, Mat shape);
  static Ellipsoid unit_ball(int dim);

  int dim() const { return static_cast<int>(center_.size()); }
  const Vec& center() const { return center_; }
  const Mat& shape() const { return shape_; }
  double volume() const;

 private:
  Vec center_;
  Mat shape_;
};

Vec apply_affine(const AffineMap& map, const Vec& x);
VPolytope apply_affine(const AffineMap& map, const VPolytope& poly);
/// x in P  <=>  map(x) in map(P).
HPolytope apply_affine(const AffineMap& map, const HPolytope& poly);

VPolytope negate(const VPolytope& poly);
VPolytope scale(const VPolytope& poly, double factor);

/// Volume of the Euclidean unit ball in the given dimension.
double unit_ball_volume(int dim);

}  // namespace qhelly

#endif  // QHELLY_CORE_HPP
