#ifndef QHELLY_LP_HPP
#define QHELLY_LP_HPP

#include "qhelly/core.hpp"

#include <optional>
#include <vector>

namespace qhelly::lp {

enum class Sense { Maximize, Minimize };
enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

const char* to_string(Status status);

/// optimize c.x  s.t.  A x <= b,  E x = f,  x_j >= lower_j where given.
/// An empty `lower` leaves every variable free.
struct Problem {
  Sense sense = Sense::Maximize;
  Vec objective;
  Mat ineq_lhs;
  Vec ineq_rhs;
  Mat eq_lhs;
  Vec eq_rhs;
  std::vector<std::optional<double>> lower;

  explicit Problem(int num_vars);
  int num_vars() const { return static_cast<int>(objective.size()); }

  void add_inequality(const Vec& row, double rhs);
  void add_equality(const Vec& row, double rhs);
  void set_nonnegative();
};

struct Solution {
  Status status = Status::Infeasible;
  Vec x;
  double value = 0.0;
  /// Original variables that are basic at termination.
  std::vector<int> basis;
  /// Improving direction in x-space when status is Unbounded.
  Vec ray;
  int iterations = 0;

  bool optimal() const { return status == Status::Optimal; }
};

struct Options {
  double pivot_tol = 1e-10;
  /// Absolute phase-one infeasibility tolerance, scaled by max(1, |rhs|_inf).
  double feasibility_tol = 1e-9;
  /// Iteration cap is cap_factor * (rows + columns) per phase.
  int cap_factor = 50;
};

/// Dense two-phase primal simplex with Bland's rule.
Solution solve(const Problem& problem, const Options& options = {});

/// Basic feasible solution of {E x = f, x >= 0}. Entries below the global
/// tolerance are snapped to zero, so the support never exceeds rank(E).
Solution basic_feasible_solution(const Mat& eq_lhs, const Vec& eq_rhs, const Options& options = {});

}  // namespace qhelly::lp

#endif  // QHELLY_LP_HPP
