#include "qhelly/lp.hpp"

#include <algorithm>
#include <cmath>

namespace qhelly::lp {

const char* to_string(Status status) {
  switch (status) {
    case Status::Optimal: return "Optimal";
    case Status::Infeasible: return "Infeasible";
    case Status::Unbounded: return "Unbounded";
    case Status::IterationLimit: return "IterationLimit";
  }
  return "Unknown";
}

Problem::Problem(int num_vars)
    : objective(Vec::Zero(num_vars)),
      ineq_lhs(0, num_vars),
      ineq_rhs(0),
      eq_lhs(0, num_vars),
      eq_rhs(0) {}

void Problem::add_inequality(const Vec& row, double rhs) {
  const auto m = ineq_lhs.rows();
  ineq_lhs.conservativeResize(m + 1, num_vars());
  ineq_lhs.row(m) = row.transpose();
  ineq_rhs.conservativeResize(m + 1);
  ineq_rhs(m) = rhs;
}

void Problem::add_equality(const Vec& row, double rhs) {
  const auto m = eq_lhs.rows();
  eq_lhs.conservativeResize(m + 1, num_vars());
  eq_lhs.row(m) = row.transpose();
  eq_rhs.conservativeResize(m + 1);
  eq_rhs(m) = rhs;
}

void Problem::set_nonnegative() { lower.assign(static_cast<std::size_t>(num_vars()), 0.0); }

namespace {

// Tableau column kinds. Structural columns map back to an original
// variable with a sign (free variables are split into two columns).
struct ColumnInfo {
  int var = -1;
  double sign = 1.0;
  bool artificial = false;
};

class Tableau {
 public:
  Tableau(Mat body, std::vector<int> basis, std::vector<ColumnInfo> columns)
      : t_(std::move(body)), basis_(std::move(basis)), columns_(std::move(columns)) {}

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  double& rhs(int i) { return t_(i, cols()); }
  double rhs(int i) const { return t_(i, cols()); }
  double cost(int j) const { return t_(rows(), j); }
  double objective() const { return -t_(rows(), cols()); }
  const std::vector<int>& basis() const { return basis_; }
  const std::vector<ColumnInfo>& columns() const { return columns_; }
  double entry(int i, int j) const { return t_(i, j); }

  void set_costs(const Vec& c) {
    t_.row(rows()).setZero();
    t_.row(rows()).head(cols()) = c.transpose();
    for (int i = 0; i < rows(); ++i) {
      const double cb = c(basis_[static_cast<std::size_t>(i)]);
      if (cb != 0.0) t_.row(rows()) -= cb * t_.row(i);
    }
  }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i <= rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    t_(r, c) = 1.0;
    basis_[static_cast<std::size_t>(r)] = c;
  }

  // Returns the entering column when unbounded through `unbounded_col`.
  Status minimize(const std::vector<bool>& allowed, const Options& opt, int cap, int& iterations,
                  int& unbounded_col) {
    double scale = 1.0;
    for (int j = 0; j < cols(); ++j)
      if (allowed[static_cast<std::size_t>(j)]) scale = std::max(scale, std::abs(cost(j)));
    const double dtol = opt.pivot_tol * scale;
    for (int it = 0; it < cap; ++it) {
      // Bland: lowest-index improving column.
      int enter = -1;
      for (int j = 0; j < cols(); ++j) {
        if (allowed[static_cast<std::size_t>(j)] && cost(j) < -dtol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Status::Optimal;
      int leave = -1;
      double best = 0.0;
      for (int i = 0; i < rows(); ++i) {
        const double a = t_(i, enter);
        if (a <= opt.pivot_tol) continue;
        const double ratio = std::max(0.0, rhs(i)) / a;
        if (leave < 0 || ratio < best - 1e-12 * std::max(1.0, best)) {
          leave = i;
          best = ratio;
        } else if (ratio <= best + 1e-12 * std::max(1.0, best) &&
                   basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]) {
          leave = i;
          best = std::min(best, ratio);
        }
      }
      if (leave < 0) {
        unbounded_col = enter;
        return Status::Unbounded;
      }
      pivot(leave, enter);
      ++iterations;
    }
    return Status::IterationLimit;
  }

  // Drops the given rows and all artificial columns.
  Tableau reduced(const std::vector<bool>& drop_row) const {
    std::vector<int> keep_cols;
    std::vector<int> col_map(static_cast<std::size_t>(cols()), -1);
    std::vector<ColumnInfo> new_columns;
    for (int j = 0; j < cols(); ++j) {
      if (columns_[static_cast<std::size_t>(j)].artificial) continue;
      col_map[static_cast<std::size_t>(j)] = static_cast<int>(keep_cols.size());
      keep_cols.push_back(j);
      new_columns.push_back(columns_[static_cast<std::size_t>(j)]);
    }
    std::vector<int> keep_rows;
    for (int i = 0; i < rows(); ++i)
      if (!drop_row[static_cast<std::size_t>(i)]) keep_rows.push_back(i);
    Mat body = Mat::Zero(static_cast<Eigen::Index>(keep_rows.size()) + 1,
                         static_cast<Eigen::Index>(keep_cols.size()) + 1);
    std::vector<int> new_basis;
    for (std::size_t r = 0; r < keep_rows.size(); ++r) {
      const int i = keep_rows[r];
      for (std::size_t c = 0; c < keep_cols.size(); ++c)
        body(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = t_(i, keep_cols[c]);
      body(static_cast<Eigen::Index>(r), body.cols() - 1) = rhs(i);
      new_basis.push_back(col_map[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])]);
    }
    return Tableau(std::move(body), std::move(new_basis), std::move(new_columns));
  }

 private:
  Mat t_;
  std::vector<int> basis_;
  std::vector<ColumnInfo> columns_;
};

void check_problem(const Problem& p) {
  const int n = p.num_vars();
  if (p.ineq_lhs.cols() != n || p.eq_lhs.cols() != n || p.ineq_lhs.rows() != p.ineq_rhs.size() ||
      p.eq_lhs.rows() != p.eq_rhs.size()) {
    throw GeometryError(ErrorKind::InvalidArgument, "lp: inconsistent dimensions");
  }
  if (!p.lower.empty() && static_cast<int>(p.lower.size()) != n) {
    throw GeometryError(ErrorKind::InvalidArgument, "lp: lower bound vector has wrong length");
  }
  if (!p.objective.allFinite() || !p.ineq_lhs.allFinite() || !p.ineq_rhs.allFinite() || !p.eq_lhs.allFinite() ||
      !p.eq_rhs.allFinite()) {
    throw GeometryError(ErrorKind::InvalidArgument, "lp: non-finite data");
  }
}

}  // namespace

Solution solve(const Problem& p, const Options& opt) {
  check_problem(p);
  const int n = p.num_vars();
  const int m_ineq = static_cast<int>(p.ineq_lhs.rows());
  const int m_eq = static_cast<int>(p.eq_lhs.rows());
  const int m = m_ineq + m_eq;

  // Substitute x = lower + x' for bounded variables and x = x+ - x- for free ones.
  std::vector<ColumnInfo> columns;
  Vec shift = Vec::Zero(n);
  for (int j = 0; j < n; ++j) {
    const bool bounded = !p.lower.empty() && p.lower[static_cast<std::size_t>(j)].has_value();
    if (bounded) {
      shift(j) = *p.lower[static_cast<std::size_t>(j)];
      columns.push_back({j, 1.0, false});
    } else {
      columns.push_back({j, 1.0, false});
      columns.push_back({j, -1.0, false});
    }
  }
  const int n_struct = static_cast<int>(columns.size());
  for (int i = 0; i < m_ineq; ++i) columns.push_back({-1, 1.0, false});

  Mat rows_lhs = Mat::Zero(m, n_struct + m_ineq);
  Vec rows_rhs(m);
  for (int i = 0; i < m; ++i) {
    const bool ineq = i < m_ineq;
    const Vec a = ineq ? Vec(p.ineq_lhs.row(i).transpose()) : Vec(p.eq_lhs.row(i - m_ineq).transpose());
    const double b = ineq ? p.ineq_rhs(i) : p.eq_rhs(i - m_ineq);
    for (int c = 0; c < n_struct; ++c) {
      const auto& info = columns[static_cast<std::size_t>(c)];
      rows_lhs(i, c) = info.sign * a(info.var);
    }
    if (ineq) rows_lhs(i, n_struct + i) = 1.0;
    rows_rhs(i) = b - a.dot(shift);
  }

  // Nonnegative right-hand sides; rows without a usable slack get an artificial.
  std::vector<int> basis(static_cast<std::size_t>(m), -1);
  std::vector<int> artificial_rows;
  for (int i = 0; i < m; ++i) {
    if (rows_rhs(i) < 0.0) {
      rows_lhs.row(i) *= -1.0;
      rows_rhs(i) *= -1.0;
    }
    if (i < m_ineq && rows_lhs(i, n_struct + i) > 0.0) {
      basis[static_cast<std::size_t>(i)] = n_struct + i;
    } else {
      artificial_rows.push_back(i);
    }
  }
  const int n_art = static_cast<int>(artificial_rows.size());
  const int total_cols = n_struct + m_ineq + n_art;
  for (int k = 0; k < n_art; ++k) columns.push_back({-1, 1.0, true});

  Mat body = Mat::Zero(m + 1, total_cols + 1);
  body.topLeftCorner(m, n_struct + m_ineq) = rows_lhs;
  body.block(0, total_cols, m, 1) = rows_rhs;
  for (int k = 0; k < n_art; ++k) {
    const int i = artificial_rows[static_cast<std::size_t>(k)];
    body(i, n_struct + m_ineq + k) = 1.0;
    basis[static_cast<std::size_t>(i)] = n_struct + m_ineq + k;
  }
  Tableau tab(std::move(body), basis, columns);

  Solution sol;
  const int cap = opt.cap_factor * (m + total_cols);
  const double rhs_scale = std::max(1.0, rows_rhs.size() ? rows_rhs.cwiseAbs().maxCoeff() : 0.0);
  int unbounded_col = -1;

  // Phase one.
  std::vector<bool> drop(static_cast<std::size_t>(m), false);
  if (n_art > 0) {
    Vec c1 = Vec::Zero(total_cols);
    c1.tail(n_art).setOnes();
    tab.set_costs(c1);
    std::vector<bool> allowed(static_cast<std::size_t>(total_cols), true);
    const Status s1 = tab.minimize(allowed, opt, cap, sol.iterations, unbounded_col);
    if (s1 == Status::IterationLimit) {
      sol.status = s1;
      return sol;
    }
    if (tab.objective() > opt.feasibility_tol * rhs_scale) {
      sol.status = Status::Infeasible;
      return sol;
    }
    // Drive remaining artificials out of the basis; rows that cannot be
    // pivoted on are linearly dependent and are removed.
    for (int i = 0; i < m; ++i) {
      const int b = tab.basis()[static_cast<std::size_t>(i)];
      if (!tab.columns()[static_cast<std::size_t>(b)].artificial) continue;
      int best = -1;
      double best_abs = opt.pivot_tol * 100.0;
      for (int j = 0; j < n_struct + m_ineq; ++j) {
        const double a = std::abs(tab.entry(i, j));
        if (a > best_abs) {
          best_abs = a;
          best = j;
        }
      }
      if (best >= 0) {
        tab.pivot(i, best);
      } else {
        drop[static_cast<std::size_t>(i)] = true;
      }
    }
  }
  Tableau tab2 = tab.reduced(drop);

  // Phase two (internally a minimization).
  const double sense = p.sense == Sense::Maximize ? -1.0 : 1.0;
  Vec c2 = Vec::Zero(tab2.cols());
  for (int j = 0; j < tab2.cols(); ++j) {
    const auto& info = tab2.columns()[static_cast<std::size_t>(j)];
    if (info.var >= 0) c2(j) = sense * info.sign * p.objective(info.var);
  }
  tab2.set_costs(c2);
  std::vector<bool> allowed(static_cast<std::size_t>(tab2.cols()), true);
  const Status s2 = tab2.minimize(allowed, opt, cap, sol.iterations, unbounded_col);

  Vec xp = Vec::Zero(tab2.cols());
  for (int i = 0; i < tab2.rows(); ++i) xp(tab2.basis()[static_cast<std::size_t>(i)]) = std::max(0.0, tab2.rhs(i));
  sol.x = shift;
  for (int j = 0; j < tab2.cols(); ++j) {
    const auto& info = tab2.columns()[static_cast<std::size_t>(j)];
    if (info.var >= 0) sol.x(info.var) += info.sign * xp(j);
  }
  sol.value = p.objective.dot(sol.x);
  for (int i = 0; i < tab2.rows(); ++i) {
    const auto& info = tab2.columns()[static_cast<std::size_t>(tab2.basis()[static_cast<std::size_t>(i)])];
    if (info.var >= 0) sol.basis.push_back(info.var);
  }
  std::sort(sol.basis.begin(), sol.basis.end());
  sol.basis.erase(std::unique(sol.basis.begin(), sol.basis.end()), sol.basis.end());

  sol.status = s2;
  if (s2 == Status::Unbounded) {
    Vec dir = Vec::Zero(tab2.cols());
    dir(unbounded_col) = 1.0;
    for (int i = 0; i < tab2.rows(); ++i) dir(tab2.basis()[static_cast<std::size_t>(i)]) = -tab2.entry(i, unbounded_col);
    sol.ray = Vec::Zero(n);
    for (int j = 0; j < tab2.cols(); ++j) {
      const auto& info = tab2.columns()[static_cast<std::size_t>(j)];
      if (info.var >= 0) sol.ray(info.var) += info.sign * dir(j);
    }
  }
  return sol;
}

Solution basic_feasible_solution(const Mat& eq_lhs, const Vec& eq_rhs, const Options& options) {
  Problem p(static_cast<int>(eq_lhs.cols()));
  p.sense = Sense::Minimize;
  p.eq_lhs = eq_lhs;
  p.eq_rhs = eq_rhs;
  p.set_nonnegative();
  Solution sol = solve(p, options);
  if (!sol.optimal()) return sol;
  const double eps = tolerance();
  for (Eigen::Index j = 0; j < sol.x.size(); ++j)
    if (sol.x(j) < eps) sol.x(j) = 0.0;
  std::vector<int> support;
  for (int j : sol.basis)
    if (sol.x(j) > 0.0) support.push_back(j);
  sol.basis = std::move(support);
  return sol;
}

}  // namespace qhelly::lp
