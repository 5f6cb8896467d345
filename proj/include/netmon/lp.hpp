#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "netmon/types.hpp"

namespace netmon {

enum class Sense { Minimize, Maximize };
enum class Relation { LessEqual, GreaterEqual, Equal };
enum class SolveStatus { Optimal, Infeasible, Unbounded };

struct SimplexOptions {
  double pivot_tol = 1e-9;  // smallest pivot magnitude accepted
  double price_tol = 1e-9;  // reduced-cost threshold for entering columns
  double feas_tol = 1e-9;   // phase-1 residual threshold
  int max_iterations = 0;   // 0 derives a cap from the problem size
};

// Dense LP in row form: objective over n variables, m constraint rows with a
// relation and right-hand side each, and per-variable bounds (defaulting to
// [0, +inf)). Rows are stored densely; instances in this suite are small
// enough that sparsity never pays for itself.
template <typename Scalar>
struct LinearProgramT {
  using Vec = VectorT<Scalar>;
  using Mat = MatrixT<Scalar>;

  Sense sense = Sense::Minimize;
  Vec objective;
  Mat rows;
  std::vector<Relation> relations;
  Vec rhs;
  Vec lower;
  Vec upper;

  static constexpr Scalar inf() { return std::numeric_limits<Scalar>::infinity(); }

  static LinearProgramT make(Sense sense, Index num_vars, Index num_rows = 0) {
    LinearProgramT lp;
    lp.sense = sense;
    lp.objective = Vec::Zero(num_vars);
    lp.rows = Mat::Zero(num_rows, num_vars);
    lp.relations.assign(static_cast<size_t>(num_rows), Relation::LessEqual);
    lp.rhs = Vec::Zero(num_rows);
    lp.lower = Vec::Zero(num_vars);
    lp.upper = Vec::Constant(num_vars, inf());
    return lp;
  }

  Index numVariables() const { return objective.size(); }
  Index numRows() const { return rhs.size(); }

  void addRow(const Vec& coeffs, Relation rel, Scalar b) {
    const Index m = numRows();
    rows.conservativeResize(m + 1, numVariables());
    rows.row(m) = coeffs.transpose();
    relations.push_back(rel);
    rhs.conservativeResize(m + 1);
    rhs(m) = b;
  }

  void validate() const {
    const Index n = numVariables();
    const Index m = numRows();
    if (rows.rows() != m || rows.cols() != n || static_cast<Index>(relations.size()) != m ||
        lower.size() != n || upper.size() != n) {
      throw ValidationError("linear program has inconsistent dimensions");
    }
    if (!objective.allFinite() || !rhs.allFinite() || !rows.allFinite()) {
      throw ValidationError("linear program has non-finite coefficients");
    }
    for (Index j = 0; j < n; ++j) {
      if (std::isnan(lower(j)) || std::isnan(upper(j)) || lower(j) > upper(j)) {
        throw ValidationError("variable bounds are inconsistent");
      }
    }
  }
};

template <typename Scalar>
struct LpSolutionT {
  using Vec = VectorT<Scalar>;

  SolveStatus status = SolveStatus::Optimal;
  Scalar objective = 0;
  Vec primal;         // per variable
  Vec duals;          // per constraint row
  Vec reduced_costs;  // per variable
  long iterations = 0;
};

using LinearProgram = LinearProgramT<double>;
using LpSolution = LpSolutionT<double>;

// Dual objective in the bound-aware sense: y'b plus the contribution of
// nonbasic variables held at a finite bound. Equals the primal objective at
// an optimal basis (strong duality).
template <typename Scalar>
Scalar dualObjective(const LinearProgramT<Scalar>& lp, const LpSolutionT<Scalar>& sol) {
  Scalar value = sol.duals.dot(lp.rhs);
  const bool minimize = lp.sense == Sense::Minimize;
  for (Index j = 0; j < lp.numVariables(); ++j) {
    const Scalar d = sol.reduced_costs(j);
    const bool at_lower = minimize ? d > 0 : d < 0;
    if (d != Scalar(0)) {
      const Scalar bound = at_lower ? lp.lower(j) : lp.upper(j);
      if (std::isfinite(bound)) value += d * bound;
    }
  }
  return value;
}

namespace detail {

// Two-phase dense tableau simplex over bounded variables. Inequalities get a
// signed slack; rows whose initial residual cannot be absorbed by the slack
// get an artificial column. Dantzig pricing switches to Bland's rule after
// 2*(rows+cols) iterations, which guarantees termination.
template <typename Scalar>
class BoundedSimplex {
 public:
  using Vec = VectorT<Scalar>;
  using Mat = MatrixT<Scalar>;

  BoundedSimplex(const LinearProgramT<Scalar>& lp, const SimplexOptions& opts)
      : lp_(lp), opts_(opts) {}

  LpSolutionT<Scalar> solve() {
    lp_.validate();
    if (lp_.numRows() == 0) return solveUnconstrained();
    build();
    LpSolutionT<Scalar> out;

    if (num_artificial_ > 0) {
      for (int refresh = 0;; ++refresh) {
        runPhase(/*phase1=*/true);
        if (!refreshFromBasis(/*phase1=*/true) || refresh >= 3) break;
      }
      Scalar infeas = 0;
      for (Index j = struct_end_ + m_; j < total_; ++j) infeas += valueOf(j);
      if (infeas > opts_.feas_tol * (Scalar(1) + lp_.rhs.template lpNorm<Eigen::Infinity>())) {
        out.status = SolveStatus::Infeasible;
        out.objective = std::numeric_limits<Scalar>::quiet_NaN();
        out.iterations = iterations_;
        return out;
      }
      retireArtificials();
    }

    resetCosts(/*phase1=*/false);
    SolveStatus st = SolveStatus::Optimal;
    for (int refresh = 0;; ++refresh) {
      st = runPhase(/*phase1=*/false);
      if (st != SolveStatus::Optimal) break;
      if (!refreshFromBasis(/*phase1=*/false) || refresh >= 3) break;
    }
    out.status = st;
    out.iterations = iterations_;
    if (st != SolveStatus::Optimal) {
      out.objective = st == SolveStatus::Unbounded
                          ? (lp_.sense == Sense::Minimize ? -LinearProgramT<Scalar>::inf()
                                                          : LinearProgramT<Scalar>::inf())
                          : std::numeric_limits<Scalar>::quiet_NaN();
      return out;
    }
    extract(out);
    return out;
  }

 private:
  enum class Loc : unsigned char { Basic, AtLower, AtUpper, FreeZero };

  static constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();

  LinearProgramT<Scalar> lp_;
  SimplexOptions opts_;

  Index m_ = 0;           // rows
  Index struct_end_ = 0;  // structural variable count
  Index total_ = 0;       // structurals + slacks + artificials
  Index num_artificial_ = 0;
  Scalar sign_ = 1;  // +1 minimize, -1 maximize

  Mat A_;
  Vec b_, cost_, lo_, hi_;
  Mat T_;    // current tableau B^-1 A
  Vec beta_; // basic values per row
  Vec d_;    // reduced costs for the active phase
  std::vector<Index> basis_;
  std::vector<Loc> loc_;
  long iterations_ = 0;

  Scalar valueOf(Index j) const {
    switch (loc_[j]) {
      case Loc::AtLower: return lo_(j);
      case Loc::AtUpper: return hi_(j);
      case Loc::FreeZero: return 0;
      case Loc::Basic: break;
    }
    for (Index i = 0; i < m_; ++i) {
      if (basis_[static_cast<size_t>(i)] == j) return beta_(i);
    }
    return 0;
  }

  void build() {
    const Index n = lp_.numVariables();
    m_ = lp_.numRows();
    struct_end_ = n;
    sign_ = lp_.sense == Sense::Minimize ? Scalar(1) : Scalar(-1);

    // Structurals + one signed slack per row; artificials appended on demand.
    const Index base = n + m_;
    A_ = Mat::Zero(m_, base);
    A_.leftCols(n) = lp_.rows;
    lo_ = Vec::Zero(base);
    hi_ = Vec::Zero(base);
    lo_.head(n) = lp_.lower;
    hi_.head(n) = lp_.upper;
    cost_ = Vec::Zero(base);
    cost_.head(n) = sign_ * lp_.objective;
    b_ = lp_.rhs;
    for (Index i = 0; i < m_; ++i) {
      const Index s = n + i;
      A_(i, s) = 1;
      switch (lp_.relations[static_cast<size_t>(i)]) {
        case Relation::LessEqual:
          lo_(s) = 0;
          hi_(s) = kInf;
          break;
        case Relation::GreaterEqual:
          lo_(s) = -kInf;
          hi_(s) = 0;
          break;
        case Relation::Equal:
          lo_(s) = 0;
          hi_(s) = 0;
          break;
      }
    }

    loc_.assign(static_cast<size_t>(base), Loc::AtLower);
    for (Index j = 0; j < base; ++j) loc_[static_cast<size_t>(j)] = startingLoc(j);

    // Residual after placing every variable at its starting value. Slacks
    // absorb what their bounds allow; artificials take the rest.
    Vec x0 = Vec::Zero(n);
    for (Index j = 0; j < n; ++j) x0(j) = nonbasicValue(j);
    Vec resid = b_ - A_.leftCols(n) * x0;

    basis_.assign(static_cast<size_t>(m_), -1);
    beta_ = Vec::Zero(m_);
    std::vector<int> art_sign;
    std::vector<Index> art_row;
    for (Index i = 0; i < m_; ++i) {
      const Index s = n + i;
      const Scalar r = resid(i);
      if (r >= lo_(s) && r <= hi_(s)) {
        basis_[static_cast<size_t>(i)] = s;
        loc_[static_cast<size_t>(s)] = Loc::Basic;
        beta_(i) = r;
      } else {
        const Scalar s0 = std::clamp(Scalar(0), lo_(s), hi_(s));
        loc_[static_cast<size_t>(s)] = s0 == lo_(s) ? Loc::AtLower : Loc::AtUpper;
        const Scalar rr = r - s0;
        art_sign.push_back(rr >= 0 ? 1 : -1);
        art_row.push_back(i);
      }
    }

    num_artificial_ = static_cast<Index>(art_row.size());
    total_ = base + num_artificial_;
    A_.conservativeResize(m_, total_);
    A_.rightCols(num_artificial_).setZero();
    lo_.conservativeResize(total_);
    hi_.conservativeResize(total_);
    cost_.conservativeResize(total_);
    loc_.resize(static_cast<size_t>(total_), Loc::Basic);
    for (Index k = 0; k < num_artificial_; ++k) {
      const Index j = base + k;
      const Index row = art_row[static_cast<size_t>(k)];
      A_(row, j) = Scalar(art_sign[static_cast<size_t>(k)]);
      lo_(j) = 0;
      hi_(j) = kInf;
      cost_(j) = 0;
      basis_[static_cast<size_t>(row)] = j;
      loc_[static_cast<size_t>(j)] = Loc::Basic;
    }

    // Initial inverse basis is identity up to artificial signs.
    T_ = A_;
    for (Index k = 0; k < num_artificial_; ++k) {
      if (art_sign[static_cast<size_t>(k)] < 0) T_.row(art_row[static_cast<size_t>(k)]) *= -1;
    }
    recomputeBeta();
    resetCosts(/*phase1=*/num_artificial_ > 0);
  }

  Loc startingLoc(Index j) const {
    if (std::isfinite(lo_(j))) return Loc::AtLower;
    if (std::isfinite(hi_(j))) return Loc::AtUpper;
    return Loc::FreeZero;
  }

  Scalar nonbasicValue(Index j) const {
    switch (loc_[static_cast<size_t>(j)]) {
      case Loc::AtLower: return lo_(j);
      case Loc::AtUpper: return hi_(j);
      default: return 0;
    }
  }

  void recomputeBeta() {
    Vec r = b_;
    for (Index j = 0; j < total_; ++j) {
      if (loc_[static_cast<size_t>(j)] == Loc::Basic) continue;
      const Scalar v = nonbasicValue(j);
      if (v != Scalar(0)) r -= A_.col(j) * v;
    }
    Mat B(m_, m_);
    for (Index i = 0; i < m_; ++i) B.col(i) = A_.col(basis_[static_cast<size_t>(i)]);
    beta_ = B.partialPivLu().solve(r);
  }

  void resetCosts(bool phase1) {
    Vec c = phaseCost(phase1);
    d_ = c;
    for (Index i = 0; i < m_; ++i) {
      const Scalar cb = c(basis_[static_cast<size_t>(i)]);
      if (cb != Scalar(0)) d_ -= cb * T_.row(i).transpose();
    }
  }

  Vec phaseCost(bool phase1) const {
    if (!phase1) return cost_;
    Vec c = Vec::Zero(total_);
    c.tail(num_artificial_).setOnes();
    return c;
  }

  // After phase 1, artificials are frozen at zero so they can never re-enter;
  // basic ones are pivoted out where a usable pivot exists (rows without one
  // are redundant and keep a zero artificial in the basis, harmlessly).
  void retireArtificials() {
    const Index base = total_ - num_artificial_;
    for (Index j = base; j < total_; ++j) {
      lo_(j) = 0;
      hi_(j) = 0;
    }
    for (Index i = 0; i < m_; ++i) {
      const Index bj = basis_[static_cast<size_t>(i)];
      if (bj < base) continue;
      Index enter = -1;
      for (Index j = 0; j < base; ++j) {
        if (loc_[static_cast<size_t>(j)] == Loc::Basic) continue;
        if (std::abs(T_(i, j)) > opts_.pivot_tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) continue;
      const Scalar enter_val = nonbasicValue(enter);
      loc_[static_cast<size_t>(bj)] = Loc::AtLower;  // artificial rests at 0
      pivot(i, enter);
      basis_[static_cast<size_t>(i)] = enter;
      loc_[static_cast<size_t>(enter)] = Loc::Basic;
      beta_(i) = enter_val;
    }
  }

  void pivot(Index row, Index col) {
    const Scalar piv = T_(row, col);
    T_.row(row) /= piv;
    Vec factors = T_.col(col);
    factors(row) = 0;
    const Eigen::Matrix<Scalar, 1, Eigen::Dynamic> prow = T_.row(row);
    T_.noalias() -= factors * prow;
    const Scalar dc = d_(col);
    if (dc != Scalar(0)) d_ -= dc * prow.transpose();
    T_.col(col).setZero();
    T_(row, col) = 1;
    d_(col) = 0;
  }

  SolveStatus runPhase(bool phase1) {
    const long bland_after = 2 * static_cast<long>(m_ + total_);
    const long cap = opts_.max_iterations > 0
                         ? opts_.max_iterations
                         : 10000 + 100 * static_cast<long>(m_) + static_cast<long>(total_);
    for (long it = 0;; ++it, ++iterations_) {
      if (it > cap) throw NumericalError("simplex iteration limit exceeded");
      const bool bland = it >= bland_after;

      Index enter = -1;
      int dir = 0;
      Scalar best = 0;
      for (Index j = 0; j < total_; ++j) {
        const Loc lj = loc_[static_cast<size_t>(j)];
        if (lj == Loc::Basic) continue;
        if (lo_(j) == hi_(j)) continue;  // fixed (incl. retired artificials)
        const Scalar dj = d_(j);
        int cand = 0;
        if ((lj == Loc::AtLower || lj == Loc::FreeZero) && dj < -opts_.price_tol) {
          cand = 1;
        } else if ((lj == Loc::AtUpper || lj == Loc::FreeZero) && dj > opts_.price_tol) {
          cand = -1;
        }
        if (cand == 0) continue;
        if (bland) {
          enter = j;
          dir = cand;
          break;
        }
        const Scalar improvement = std::abs(dj);
        if (improvement > best) {
          best = improvement;
          enter = j;
          dir = cand;
        }
      }
      if (enter < 0) return SolveStatus::Optimal;

      const Vec alpha = T_.col(enter) * Scalar(dir);
      Scalar t_max = kInf;
      if (std::isfinite(lo_(enter)) && std::isfinite(hi_(enter))) t_max = hi_(enter) - lo_(enter);
      Index leave_row = -1;
      bool leave_at_lower = true;
      Scalar best_pivot = 0;
      const Scalar ratio_tol = opts_.pivot_tol;
      for (Index i = 0; i < m_; ++i) {
        const Scalar a = alpha(i);
        if (std::abs(a) <= opts_.pivot_tol) continue;
        const Index bv = basis_[static_cast<size_t>(i)];
        Scalar cap_i;
        bool at_lower;
        if (a > 0) {
          if (!std::isfinite(lo_(bv))) continue;
          cap_i = (beta_(i) - lo_(bv)) / a;
          at_lower = true;
        } else {
          if (!std::isfinite(hi_(bv))) continue;
          cap_i = (beta_(i) - hi_(bv)) / a;
          at_lower = false;
        }
        if (cap_i < 0) cap_i = 0;
        bool take = false;
        if (cap_i < t_max - ratio_tol) {
          take = true;
        } else if (cap_i <= t_max + ratio_tol && leave_row >= 0) {
          if (bland) {
            take = bv < basis_[static_cast<size_t>(leave_row)];
          } else if (std::abs(a) > best_pivot * (Scalar(1) + Scalar(1e-12))) {
            take = true;
          } else if (std::abs(a) >= best_pivot * (Scalar(1) - Scalar(1e-12))) {
            take = bv < basis_[static_cast<size_t>(leave_row)];
          }
        }
        if (take) {
          t_max = std::min(t_max, std::max(cap_i, Scalar(0)));
          leave_row = i;
          leave_at_lower = at_lower;
          best_pivot = std::abs(a);
        }
      }

      if (!std::isfinite(t_max)) {
        if (phase1) throw NumericalError("phase-1 subproblem reported unbounded");
        return SolveStatus::Unbounded;
      }

      if (leave_row < 0) {
        // Bound flip: the entering variable traverses its span.
        beta_ -= alpha * t_max;
        loc_[static_cast<size_t>(enter)] = dir > 0 ? Loc::AtUpper : Loc::AtLower;
        continue;
      }

      const Scalar enter_start = nonbasicValue(enter);
      beta_ -= alpha * t_max;
      const Scalar enter_val = enter_start + Scalar(dir) * t_max;
      const Index leave_var = basis_[static_cast<size_t>(leave_row)];
      loc_[static_cast<size_t>(leave_var)] = leave_at_lower ? Loc::AtLower : Loc::AtUpper;
      pivot(leave_row, enter);
      basis_[static_cast<size_t>(leave_row)] = enter;
      loc_[static_cast<size_t>(enter)] = Loc::Basic;
      beta_(leave_row) = enter_val;
    }
  }

  // Recompute basic values, duals, and reduced costs directly from the basis
  // factorization, discarding tableau drift. Returns true when the refreshed
  // reduced costs still admit an entering column (caller should re-iterate).
  bool refreshFromBasis(bool phase1) {
    Mat B(m_, m_);
    for (Index i = 0; i < m_; ++i) B.col(i) = A_.col(basis_[static_cast<size_t>(i)]);
    Eigen::PartialPivLU<Mat> lu(B);

    Vec r = b_;
    for (Index j = 0; j < total_; ++j) {
      if (loc_[static_cast<size_t>(j)] == Loc::Basic) continue;
      const Scalar v = nonbasicValue(j);
      if (v != Scalar(0)) r -= A_.col(j) * v;
    }
    beta_ = lu.solve(r);

    const Vec c = phaseCost(phase1);
    Vec cb(m_);
    for (Index i = 0; i < m_; ++i) cb(i) = c(basis_[static_cast<size_t>(i)]);
    const Vec y = B.transpose().partialPivLu().solve(cb);
    d_ = c - A_.transpose() * y;
    for (Index i = 0; i < m_; ++i) d_(basis_[static_cast<size_t>(i)]) = 0;

    bool improvable = false;
    for (Index j = 0; j < total_ && !improvable; ++j) {
      const Loc lj = loc_[static_cast<size_t>(j)];
      if (lj == Loc::Basic || lo_(j) == hi_(j)) continue;
      if ((lj == Loc::AtLower || lj == Loc::FreeZero) && d_(j) < -10 * opts_.price_tol) improvable = true;
      if ((lj == Loc::AtUpper || lj == Loc::FreeZero) && d_(j) > 10 * opts_.price_tol) improvable = true;
    }
    if (improvable) T_ = lu.solve(A_);
    return improvable;
  }

  void extract(LpSolutionT<Scalar>& out) const {
    const Index n = struct_end_;
    Vec x = Vec::Zero(total_);
    for (Index j = 0; j < total_; ++j) {
      if (loc_[static_cast<size_t>(j)] != Loc::Basic) x(j) = nonbasicValue(j);
    }
    for (Index i = 0; i < m_; ++i) x(basis_[static_cast<size_t>(i)]) = beta_(i);

    Mat B(m_, m_);
    for (Index i = 0; i < m_; ++i) B.col(i) = A_.col(basis_[static_cast<size_t>(i)]);
    Vec cb(m_);
    for (Index i = 0; i < m_; ++i) cb(i) = cost_(basis_[static_cast<size_t>(i)]);
    const Vec y = B.transpose().partialPivLu().solve(cb);
    const Vec d = cost_ - A_.transpose() * y;

    out.primal = x.head(n);
    out.objective = sign_ * cost_.head(n).dot(x.head(n));
    out.duals = sign_ * y;
    out.reduced_costs = sign_ * d.head(n);
  }

  LpSolutionT<Scalar> solveUnconstrained() const {
    LpSolutionT<Scalar> out;
    const Index n = lp_.numVariables();
    const Scalar sign = lp_.sense == Sense::Minimize ? Scalar(1) : Scalar(-1);
    out.primal = VectorT<Scalar>::Zero(n);
    out.duals = VectorT<Scalar>::Zero(0);
    out.reduced_costs = lp_.objective;
    for (Index j = 0; j < n; ++j) {
      const Scalar c = sign * lp_.objective(j);
      if (c > 0) {
        if (!std::isfinite(lp_.lower(j))) {
          out.status = SolveStatus::Unbounded;
          return out;
        }
        out.primal(j) = lp_.lower(j);
      } else if (c < 0) {
        if (!std::isfinite(lp_.upper(j))) {
          out.status = SolveStatus::Unbounded;
          return out;
        }
        out.primal(j) = lp_.upper(j);
      } else {
        out.primal(j) = std::isfinite(lp_.lower(j)) ? lp_.lower(j)
                        : std::isfinite(lp_.upper(j)) ? lp_.upper(j)
                                                      : Scalar(0);
      }
    }
    out.objective = lp_.objective.dot(out.primal);
    return out;
  }
};

}  // namespace detail

// Solves the program with a two-phase dense tableau simplex. Infeasible and
// unbounded programs are reported through the status field, never thrown.
// Deterministic: identical inputs produce identical solutions.
template <typename Scalar>
LpSolutionT<Scalar> solveLp(const LinearProgramT<Scalar>& lp, const SimplexOptions& opts = {}) {
  detail::BoundedSimplex<Scalar> solver(lp, opts);
  return solver.solve();
}

}  // namespace netmon
