#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "netmon/ilp.hpp"
#include "netmon/instance.hpp"
#include "netmon/io.hpp"
#include "netmon/lp.hpp"

namespace netmon::testutil {

// Four nodes, seven components: overlapping sets where one node dominates.
inline Instance ringInstance(Vector weights, int budget) {
  return Instance({"v1", "v2", "v3", "v4"}, {"e1", "e2", "e3", "e4", "e5", "e6", "e7"},
                  {{0, 1}, {1, 2}, {2, 3, 4, 5, 6}, {4}}, std::move(weights), budget);
}

inline Instance ringInstance(double w = 1.0, int budget = 1) {
  return ringInstance(Vector::Constant(7, w), budget);
}

// Two nodes, three components, shared middle component.
inline Instance chainInstance(Vector weights, int budget = 1) {
  return Instance({"v1", "v2"}, {"e1", "e2", "e3"}, {{0, 1}, {1, 2}}, std::move(weights), budget);
}

inline Instance chainInstance(double w = 1.0, int budget = 1) {
  return chainInstance(Vector::Constant(3, w), budget);
}

// Disjoint singleton monitoring sets with the given weights.
inline Instance singletonInstance(Vector weights, int budget) {
  const int n = static_cast<int>(weights.size());
  std::vector<std::string> nodes, components;
  std::vector<std::vector<int>> monitoring;
  for (int i = 0; i < n; ++i) {
    nodes.push_back("v" + std::to_string(i + 1));
    components.push_back("e" + std::to_string(i + 1));
    monitoring.push_back({i});
  }
  return Instance(nodes, components, std::move(monitoring), std::move(weights), budget);
}

struct KktReport {
  bool ok = true;
  std::string detail;

  void note(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

// Optimality conditions for a claimed-optimal solution: primal feasibility,
// dual sign conventions, complementary slackness, reduced-cost consistency,
// and strong duality.
inline KktReport checkKkt(const LinearProgram& lp, const LpSolution& sol, double tol = 1e-7) {
  KktReport report;
  report.note(sol.status == SolveStatus::Optimal, "status is not optimal");
  if (!report.ok) return report;

  const Index n = lp.numVariables();
  const Index m = lp.numRows();
  const bool minimize = lp.sense == Sense::Minimize;

  for (Index j = 0; j < n; ++j) {
    report.note(sol.primal(j) >= lp.lower(j) - tol, "primal below lower bound");
    report.note(sol.primal(j) <= lp.upper(j) + tol, "primal above upper bound");
  }

  const Vector activity = lp.rows * sol.primal;
  for (Index i = 0; i < m; ++i) {
    const double scale = 1.0 + std::abs(lp.rhs(i));
    const double slack = lp.rhs(i) - activity(i);
    switch (lp.relations[static_cast<size_t>(i)]) {
      case Relation::LessEqual:
        report.note(slack >= -tol * scale, "<= row violated");
        report.note(minimize ? sol.duals(i) <= tol : sol.duals(i) >= -tol, "<= row dual sign");
        break;
      case Relation::GreaterEqual:
        report.note(slack <= tol * scale, ">= row violated");
        report.note(minimize ? sol.duals(i) >= -tol : sol.duals(i) <= tol, ">= row dual sign");
        break;
      case Relation::Equal:
        report.note(std::abs(slack) <= tol * scale, "= row violated");
        break;
    }
    report.note(std::abs(sol.duals(i) * slack) <= tol * scale * (1.0 + std::abs(sol.duals(i))),
                "complementary slackness violated");
  }

  const Vector reduced = lp.objective - lp.rows.transpose() * sol.duals;
  for (Index j = 0; j < n; ++j) {
    report.note(std::abs(reduced(j) - sol.reduced_costs(j)) <= tol * (1.0 + std::abs(reduced(j))),
                "reduced cost mismatch");
    const double d = sol.reduced_costs(j);
    if (minimize) {
      if (d > tol) report.note(sol.primal(j) <= lp.lower(j) + 1e-6, "positive reduced cost off lower bound");
      if (d < -tol) report.note(sol.primal(j) >= lp.upper(j) - 1e-6, "negative reduced cost off upper bound");
    } else {
      if (d > tol) report.note(sol.primal(j) >= lp.upper(j) - 1e-6, "positive reduced cost off upper bound");
      if (d < -tol) report.note(sol.primal(j) <= lp.lower(j) + 1e-6, "negative reduced cost off lower bound");
    }
  }

  const double primal_obj = lp.objective.dot(sol.primal);
  report.note(std::abs(primal_obj - sol.objective) <= tol * (1.0 + std::abs(primal_obj)),
              "objective mismatch");
  const double dual_obj = dualObjective(lp, sol);
  report.note(std::abs(primal_obj - dual_obj) <= tol * (1.0 + std::abs(primal_obj)),
              "strong duality violated");
  return report;
}

// Random feasible bounded LP: a random box point is feasible by construction
// and the box keeps the program bounded.
inline LinearProgram randomBoxedLp(Rng& rng) {
  const Index n = 1 + rng.uniformInt(0, 6);
  const Index m = rng.uniformInt(0, 6);
  LinearProgram lp = LinearProgram::make(rng.uniformInt(0, 1) ? Sense::Maximize : Sense::Minimize,
                                         n, m);
  Vector x0(n);
  for (Index j = 0; j < n; ++j) {
    lp.lower(j) = rng.uniform(-2.0, 0.5);
    lp.upper(j) = lp.lower(j) + rng.uniform(0.0, 3.0);
    x0(j) = rng.uniform(lp.lower(j), lp.upper(j));
    lp.objective(j) = rng.uniform(-1.0, 1.0);
  }
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      lp.rows(i, j) = rng.uniformInt(0, 2) ? rng.uniform(-2.0, 2.0) : 0.0;
    }
    const double activity = lp.rows.row(i).dot(x0);
    switch (rng.uniformInt(0, 2)) {
      case 0:
        lp.relations[static_cast<size_t>(i)] = Relation::LessEqual;
        lp.rhs(i) = activity + rng.uniform(0.0, 1.5);
        break;
      case 1:
        lp.relations[static_cast<size_t>(i)] = Relation::GreaterEqual;
        lp.rhs(i) = activity - rng.uniform(0.0, 1.5);
        break;
      default:
        lp.relations[static_cast<size_t>(i)] = Relation::Equal;
        lp.rhs(i) = activity;
        break;
    }
  }
  return lp;
}

// Random binary program, feasible by construction around a random assignment.
inline BinaryProgram randomBinaryProgram(Rng& rng, int max_vars = 14) {
  const Index n = 2 + rng.uniformInt(0, max_vars - 2);
  const Index m = 1 + rng.uniformInt(0, 5);
  BinaryProgram bp = BinaryProgram::make(rng.uniformInt(0, 1) ? Sense::Maximize : Sense::Minimize,
                                         n, m);
  std::vector<std::uint8_t> x0(static_cast<size_t>(n));
  for (Index j = 0; j < n; ++j) {
    bp.objective(j) = rng.uniform(-1.0, 1.0);
    x0[static_cast<size_t>(j)] = static_cast<std::uint8_t>(rng.uniformInt(0, 1));
  }
  for (Index i = 0; i < m; ++i) {
    double activity = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (rng.uniformInt(0, 2)) {
        bp.rows(i, j) = static_cast<double>(rng.uniformInt(-2, 2));
        if (x0[static_cast<size_t>(j)]) activity += bp.rows(i, j);
      }
    }
    if (rng.uniformInt(0, 1)) {
      bp.relations[static_cast<size_t>(i)] = Relation::LessEqual;
      bp.rhs(i) = activity + rng.uniformInt(0, 2);
    } else {
      bp.relations[static_cast<size_t>(i)] = Relation::GreaterEqual;
      bp.rhs(i) = activity - rng.uniformInt(0, 2);
    }
  }
  return bp;
}

// Exhaustive optimum by Gray-code sweep: one variable flips per step, so row
// activities update in O(rows). Independent of the branch-and-bound path.
inline double enumerateBinaryOptimum(const BinaryProgram& bp) {
  const Index n = bp.numVariables();
  const Index m = bp.numRows();
  if (n > 24) throw std::invalid_argument("enumeration limited to 24 variables");
  const bool minimize = bp.sense == Sense::Minimize;

  std::vector<std::uint8_t> x(static_cast<size_t>(n), 0);
  Vector activity = Vector::Zero(m);
  double objective = 0.0;

  const auto feasible = [&]() {
    for (Index i = 0; i < m; ++i) {
      const double scale = 1.0 + std::abs(bp.rhs(i));
      switch (bp.relations[static_cast<size_t>(i)]) {
        case Relation::LessEqual:
          if (activity(i) > bp.rhs(i) + 1e-9 * scale) return false;
          break;
        case Relation::GreaterEqual:
          if (activity(i) < bp.rhs(i) - 1e-9 * scale) return false;
          break;
        case Relation::Equal:
          if (std::abs(activity(i) - bp.rhs(i)) > 1e-9 * scale) return false;
          break;
      }
    }
    return true;
  };

  double best = minimize ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
  if (feasible()) best = objective;
  const std::uint64_t count = std::uint64_t(1) << n;
  for (std::uint64_t step = 1; step < count; ++step) {
    const int bit = __builtin_ctzll(step);
    const double sign = x[static_cast<size_t>(bit)] ? -1.0 : 1.0;
    x[static_cast<size_t>(bit)] ^= 1;
    activity += sign * bp.rows.col(bit);
    objective += sign * bp.objective(bit);
    if (feasible()) {
      best = minimize ? std::min(best, objective) : std::max(best, objective);
    }
  }
  return best;
}

}  // namespace netmon::testutil
