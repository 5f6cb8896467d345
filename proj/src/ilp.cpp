#include "netmon/ilp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace netmon {

namespace {

constexpr double kPruneTol = 1e-9;

struct Node {
  double bound;
  long id;
  std::vector<std::int8_t> fixed;  // -1 free, 0 or 1 fixed
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
    return a.id > b.id;
  }
};

}  // namespace

BinaryProgram BinaryProgram::make(Sense sense, Index num_vars, Index num_rows) {
  BinaryProgram bp;
  bp.sense = sense;
  bp.objective = Vector::Zero(num_vars);
  bp.rows = Matrix::Zero(num_rows, num_vars);
  bp.relations.assign(static_cast<size_t>(num_rows), Relation::LessEqual);
  bp.rhs = Vector::Zero(num_rows);
  return bp;
}

void BinaryProgram::addRow(const Vector& coeffs, Relation rel, double b) {
  const Index m = numRows();
  rows.conservativeResize(m + 1, numVariables());
  rows.row(m) = coeffs.transpose();
  relations.push_back(rel);
  rhs.conservativeResize(m + 1);
  rhs(m) = b;
}

void BinaryProgram::validate() const {
  if (numVariables() == 0) throw ValidationError("binary program has no variables");
  if (rows.rows() != numRows() || rows.cols() != numVariables() ||
      static_cast<Index>(relations.size()) != numRows()) {
    throw ValidationError("binary program has inconsistent dimensions");
  }
  if (!objective.allFinite() || !rhs.allFinite() || !rows.allFinite()) {
    throw ValidationError("binary program has non-finite coefficients");
  }
}

bool BinaryProgram::feasible(const std::vector<std::uint8_t>& assignment, double tol) const {
  if (static_cast<Index>(assignment.size()) != numVariables()) return false;
  Vector x(numVariables());
  for (Index j = 0; j < numVariables(); ++j) x(j) = assignment[static_cast<size_t>(j)] ? 1.0 : 0.0;
  const Vector act = rows * x;
  for (Index i = 0; i < numRows(); ++i) {
    const double scale = 1.0 + std::abs(rhs(i));
    switch (relations[static_cast<size_t>(i)]) {
      case Relation::LessEqual:
        if (act(i) > rhs(i) + tol * scale) return false;
        break;
      case Relation::GreaterEqual:
        if (act(i) < rhs(i) - tol * scale) return false;
        break;
      case Relation::Equal:
        if (std::abs(act(i) - rhs(i)) > tol * scale) return false;
        break;
    }
  }
  return true;
}

double BinaryProgram::evaluate(const std::vector<std::uint8_t>& assignment) const {
  double value = 0;
  for (Index j = 0; j < numVariables(); ++j) {
    if (assignment[static_cast<size_t>(j)]) value += objective(j);
  }
  return value;
}

BinarySolution solveBinary(const BinaryProgram& bp, const IlpOptions& opts) {
  bp.validate();
  const Index n = bp.numVariables();
  const double sign = bp.sense == Sense::Minimize ? 1.0 : -1.0;
  constexpr double inf = std::numeric_limits<double>::infinity();

  // Internal minimization copy; flipped back on exit.
  LinearProgram relax = LinearProgram::make(Sense::Minimize, n, bp.numRows());
  relax.objective = sign * bp.objective;
  relax.rows = bp.rows;
  relax.relations = bp.relations;
  relax.rhs = bp.rhs;
  relax.upper = Vector::Ones(n);

  double incumbent_value = inf;
  std::vector<std::uint8_t> incumbent;
  if (!opts.warm_assignment.empty() && bp.feasible(opts.warm_assignment)) {
    incumbent = opts.warm_assignment;
    incumbent_value = sign * bp.evaluate(incumbent);
  }

  const auto tryIncumbent = [&](const std::vector<std::uint8_t>& candidate) {
    if (!bp.feasible(candidate)) return;
    const double value = sign * bp.evaluate(candidate);
    if (value < incumbent_value - kPruneTol) {
      incumbent_value = value;
      incumbent = candidate;
    }
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  open.push({-inf, next_id++, std::vector<std::int8_t>(static_cast<size_t>(n), -1)});

  long explored = 0;
  bool hit_limit = false;
  double open_floor = inf;  // best bound among pruned-by-limit nodes

  while (!open.empty()) {
    const Node node = open.top();
    if (node.bound >= incumbent_value - kPruneTol) break;  // best-first: all remaining prune
    open.pop();

    if (explored >= opts.node_limit) {
      hit_limit = true;
      open_floor = std::min(open_floor, node.bound);
      break;
    }
    ++explored;

    for (Index j = 0; j < n; ++j) {
      const std::int8_t f = node.fixed[static_cast<size_t>(j)];
      relax.lower(j) = f == 1 ? 1.0 : 0.0;
      relax.upper(j) = f == 0 ? 0.0 : 1.0;
    }
    const LpSolution lp = solveLp(relax, opts.lp);
    if (lp.status == SolveStatus::Infeasible) continue;
    if (lp.status != SolveStatus::Optimal) {
      throw NumericalError("binary relaxation did not solve to optimality");
    }
    if (lp.objective >= incumbent_value - kPruneTol) continue;

    Index branch = -1;
    double best_frac = inf;
    for (Index j = 0; j < n; ++j) {
      if (node.fixed[static_cast<size_t>(j)] != -1) continue;
      const double xj = lp.primal(j);
      const double frac = std::abs(xj - 0.5);
      if (frac < 0.5 - opts.int_tol && frac < best_frac) {
        best_frac = frac;
        branch = j;
      }
    }

    std::vector<std::uint8_t> rounded(static_cast<size_t>(n), 0);
    for (Index j = 0; j < n; ++j) {
      rounded[static_cast<size_t>(j)] = lp.primal(j) > 0.5 ? 1 : 0;
    }
    const bool integral = branch < 0;
    tryIncumbent(rounded);
    if (integral) {
      if (bp.feasible(rounded)) continue;
      // Rounding broke a near-binding row; fix the first free variable so
      // the search still makes progress.
      for (Index j = 0; j < n; ++j) {
        if (node.fixed[static_cast<size_t>(j)] == -1) {
          branch = j;
          break;
        }
      }
      if (branch < 0) continue;  // fully fixed and infeasible
    }

    for (int value = 0; value <= 1; ++value) {
      Node child{lp.objective, next_id++, node.fixed};
      child.fixed[static_cast<size_t>(branch)] = static_cast<std::int8_t>(value);
      open.push(child);
    }
  }

  if (hit_limit) {
    while (!open.empty()) {
      open_floor = std::min(open_floor, open.top().bound);
      open.pop();
    }
  }

  BinarySolution out;
  out.nodes = explored;
  if (incumbent.empty()) {
    if (hit_limit) {
      out.status = IlpStatus::NodeLimit;
      out.objective = std::numeric_limits<double>::quiet_NaN();
      out.bound = open_floor == inf ? std::numeric_limits<double>::quiet_NaN() : sign * open_floor;
    } else {
      out.status = IlpStatus::Infeasible;
      out.objective = std::numeric_limits<double>::quiet_NaN();
      out.bound = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
  }

  out.assignment = std::move(incumbent);
  out.objective = bp.evaluate(out.assignment);
  if (hit_limit) {
    out.status = IlpStatus::NodeLimit;
    const double floor = std::min(open_floor, incumbent_value);
    out.bound = sign * floor;
  } else {
    out.status = IlpStatus::Optimal;
    out.bound = out.objective;
  }
  return out;
}

}  // namespace netmon
