#pragma once

#include <optional>
#include <set>
#include <vector>

#include "netmon/ilp.hpp"
#include "netmon/instance.hpp"

namespace netmon {

// Payoff column of a placement: minus the criticality for every component the
// placement leaves unmonitored, zero elsewhere.
Vector payoffColumn(const Instance& inst, const PureDefense& defense);

// Columns of the restricted master problem.
class MasterState {
 public:
  void append(const Instance& inst, const PureDefense& defense);
  bool contains(const PureDefense& defense) const;
  const std::vector<PureDefense>& columns() const { return columns_; }
  const Matrix& payoff() const { return payoff_; }  // components x columns

 private:
  std::vector<PureDefense> columns_;
  std::set<std::vector<int>> keys_;
  Matrix payoff_;
};

struct MasterSolution {
  double value = 0;   // optimal worst-case loss over the current columns
  Vector sigma;       // probability per column
  Vector rho;         // dual of the per-component rows, nonnegative
  double pi = 0;      // dual of the distribution row
  long iterations = 0;
};

// Restricted master: minimize the worst-case loss of a mixture of the known
// columns; exact duals feed the pricing step.
MasterSolution solveMaster(const Instance& inst, const MasterState& state);

struct PricedColumn {
  PureDefense defense;
  double reduced_cost = 0;
};

// Pricing subproblem: placement minimizing the dual-weighted uncovered mass,
// solved as a binary program over node picks and coverage indicators. A
// negative reduced cost means the column improves the master.
PricedColumn priceColumn(const Instance& inst, const Vector& rho, double pi,
                         const IlpOptions& opts = {});

struct ColGenIteration {
  int iteration = 0;
  double master_value = 0;
  double reduced_cost = 0;
  PureDefense entering;
  double seconds = 0;            // cumulative
  std::optional<double> ratio;   // master value / reference value, when given
  Vector rho;                    // kept only when requested
  double pi = 0;
};

struct ColGenTrace {
  std::vector<ColGenIteration> iterations;
};

struct ColGenOptions {
  int max_iterations = 0;  // 0: ten times the node count
  double tol = 1e-7;
  IlpOptions ilp;
  std::optional<double> reference_value;  // enables the trace ratio column
  bool keep_duals = false;
};

struct ColGenResult {
  MixedDefense defense;
  double value = 0;
  bool converged = false;
  ColGenTrace trace;
};

// Column generation on the defense program: alternate master solves and
// pricing until no column has negative reduced cost. The master value is a
// non-increasing upper bound on the game value throughout; at convergence it
// equals the value and the mixture is an equilibrium defense.
ColGenResult runColumnGeneration(const Instance& inst, const MixedDefense& init,
                                 const ColGenOptions& opts = {});

}  // namespace netmon
