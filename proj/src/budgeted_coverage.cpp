#include "budgeted_coverage.hpp"

#include <algorithm>

namespace netmon::detail {

CoverageOutcome minimizeUncoveredMass(const Instance& inst, const Vector& gains,
                                      const IlpOptions& opts) {
  CoverageOutcome outcome;

  std::vector<int> active;
  for (Index e = 0; e < gains.size(); ++e) {
    if (gains(e) > 1e-15) active.push_back(static_cast<int>(e));
  }
  if (active.empty()) {
    outcome.optimal = true;
    return outcome;
  }

  std::vector<int> nodes;
  for (int v = 0; v < inst.nodeCount(); ++v) {
    const bool useful = std::any_of(active.begin(), active.end(),
                                    [&](int e) { return inst.covers(v, e); });
    if (useful) nodes.push_back(v);
  }

  const Index na = static_cast<Index>(nodes.size());
  const Index ma = static_cast<Index>(active.size());
  BinaryProgram bp = BinaryProgram::make(Sense::Minimize, na + ma, ma + 1);
  for (Index k = 0; k < ma; ++k) {
    const int e = active[static_cast<size_t>(k)];
    bp.objective(na + k) = gains(e);
    for (Index t = 0; t < na; ++t) {
      if (inst.covers(nodes[static_cast<size_t>(t)], e)) bp.rows(k, t) = 1;
    }
    bp.rows(k, na + k) = 1;
    bp.relations[static_cast<size_t>(k)] = Relation::GreaterEqual;
    bp.rhs(k) = 1;
  }
  bp.rows.row(ma).head(na).setOnes();
  bp.relations[static_cast<size_t>(ma)] = Relation::LessEqual;
  bp.rhs(ma) = inst.budget();

  IlpOptions run = opts;
  {
    std::vector<std::uint8_t> warm(static_cast<size_t>(na + ma), 0);
    std::vector<char> covered(static_cast<size_t>(ma), 0);
    for (int pick = 0; pick < inst.budget(); ++pick) {
      Index best = -1;
      double best_gain = 0.0;
      for (Index t = 0; t < na; ++t) {
        if (warm[static_cast<size_t>(t)]) continue;
        double g = 0.0;
        for (Index k = 0; k < ma; ++k) {
          if (!covered[static_cast<size_t>(k)] &&
              inst.covers(nodes[static_cast<size_t>(t)], active[static_cast<size_t>(k)])) {
            g += gains(active[static_cast<size_t>(k)]);
          }
        }
        if (g > best_gain) {
          best_gain = g;
          best = t;
        }
      }
      if (best < 0) break;
      warm[static_cast<size_t>(best)] = 1;
      for (Index k = 0; k < ma; ++k) {
        if (inst.covers(nodes[static_cast<size_t>(best)], active[static_cast<size_t>(k)])) {
          covered[static_cast<size_t>(k)] = 1;
        }
      }
    }
    for (Index k = 0; k < ma; ++k) {
      if (!covered[static_cast<size_t>(k)]) warm[static_cast<size_t>(na + k)] = 1;
    }
    run.warm_assignment = std::move(warm);
  }

  const BinarySolution sol = solveBinary(bp, run);
  outcome.search_nodes = sol.nodes;
  outcome.bound = sol.bound;
  if (sol.status == IlpStatus::NodeLimit) {
    outcome.optimal = false;
    outcome.uncovered_mass = sol.assignment.empty() ? std::numeric_limits<double>::infinity()
                                                    : sol.objective;
    return outcome;
  }
  if (sol.status != IlpStatus::Optimal) {
    throw NumericalError("budgeted coverage program unexpectedly infeasible");
  }

  outcome.optimal = true;
  outcome.uncovered_mass = sol.objective;
  for (Index t = 0; t < na; ++t) {
    if (sol.assignment[static_cast<size_t>(t)]) {
      outcome.nodes.push_back(nodes[static_cast<size_t>(t)]);
    }
  }
  return outcome;
}

}  // namespace netmon::detail
