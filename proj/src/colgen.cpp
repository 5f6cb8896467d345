#include "netmon/colgen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "budgeted_coverage.hpp"
#include "netmon/lp.hpp"

namespace netmon {

Vector payoffColumn(const Instance& inst, const PureDefense& defense) {
  validateDefense(inst, defense);
  const std::vector<char> mask = coveredMask(inst, defense);
  Vector column = Vector::Zero(inst.componentCount());
  for (Index e = 0; e < column.size(); ++e) {
    if (!mask[static_cast<size_t>(e)]) column(e) = -inst.weight(e);
  }
  return column;
}

void MasterState::append(const Instance& inst, const PureDefense& defense) {
  if (!keys_.insert(defense.nodes).second) {
    throw ValidationError("duplicate master column");
  }
  const Vector column = payoffColumn(inst, defense);
  payoff_.conservativeResize(inst.componentCount(), payoff_.cols() + 1);
  payoff_.col(payoff_.cols() - 1) = column;
  columns_.push_back(defense);
}

bool MasterState::contains(const PureDefense& defense) const {
  return keys_.count(defense.nodes) > 0;
}

MasterSolution solveMaster(const Instance& inst, const MasterState& state) {
  const Index k = static_cast<Index>(state.columns().size());
  if (k == 0) throw ValidationError("master problem needs at least one column");
  const Index m = inst.componentCount();

  // Variables: one weight per column, then the loss bound z.
  LinearProgram lp = LinearProgram::make(Sense::Minimize, k + 1, m + 1);
  lp.objective(k) = 1;
  lp.rows.block(0, 0, m, k) = state.payoff();
  lp.rows.col(k).head(m).setOnes();
  for (Index i = 0; i < m; ++i) {
    lp.relations[static_cast<size_t>(i)] = Relation::GreaterEqual;
    lp.rhs(i) = 0;
  }
  lp.rows.row(m).head(k).setOnes();
  lp.relations[static_cast<size_t>(m)] = Relation::Equal;
  lp.rhs(m) = 1;

  const LpSolution sol = solveLp(lp);
  if (sol.status != SolveStatus::Optimal) {
    throw NumericalError("restricted master did not solve to optimality");
  }

  MasterSolution master;
  master.value = sol.objective;
  master.sigma = sol.primal.head(k);
  master.rho = sol.duals.head(m).cwiseMax(0.0);  // clip dual roundoff
  master.pi = sol.duals(m);
  master.iterations = sol.iterations;
  return master;
}

PricedColumn priceColumn(const Instance& inst, const Vector& rho, double pi,
                         const IlpOptions& opts) {
  if (rho.size() != inst.componentCount()) {
    throw ValidationError("dual vector must cover every component");
  }
  const Vector gains = rho.cwiseMax(0.0).cwiseProduct(inst.weights());
  const detail::CoverageOutcome outcome = detail::minimizeUncoveredMass(inst, gains, opts);
  if (!outcome.optimal) {
    throw ResourceError("pricing search hit the node limit (reduced-cost bound " +
                            std::to_string(outcome.bound - pi) + ")",
                        outcome.bound - pi);
  }
  return PricedColumn{makeDefense(inst, outcome.nodes), outcome.uncovered_mass - pi};
}

ColGenResult runColumnGeneration(const Instance& inst, const MixedDefense& init,
                                 const ColGenOptions& opts) {
  validateMixedDefense(inst, init);
  if (init.support.empty()) throw ValidationError("column generation needs a starting support");

  MasterState state;
  for (const auto& [defense, prob] : init.support) {
    if (!state.contains(defense)) state.append(inst, defense);
  }

  const int max_iterations = opts.max_iterations > 0 ? opts.max_iterations : 10 * inst.nodeCount();
  const auto start = std::chrono::steady_clock::now();

  ColGenResult result;
  for (int it = 0;; ++it) {
    const MasterSolution master = solveMaster(inst, state);
    const PricedColumn priced = priceColumn(inst, master.rho, master.pi, opts.ilp);

    ColGenIteration row;
    row.iteration = it;
    row.master_value = master.value;
    row.reduced_cost = priced.reduced_cost;
    row.entering = priced.defense;
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (opts.reference_value.has_value() && *opts.reference_value > 0) {
      row.ratio = master.value / *opts.reference_value;
    }
    if (opts.keep_duals) {
      row.rho = master.rho;
      row.pi = master.pi;
    }
    result.trace.iterations.push_back(std::move(row));

    const bool done = priced.reduced_cost >= -opts.tol;
    if (done || it + 1 >= max_iterations) {
      result.converged = done;
      result.value = master.value;
      MixedDefense defense;
      double total = 0.0;
      for (Index c = 0; c < master.sigma.size(); ++c) {
        if (master.sigma(c) > 1e-12) total += master.sigma(c);
      }
      for (Index c = 0; c < master.sigma.size(); ++c) {
        if (master.sigma(c) > 1e-12) {
          defense.support.push_back(
              {state.columns()[static_cast<size_t>(c)], master.sigma(c) / total});
        }
      }
      result.defense = std::move(defense);
      return result;
    }

    if (state.contains(priced.defense)) {
      std::ostringstream msg;
      msg << "column generation stalled: pricing returned an existing column with reduced cost "
          << priced.reduced_cost << " (pi=" << master.pi << ", rho=[";
      for (Index e = 0; e < master.rho.size(); ++e) {
        if (e > 0) msg << " ";
        msg << master.rho(e);
      }
      msg << "])";
      throw NumericalError(msg.str());
    }
    state.append(inst, priced.defense);
  }
}

}  // namespace netmon
